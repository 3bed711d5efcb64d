//! Scalar abstraction shared by the algebra, the compilers and the verifier.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point type the crate is generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + FromStr
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Relative magnitude below which Pauli coefficients are treated as cancelled.
    fn prune_tolerance() -> Self;

    /// Absolute magnitude below which simulated amplitudes are dropped.
    fn amplitude_floor() -> Self;

    /// Largest deviation from `U^dagger U = I` still accepted as unitary.
    fn unitarity_tolerance() -> Self;

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Real")
    }
}

impl Real for f64 {
    fn prune_tolerance() -> Self {
        1e-12
    }
    fn amplitude_floor() -> Self {
        1e-15
    }
    fn unitarity_tolerance() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn prune_tolerance() -> Self {
        1e-6
    }
    fn amplitude_floor() -> Self {
        1e-7
    }
    fn unitarity_tolerance() -> Self {
        1e-4
    }
}
