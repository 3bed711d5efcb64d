//! Compilation of Jordan-Wigner encoded fermionic term exponentials into
//! Pauli rotations, Cliffords and Toffolis, with T-count estimates and a
//! simulator-based verifier.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! `*64` and `*32` aliases below fix the scalar.

pub mod circuit;
pub mod compile;
pub mod cost;
pub mod error;
pub mod fermion;
pub mod gadget;
pub mod jordan_wigner;
pub mod naive;
pub mod pauli;
pub mod scalar;
pub mod verify;

pub use circuit::{Census, Circuit, Gate, Polarity};
pub use compile::{compile, Mode};
pub use cost::{compare, cost_report, CostReport, SynthesisParams};
pub use error::{Error, Result};
pub use fermion::{
    classify_raw, parse_hamiltonian, parse_term, Family, FermionTerm, Hamiltonian, Ladder, Sign,
};
pub use gadget::{compile_diagonal, compile_gadget};
pub use jordan_wigner::{jw_pauli_expansion, jw_projector_form, ProjectorForm};
pub use naive::compile_naive;
pub use pauli::{Letters, Pauli, PauliString, PauliSum};
pub use scalar::Real;

pub type Circuit64 = Circuit<f64>;
pub type Circuit32 = Circuit<f32>;
pub type FermionTerm64 = FermionTerm<f64>;
pub type FermionTerm32 = FermionTerm<f32>;
pub type Hamiltonian64 = Hamiltonian<f64>;
pub type Hamiltonian32 = Hamiltonian<f32>;
pub type PauliSum64 = PauliSum<f64>;
pub type PauliSum32 = PauliSum<f32>;
pub type ProjectorForm64 = ProjectorForm<f64>;
pub type ProjectorForm32 = ProjectorForm<f32>;
pub type Matrix64 = verify::Matrix<f64>;
pub type Matrix32 = verify::Matrix<f32>;
pub type SynthesisParams64 = SynthesisParams<f64>;
