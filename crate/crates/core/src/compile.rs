use std::fmt;
use std::str::FromStr;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::fermion::FermionTerm;
use crate::gadget::{compile_diagonal, compile_gadget};
use crate::naive::compile_naive;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Naive,
    Gadget,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Mode::Naive),
            "gadget" => Ok(Mode::Gadget),
            other => Err(Error::Domain(format!(
                "unknown mode `{other}` (expected naive|gadget)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Naive => "naive",
            Mode::Gadget => "gadget",
        })
    }
}

/// Compile `exp(i * gamma * H_term)` in the requested mode. In gadget mode
/// diagonal families go through the phase-circuit compiler.
pub fn compile<T: Real>(
    term: &FermionTerm<T>,
    mode: Mode,
    gamma: T,
    controlled: bool,
    dirty_budget: usize,
) -> Result<Circuit<T>> {
    match mode {
        Mode::Naive => compile_naive(term, gamma, controlled),
        Mode::Gadget if term.family.is_diagonal() => compile_diagonal(term, gamma, controlled),
        Mode::Gadget => compile_gadget(term, gamma, controlled, dirty_budget),
    }
}
