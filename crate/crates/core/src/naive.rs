//! Baseline compilation: one Pauli product rotation per string of the
//! Jordan-Wigner expansion, each doubled when a control is required.

use crate::circuit::{Circuit, Gate};
use crate::error::Result;
use crate::fermion::FermionTerm;
use crate::jordan_wigner::jw_pauli_expansion;
use crate::pauli::{Letters, Pauli};
use crate::scalar::Real;

/// Compile `exp(i * gamma * H)` for the term's qubit image `H`, optionally
/// controlled on an ancilla placed after the system register.
///
/// The strings of `H` commute, so the product of their exponentials is
/// exact. A controlled `exp(i θ P)` is emitted as
/// `exp(i θ/2 P) exp(-i θ/2 Z_anc P)`. Identity strings become
/// identity-axis rotations (global phases) so that controlled circuits stay
/// phase-exact.
pub fn compile_naive<T: Real>(
    term: &FermionTerm<T>,
    gamma: T,
    controlled: bool,
) -> Result<Circuit<T>> {
    let m = term.num_orbitals;
    let expansion = jw_pauli_expansion(term)?;
    debug_assert!(expansion.max_imaginary() <= T::prune_tolerance());

    let mut circuit = Circuit::new(m, controlled, 0);
    let two = T::one() + T::one();
    for string in expansion.iter() {
        let theta = gamma * string.coefficient.re;
        if controlled {
            let (_, with_control) = string.letters.product(&Letters::single(m, Pauli::Z));
            circuit.push(Gate::rotation(string.letters.clone(), theta / two))?;
            circuit.push(Gate::rotation(with_control, -theta / two))?;
        } else {
            circuit.push(Gate::rotation(string.letters, theta))?;
        }
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::Family;

    fn term(family: Family, m: usize) -> FermionTerm<f64> {
        FermionTerm::new(family, 1.0, m).unwrap()
    }

    #[test]
    fn rotation_counts_per_family() {
        let count = |f, m| {
            compile_naive(&term(f, m), 0.3, true)
                .unwrap()
                .census()
                .rotations
        };
        assert_eq!(count(Family::DoubleExcitation(0, 1, 2, 3), 4), 16);
        assert_eq!(count(Family::Hopping(0, 1), 2), 4);
        assert_eq!(count(Family::NumberExcitation(0, 1, 2), 3), 8);
        assert_eq!(count(Family::Number(0), 1), 3);
        assert_eq!(count(Family::NumberNumber(0, 1), 2), 7);
    }

    #[test]
    fn uncontrolled_hopping_axes() {
        let c = compile_naive(&term(Family::Hopping(0, 1), 2), 0.7, false).unwrap();
        let axes: Vec<String> = c
            .gates()
            .iter()
            .map(|g| match g {
                Gate::Rotation { axis, angle } => {
                    assert!((angle - 0.35).abs() < 1e-15);
                    axis.to_string()
                }
                _ => panic!("unexpected gate"),
            })
            .collect();
        assert_eq!(axes, vec!["X0 X1", "Y0 Y1"]);
    }

    #[test]
    fn zero_gamma_gives_zero_angles() {
        let c = compile_naive(&term(Family::DoubleExcitation(0, 1, 2, 3), 4), 0.0, true).unwrap();
        assert!(c
            .gates()
            .iter()
            .all(|g| matches!(g, Gate::Rotation { angle, .. } if *angle == 0.0)));
    }
}
