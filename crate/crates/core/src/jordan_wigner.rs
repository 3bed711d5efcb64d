//! Jordan-Wigner encoding of the canonical term families.
//!
//! `a_p -> (X_p + i Y_p)/2 ⊗ Z_{t<p}`, so an occupied orbital is the qubit
//! state `|1>`. Two independent routes are provided: the Pauli expansion
//! multiplies ladder-operator images out, while the projector form is
//! obtained by acting with the fermionic operators on the few basis states
//! of the orbitals a term touches.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fermion::{FermionTerm, Ladder, Sign};
use crate::pauli::{Letters, Pauli, PauliSum};
use crate::scalar::Real;

/// Pauli image of a single ladder operator.
pub fn jw_ladder<T: Real>(p: usize, dagger: bool, num_qubits: usize) -> Result<PauliSum<T>> {
    if p >= num_qubits {
        return Err(Error::IndexOutOfRange {
            index: p,
            num_orbitals: num_qubits,
        });
    }
    let half = T::one() / (T::one() + T::one());
    let y_sign = if dagger { -half } else { half };
    let with = |pauli| {
        Letters::from_pairs(
            (0..p)
                .map(|t| (t, Pauli::Z))
                .chain(std::iter::once((p, pauli))),
        )
    };
    PauliSum::from_strings(
        num_qubits,
        [
            (Complex::new(half, T::zero()), with(Pauli::X)),
            (Complex::new(T::zero(), y_sign), with(Pauli::Y)),
        ],
    )
}

/// Pauli image of an operator product, leftmost factor first.
pub fn jw_product<T: Real>(operators: &[Ladder], num_qubits: usize) -> Result<PauliSum<T>> {
    operators
        .iter()
        .try_fold(PauliSum::identity(num_qubits), |acc, op| {
            acc.multiply(&jw_ladder(op.index, op.dagger, num_qubits)?)
        })
}

/// Pauli expansion of the full term, conjugate partner included for
/// non-diagonal families and the term weight applied.
pub fn jw_pauli_expansion<T: Real>(term: &FermionTerm<T>) -> Result<PauliSum<T>> {
    let product = jw_product::<T>(&term.family.operators(), term.num_orbitals)?;
    let operator = if term.family.is_diagonal() {
        product
    } else {
        product.add(&product.adjoint())?
    };
    Ok(operator.scale(Complex::new(term.weight(), T::zero())))
}

/// `scale * (|a><b| + |b><a|)` on `swap_qubits`, tensored with `Z` on
/// `z_string`. Diagonal forms are `scale * |a><a|`.
///
/// Pattern bits follow `swap_qubits` order, so `pattern_a[0]` belongs to
/// the lowest-index swap qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorForm<T> {
    pub swap_qubits: Vec<usize>,
    pub pattern_a: Vec<bool>,
    pub pattern_b: Vec<bool>,
    pub z_string: Vec<usize>,
    pub scale: T,
    pub diagonal: bool,
    pub num_qubits: usize,
}

fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn join(qubits: &[usize]) -> String {
    if qubits.is_empty() {
        return "-".into();
    }
    qubits
        .iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl<T: Real> fmt::Display for ProjectorForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.diagonal {
            write!(
                f,
                "projector diagonal swap={} a={} z={} scale={}",
                join(&self.swap_qubits),
                bits_to_string(&self.pattern_a),
                join(&self.z_string),
                self.scale
            )
        } else {
            write!(
                f,
                "projector swap={} a={} b={} z={} scale={}",
                join(&self.swap_qubits),
                bits_to_string(&self.pattern_a),
                bits_to_string(&self.pattern_b),
                join(&self.z_string),
                self.scale
            )
        }
    }
}

impl<T: Real> ProjectorForm<T> {
    /// Qubit positions where the two patterns differ.
    pub fn differing_qubits(&self) -> Vec<usize> {
        self.swap_qubits
            .iter()
            .zip(self.pattern_a.iter().zip(&self.pattern_b))
            .filter(|(_, (a, b))| a != b)
            .map(|(&q, _)| q)
            .collect()
    }

    /// Action of the generator (scale included) on a computational basis
    /// state; `None` when the state is annihilated.
    pub fn apply_to_basis(&self, x: u64) -> Option<(u64, T)> {
        let bits: Vec<bool> = self.swap_qubits.iter().map(|&q| x >> q & 1 == 1).collect();
        let target = if bits == self.pattern_a {
            &self.pattern_b
        } else if !self.diagonal && bits == self.pattern_b {
            &self.pattern_a
        } else {
            return None;
        };
        let mut y = x;
        for (&q, &bit) in self.swap_qubits.iter().zip(target) {
            y = (y & !(1 << q)) | ((bit as u64) << q);
        }
        let parity = self.z_string.iter().filter(|&&t| x >> t & 1 == 1).count() % 2;
        let sign = if parity == 1 { -T::one() } else { T::one() };
        Some((y, self.scale * sign))
    }
}

/// Apply an operator product (rightmost first) to a local occupation state.
/// `local[k]` is the occupation of the `k`-th smallest touched orbital;
/// untouched orbitals are empty, so only touched ones contribute to the
/// fermionic parity.
fn apply_local(operators: &[Ladder], modes: &[usize], local: &mut [bool]) -> Option<Sign> {
    let mut sign = Sign::Plus;
    for op in operators.iter().rev() {
        let k = modes
            .binary_search(&op.index)
            .expect("operator on touched mode");
        let occupied_below = local[..k].iter().filter(|&&b| b).count();
        if local[k] == op.dagger {
            return None;
        }
        local[k] = op.dagger;
        sign = sign * Sign::of_swap(occupied_below % 2 == 1);
    }
    Some(sign)
}

/// Projector normal form of a canonical term.
pub fn jw_projector_form<T: Real>(term: &FermionTerm<T>) -> ProjectorForm<T> {
    let operators = term.family.operators();
    let mut modes: Vec<usize> = operators.iter().map(|l| l.index).collect();
    modes.sort_unstable();
    modes.dedup();

    // input occupation: the first operator to act on a mode decides it
    let pattern_a: Vec<bool> = modes
        .iter()
        .map(|&m| {
            !operators
                .iter()
                .rev()
                .find(|l| l.index == m)
                .expect("touched")
                .dagger
        })
        .collect();
    let mut pattern_b = pattern_a.clone();
    let structural = apply_local(&operators, &modes, &mut pattern_b)
        .expect("canonical terms act on their input pattern");

    let z_string: Vec<usize> = (0..term.num_orbitals)
        .filter(|t| modes.binary_search(t).is_err())
        .filter(|t| operators.iter().filter(|l| l.index > *t).count() % 2 == 1)
        .collect();

    ProjectorForm {
        diagonal: pattern_a == pattern_b,
        swap_qubits: modes,
        pattern_a,
        pattern_b,
        z_string,
        scale: term.weight() * structural.to_real(),
        num_qubits: term.num_orbitals,
    }
}

/// The eight-string expansion of `a†p a†q ar as + h.c.` for `p<q<r<s` with
/// unit weight: letters on `(p,q,r,s)` and the relative sign of each string.
pub const DOUBLE_EXCITATION_SIGNS: [(&str, i8); 8] = [
    ("XXXX", -1),
    ("XXYY", 1),
    ("XYXY", -1),
    ("XYYX", -1),
    ("YXXY", -1),
    ("YXYX", -1),
    ("YYXX", 1),
    ("YYYY", -1),
];
