//! Reference operators built without going through any compiler.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::fermion::{FermionTerm, Ladder};
use crate::jordan_wigner::{jw_projector_form, ProjectorForm};
use crate::pauli::{i_power, PauliSum};
use crate::scalar::Real;

/// Largest orbital count the exact exponential is built for.
pub const MAX_ORACLE_ORBITALS: usize = 12;

/// Matrix of a Pauli sum on `width` qubits.
pub fn pauli_sum_matrix<T: Real>(sum: &PauliSum<T>) -> Result<Matrix<T>> {
    let width = sum.width();
    if width > MAX_ORACLE_ORBITALS {
        return Err(Error::RegisterTooLarge {
            qubits: width,
            max: MAX_ORACLE_ORBITALS,
        });
    }
    let strings: Vec<_> = sum
        .iter()
        .map(|s| (s.letters.masks(), s.coefficient))
        .collect();
    Ok(Matrix::from_columns(1 << width, |x| {
        strings
            .iter()
            .map(|(action, c)| {
                let (k, y) = action.apply(x as u64);
                (y as usize, *c * i_power::<T>(k))
            })
            .collect()
    }))
}

/// Matrix of a projector form, scale included.
pub fn projector_matrix<T: Real>(form: &ProjectorForm<T>) -> Result<Matrix<T>> {
    if form.num_qubits > MAX_ORACLE_ORBITALS {
        return Err(Error::RegisterTooLarge {
            qubits: form.num_qubits,
            max: MAX_ORACLE_ORBITALS,
        });
    }
    Ok(Matrix::from_columns(1 << form.num_qubits, |x| {
        form.apply_to_basis(x as u64)
            .map(|(y, v)| vec![(y as usize, Complex::new(v, T::zero()))])
            .unwrap_or_default()
    }))
}

/// `exp(i * gamma * H)` for the term's qubit image `H`.
///
/// Non-diagonal terms satisfy `H^3 = s^2 H` with `s = |scale|`, so with
/// `Ĥ = H/s` the exponential is `I + i sin(γs) Ĥ + (cos(γs) - 1) Ĥ²`.
/// Diagonal terms exponentiate entrywise.
pub fn exact_term_exponential<T: Real>(term: &FermionTerm<T>, gamma: T) -> Result<Matrix<T>> {
    let form = jw_projector_form(term);
    let dim = 1usize << term.num_orbitals;
    if form.diagonal {
        if term.num_orbitals > MAX_ORACLE_ORBITALS {
            return Err(Error::RegisterTooLarge {
                qubits: term.num_orbitals,
                max: MAX_ORACLE_ORBITALS,
            });
        }
        return Ok(Matrix::from_columns(dim, |x| {
            let phase = form.apply_to_basis(x as u64).map_or(T::zero(), |(_, v)| v);
            vec![(x, Complex::from_polar(T::one(), gamma * phase))]
        }));
    }
    let h = projector_matrix(&form)?;
    let s = form.scale.abs();
    if s.is_zero() {
        return Ok(Matrix::identity(dim));
    }
    let unit = h.scale(Complex::new(s.recip(), T::zero()));
    let square = unit.mul(&unit)?;
    let theta = gamma * s;
    Matrix::identity(dim)
        .add(&unit.scale(Complex::new(T::zero(), theta.sin())))?
        .add(&square.scale(Complex::new(theta.cos() - T::one(), T::zero())))
}

/// `|0><0| ⊗ I + |1><1| ⊗ U` with the control as the new top qubit.
pub fn controlled_block<T: Real>(u: &Matrix<T>) -> Result<Matrix<T>> {
    let deviation = u.unitarity_deviation();
    if deviation > T::unitarity_tolerance() {
        return Err(Error::NonUnitary(deviation.to_f64().unwrap_or(f64::NAN)));
    }
    let n = u.dim();
    Ok(Matrix::from_columns(2 * n, |j| {
        if j < n {
            vec![(j, Complex::new(T::one(), T::zero()))]
        } else {
            u.column(j - n).iter().map(|&(i, v)| (i + n, v)).collect()
        }
    }))
}

/// Outcome of comparing two unitaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equivalence<T> {
    pub equal: bool,
    /// Largest entrywise deviation after any phase alignment.
    pub deviation: T,
    /// Phase applied to the second operand.
    pub phase: Complex<T>,
}

/// Compare `a` and `b`, optionally allowing `a = e^{iφ} b`. The phase is
/// read off the largest entry of `b† a`.
pub fn equivalent<T: Real>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    up_to_global_phase: bool,
    tol: T,
) -> Result<Equivalence<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut phase = Complex::new(T::one(), T::zero());
    if up_to_global_phase {
        let overlap = b.adjoint().mul(a)?;
        let mut best = Complex::zero();
        for j in 0..overlap.dim() {
            for &(_, v) in overlap.column(j) {
                if v.norm() > best.norm() {
                    best = v;
                }
            }
        }
        if best.norm() > T::zero() {
            phase = best / best.norm();
        }
    }
    let deviation = a.max_abs_diff(&b.scale(phase))?;
    Ok(Equivalence {
        equal: deviation <= tol,
        deviation,
        phase,
    })
}

/// Matrix of a ladder-operator product (leftmost factor first) acting
/// directly on occupation-number states: `a_p` empties orbital `p` with
/// sign `(-1)^(occupied orbitals below p)`.
pub fn fermionic_operator_matrix<T: Real>(
    operators: &[Ladder],
    num_orbitals: usize,
) -> Result<Matrix<T>> {
    if num_orbitals > MAX_ORACLE_ORBITALS {
        return Err(Error::RegisterTooLarge {
            qubits: num_orbitals,
            max: MAX_ORACLE_ORBITALS,
        });
    }
    if let Some(op) = operators.iter().find(|op| op.index >= num_orbitals) {
        return Err(Error::IndexOutOfRange {
            index: op.index,
            num_orbitals,
        });
    }
    Ok(Matrix::from_columns(1 << num_orbitals, |x| {
        let mut state = x;
        let mut sign = T::one();
        for op in operators.iter().rev() {
            let occupied = state >> op.index & 1 == 1;
            if occupied == op.dagger {
                return Vec::new();
            }
            if (state & ((1 << op.index) - 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            state ^= 1 << op.index;
        }
        vec![(state, Complex::new(sign, T::zero()))]
    }))
}

/// Direct fermionic matrix of a term: `weight * (P [+ P†])`.
pub fn fermionic_term_matrix<T: Real>(term: &FermionTerm<T>) -> Result<Matrix<T>> {
    let product = fermionic_operator_matrix::<T>(&term.family.operators(), term.num_orbitals)?;
    let operator = if term.family.is_diagonal() {
        product
    } else {
        product.add(&product.adjoint())?
    };
    Ok(operator.scale(Complex::new(term.weight(), T::zero())))
}
