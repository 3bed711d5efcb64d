//! Circuit to unitary by pushing every basis state through the gate list.

use num_complex::Complex;
use rayon::prelude::*;

use super::matrix::{normalize_column, Matrix};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::i_power;
use crate::scalar::Real;

pub const MAX_SIMULATED_QUBITS: usize = 14;

type State<T> = Vec<(usize, Complex<T>)>;

fn bit(x: usize, q: usize) -> bool {
    x >> q & 1 == 1
}

/// Apply one gate to a sparse state. Branching gates leave duplicate
/// indices behind; the caller merges.
fn apply_gate<T: Real>(gate: &Gate<T>, state: &mut State<T>) -> bool {
    match gate {
        Gate::PauliX(t) => state.iter_mut().for_each(|e| e.0 ^= 1 << t),
        Gate::Cnot { control, target } => state.iter_mut().for_each(|e| {
            if bit(e.0, *control) {
                e.0 ^= 1 << target
            }
        }),
        Gate::Toffoli { c1, c2, target } => state.iter_mut().for_each(|e| {
            if bit(e.0, *c1) && bit(e.0, *c2) {
                e.0 ^= 1 << target
            }
        }),
        Gate::Cz(a, b) => state.iter_mut().for_each(|e| {
            if bit(e.0, *a) && bit(e.0, *b) {
                e.1 = -e.1
            }
        }),
        Gate::MultiControlledZ {
            controls, target, ..
        } => state.iter_mut().for_each(|e| {
            if bit(e.0, *target) && controls.iter().all(|&(q, pol)| pol.matches(bit(e.0, q))) {
                e.1 = -e.1
            }
        }),
        Gate::Hadamard(t) => {
            let h = T::FRAC_1_SQRT_2();
            let mut next = Vec::with_capacity(2 * state.len());
            for &(x, v) in state.iter() {
                let low = x & !(1 << t);
                next.push((low, v * h));
                next.push((low | 1 << t, if bit(x, *t) { -v * h } else { v * h }));
            }
            *state = next;
            return true;
        }
        Gate::Rotation { axis, angle } => {
            let action = axis.masks();
            let (cos, sin) = (angle.cos(), angle.sin());
            if action.flip_mask == 0 {
                for e in state.iter_mut() {
                    let (k, _) = action.apply(e.0 as u64);
                    let phase = Complex::new(cos, T::zero()) + i_power::<T>(k + 1) * sin;
                    e.1 = e.1 * phase;
                }
            } else {
                let mut next = Vec::with_capacity(2 * state.len());
                for &(x, v) in state.iter() {
                    let (k, y) = action.apply(x as u64);
                    next.push((x, v * cos));
                    next.push((y as usize, v * i_power::<T>(k + 1) * sin));
                }
                *state = next;
                return true;
            }
        }
    }
    false
}

/// Image of basis state `x` under the circuit.
pub fn simulate_basis<T: Real>(circuit: &Circuit<T>, x: usize) -> Vec<(usize, Complex<T>)> {
    let mut state = vec![(x, Complex::new(T::one(), T::zero()))];
    for gate in circuit.gates() {
        if apply_gate(gate, &mut state) {
            state = normalize_column(state);
        }
    }
    normalize_column(state)
}

/// Full unitary of a circuit on its whole register (system, control
/// ancilla, dirty ancillae, in that order from qubit 0).
pub fn dense_unitary<T: Real>(circuit: &Circuit<T>) -> Result<Matrix<T>> {
    let n = circuit.width();
    if n > MAX_SIMULATED_QUBITS {
        return Err(Error::RegisterTooLarge {
            qubits: n,
            max: MAX_SIMULATED_QUBITS,
        });
    }
    let dim = 1usize << n;
    let cols = (0..dim)
        .into_par_iter()
        .map(|x| simulate_basis(circuit, x))
        .collect();
    Ok(Matrix::from_raw_columns(dim, cols))
}
