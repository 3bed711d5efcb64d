//! Gadget compilation of term exponentials.
//!
//! A non-diagonal term is `scale * (|a><b| + |b><a|) ⊗ Z...Z`. A CNOT
//! ladder from the rotation qubit (lowest qubit where the patterns differ)
//! maps `a` and `b` to strings that differ on that qubit alone, so the
//! exponential becomes a rotation about `X ⊗ Z...Z` conditioned on the
//! remaining swap qubits holding their common value. That conditional
//! rotation is two opposite half-angle rotations interleaved with two
//! multi-controlled Z gates, and only the multi-controlled Z gates need the
//! extra phase-estimation control.

use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};
use crate::fermion::{Family, FermionTerm};
use crate::jordan_wigner::{jw_projector_form, ProjectorForm};
use crate::pauli::{Letters, Pauli};
use crate::scalar::Real;

/// Dirty ancillae the staircase decomposition needs for `controls` controls.
pub fn dirty_ancillae_required(controls: usize) -> usize {
    controls.saturating_sub(2)
}

/// Toffoli count of the decomposition of a Z with `controls` controls.
pub fn mcz_toffoli_count(controls: usize) -> usize {
    match controls {
        0 | 1 => 0,
        2 => 1,
        n => 4 * (n - 2),
    }
}

/// Patterns `a` and `b` after the CNOT ladder, read on the swap qubits.
pub fn ladder_images<T: Real>(form: &ProjectorForm<T>) -> (Vec<bool>, Vec<bool>) {
    let differing: Vec<bool> = form
        .pattern_a
        .iter()
        .zip(&form.pattern_b)
        .map(|(a, b)| a != b)
        .collect();
    let rho = differing
        .iter()
        .position(|&d| d)
        .expect("non-diagonal form");
    let map = |pattern: &[bool]| -> Vec<bool> {
        pattern
            .iter()
            .enumerate()
            .map(|(k, &bit)| {
                if differing[k] && k != rho {
                    bit ^ pattern[rho]
                } else {
                    bit
                }
            })
            .collect()
    };
    (map(&form.pattern_a), map(&form.pattern_b))
}

/// Compile a non-diagonal term. `dirty_budget` bounds the number of dirty
/// ancillae the circuit may borrow for its multi-controlled gates.
pub fn compile_gadget<T: Real>(
    term: &FermionTerm<T>,
    gamma: T,
    controlled: bool,
    dirty_budget: usize,
) -> Result<Circuit<T>> {
    if term.family.is_diagonal() {
        return Err(Error::DiagonalTermNotGadgetizable(term.family.to_string()));
    }
    let form = jw_projector_form(term);
    let m = term.num_orbitals;
    let differing = form.differing_qubits();
    let rho = differing[0];
    let (mapped, _) = ladder_images(&form);

    let mut controls: Vec<(usize, Polarity)> = form
        .swap_qubits
        .iter()
        .zip(&mapped)
        .filter(|(&q, _)| q != rho)
        .map(|(&q, &bit)| (q, Polarity::fires_on(bit)))
        .collect();
    if controlled {
        controls.push((m, Polarity::Closed));
    }
    let required = dirty_ancillae_required(controls.len());
    if required > dirty_budget {
        return Err(Error::InsufficientDirtyAncillae {
            required,
            available: dirty_budget,
        });
    }

    let mut circuit = Circuit::new(m, controlled, required);
    let mcz = Gate::MultiControlledZ {
        controls,
        target: rho,
        dirty: circuit.dirty_qubits(),
    };
    let ladder: Vec<Gate<T>> = differing[1..]
        .iter()
        .map(|&d| Gate::Cnot {
            control: rho,
            target: d,
        })
        .collect();
    let axis = Letters::single(rho, Pauli::X)
        .product(&Letters::z_string(form.z_string.iter().copied()))
        .1;
    // MCZ·R(α)·MCZ·R(-α) acts as exp(-2iα P) where the controls fire
    let half = -gamma * form.scale / (T::one() + T::one());

    circuit.extend(ladder.iter().cloned())?;
    circuit.push(mcz.clone())?;
    circuit.push(Gate::rotation(axis.clone(), half))?;
    circuit.push(mcz)?;
    circuit.push(Gate::rotation(axis, -half))?;
    circuit.extend(ladder.into_iter().rev())?;
    Ok(circuit)
}

/// `exp(i φ |11><11|)` on qubits `(a, b)`.
fn controlled_phase<T: Real>(a: usize, b: usize, phi: T) -> Vec<Gate<T>> {
    let quarter = phi / T::from_f64_lossy(4.0);
    vec![
        Gate::rotation(Letters::identity(), quarter),
        Gate::rotation(Letters::single(a, Pauli::Z), -quarter),
        Gate::rotation(Letters::single(b, Pauli::Z), -quarter),
        Gate::Cnot {
            control: a,
            target: b,
        },
        Gate::rotation(Letters::single(b, Pauli::Z), quarter),
        Gate::Cnot {
            control: a,
            target: b,
        },
    ]
}

/// Compile a diagonal (number or number-number) term as a phase circuit.
///
/// The controlled number-number phase `exp(i φ |111><111|)` on
/// (ancilla, p, q) is split as a controlled phase `φ/2` on (ancilla, p)
/// plus `-φ/2 · [ancilla·p] Z_q`, the latter realized by a Z rotation on
/// `q` sandwiched between two Toffolis.
pub fn compile_diagonal<T: Real>(
    term: &FermionTerm<T>,
    gamma: T,
    controlled: bool,
) -> Result<Circuit<T>> {
    let m = term.num_orbitals;
    let form = jw_projector_form(term);
    let phi = gamma * form.scale;
    let two = T::one() + T::one();
    let mut circuit = Circuit::new(m, controlled, 0);
    match (term.family, controlled) {
        (Family::Number(p), false) => circuit.extend([
            Gate::rotation(Letters::identity(), phi / two),
            Gate::rotation(Letters::single(p, Pauli::Z), -phi / two),
        ])?,
        (Family::Number(p), true) => circuit.extend(controlled_phase(m, p, phi))?,
        (Family::NumberNumber(p, q), false) => circuit.extend(controlled_phase(p, q, phi))?,
        (Family::NumberNumber(p, q), true) => {
            let quarter = phi / T::from_f64_lossy(4.0);
            circuit.extend(controlled_phase(m, p, phi / two))?;
            circuit.extend([
                Gate::rotation(Letters::single(q, Pauli::Z), -quarter),
                Gate::Toffoli {
                    c1: m,
                    c2: p,
                    target: q,
                },
                Gate::rotation(Letters::single(q, Pauli::Z), quarter),
                Gate::Toffoli {
                    c1: m,
                    c2: p,
                    target: q,
                },
            ])?;
        }
        (family, _) => {
            return Err(Error::InvalidGate(format!("{family} is not diagonal")));
        }
    }
    Ok(circuit)
}

/// Toffoli staircase for an `n`-controlled X (`n >= 3`) borrowing `n - 2`
/// dirty ancillae, which end in their initial state. Uses `4(n-2)` Toffolis.
fn staircase<T: Real>(controls: &[usize], dirty: &[usize], target: usize) -> Vec<Gate<T>> {
    let n = controls.len();
    let t = |c1, c2, target| Gate::Toffoli { c1, c2, target };
    let mut middle: Vec<Gate<T>> = (1..n - 2)
        .rev()
        .map(|i| t(controls[i + 1], dirty[i - 1], dirty[i]))
        .collect();
    let descent = middle.clone();
    middle.push(t(controls[0], controls[1], dirty[0]));
    middle.extend(descent.into_iter().rev());

    let top = t(controls[n - 1], dirty[n - 3], target);
    let mut gates = vec![top.clone()];
    gates.extend(middle.iter().cloned());
    gates.push(top);
    gates.extend(middle);
    gates
}

/// Lower a multi-controlled Z into Toffolis, Hadamards and X gates.
pub fn decompose_mcz<T: Real>(gate: &Gate<T>, dirty: &[usize]) -> Result<Vec<Gate<T>>> {
    let Gate::MultiControlledZ {
        controls, target, ..
    } = gate
    else {
        return Err(Error::InvalidGate(format!(
            "not a multi-controlled Z: {gate:?}"
        )));
    };
    let target = *target;
    let qubits: Vec<usize> = controls.iter().map(|(q, _)| *q).collect();
    let required = dirty_ancillae_required(qubits.len());
    if dirty.len() < required {
        return Err(Error::InsufficientDirtyAncillae {
            required,
            available: dirty.len(),
        });
    }
    let dirty = &dirty[..required];
    if dirty.iter().any(|d| *d == target || qubits.contains(d)) {
        return Err(Error::InvalidGate(
            "dirty ancilla overlaps the gate's qubits".into(),
        ));
    }

    let flips: Vec<Gate<T>> = controls
        .iter()
        .filter(|(_, pol)| *pol == Polarity::Open)
        .map(|(q, _)| Gate::PauliX(*q))
        .collect();
    let mut gates = flips.clone();
    match qubits.len() {
        0 => gates.extend([
            Gate::Hadamard(target),
            Gate::PauliX(target),
            Gate::Hadamard(target),
        ]),
        1 => gates.push(Gate::Cz(qubits[0], target)),
        2 => gates.extend([
            Gate::Hadamard(target),
            Gate::Toffoli {
                c1: qubits[0],
                c2: qubits[1],
                target,
            },
            Gate::Hadamard(target),
        ]),
        _ => {
            gates.push(Gate::Hadamard(target));
            gates.extend(staircase(&qubits, dirty, target));
            gates.push(Gate::Hadamard(target));
        }
    }
    gates.extend(flips);
    Ok(gates)
}
