//! Seeded random equivalence trials: every compiler output is simulated and
//! compared against the exact exponential of the term it came from.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::oracle::{controlled_block, equivalent, exact_term_exponential};
use super::simulate::dense_unitary;
use crate::circuit::{Circuit, Gate};
use crate::compile::{compile, Mode};
use crate::error::Result;
use crate::fermion::{classify_raw, FermionTerm};
use crate::scalar::Real;

/// Deliberate corruption of compiled circuits, for checking that the
/// verifier actually detects faults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negate every rotation angle.
    FlipRotationSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialSpec<T> {
    pub index: usize,
    pub term: FermionTerm<T>,
    pub gamma: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check<T> {
    pub label: String,
    pub deviation: T,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome<T> {
    pub spec: TrialSpec<T>,
    pub checks: Vec<Check<T>>,
}

impl<T: Real> TrialOutcome<T> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_deviation(&self) -> T {
        self.checks
            .iter()
            .fold(T::zero(), |m, c| m.max(c.deviation))
    }
}

impl<T: Real> fmt::Display for TrialOutcome<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dev = self.max_deviation().to_f64().unwrap_or(f64::NAN);
        write!(
            f,
            "trial {} {} sign {} M={} gamma={:.6} dev={:.3e} {}",
            self.spec.index,
            self.spec.term.family,
            self.spec.term.sign,
            self.spec.term.num_orbitals,
            self.spec.gamma.to_f64().unwrap_or(f64::NAN),
            dev,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for check in self.checks.iter().filter(|c| !c.passed) {
            write!(
                f,
                " [{} dev={:.3e}]",
                check.label,
                check.deviation.to_f64().unwrap_or(f64::NAN)
            )?;
        }
        Ok(())
    }
}

/// Smallest orbital count for each family, in generation order.
const FAMILY_MIN_ORBITALS: [usize; 5] = [1, 2, 2, 3, 4];

fn random_raw(rng: &mut ChaCha8Rng, family: usize, m: usize) -> (Vec<usize>, Vec<usize>) {
    let mut pool: Vec<usize> = (0..m).collect();
    pool.shuffle(rng);
    match family {
        0 => (vec![pool[0]], vec![pool[0]]),
        1 => (vec![pool[0]], vec![pool[1]]),
        2 => {
            let mut c = vec![pool[0], pool[1]];
            let mut d = c.clone();
            c.shuffle(rng);
            d.shuffle(rng);
            (c, d)
        }
        3 => {
            let mut c = vec![pool[0], pool[1]];
            let mut d = vec![pool[0], pool[2]];
            c.shuffle(rng);
            d.shuffle(rng);
            (c, d)
        }
        _ => (vec![pool[0], pool[1]], vec![pool[2], pool[3]]),
    }
}

/// Generate `count` trials with orbital counts in `4..=max_orbitals`
/// (smaller when `max_orbitals` is smaller). Families cycle so each
/// appears; orbital indices, operator order, coefficient and
/// `gamma ∈ (-π, π]` are drawn from a ChaCha stream seeded with `seed`.
pub fn generate_trials<T: Real>(
    count: usize,
    max_orbitals: usize,
    seed: u64,
) -> Result<Vec<TrialSpec<T>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let feasible: Vec<usize> = (0..5)
        .filter(|&f| FAMILY_MIN_ORBITALS[f] <= max_orbitals)
        .collect();
    let mut specs = Vec::with_capacity(count);
    for index in 0..count {
        let family = feasible[index % feasible.len()];
        let lo = FAMILY_MIN_ORBITALS[family].max(max_orbitals.min(4));
        let m = rng.gen_range(lo..=max_orbitals);
        let (creations, annihilations) = random_raw(&mut rng, family, m);
        let magnitude: f64 = rng.gen_range(0.2..1.5);
        let coefficient = if rng.gen_bool(0.5) {
            magnitude
        } else {
            -magnitude
        };
        let gamma = std::f64::consts::PI - std::f64::consts::TAU * rng.gen::<f64>();
        let term = classify_raw(
            &creations,
            &annihilations,
            T::from_f64_lossy(coefficient),
            m,
        )?;
        specs.push(TrialSpec {
            index,
            term,
            gamma: T::from_f64_lossy(gamma),
        });
    }
    Ok(specs)
}

fn inject<T: Real>(circuit: Circuit<T>, fault: Option<Fault>) -> Result<Circuit<T>> {
    let Some(Fault::FlipRotationSign) = fault else {
        return Ok(circuit);
    };
    let mut out = Circuit::new(
        circuit.system_width,
        circuit.has_control_ancilla,
        circuit.dirty_ancilla_count,
    );
    out.extend(circuit.gates().iter().map(|g| match g {
        Gate::Rotation { axis, angle } => Gate::rotation(axis.clone(), -*angle),
        other => other.clone(),
    }))?;
    Ok(out)
}

/// Dirty ancillae given to the gadget compiler in trials.
pub const TRIAL_DIRTY_BUDGET: usize = 2;

/// Run one trial: naive and gadget circuits, each with and without a
/// control, gadget circuits both as emitted and with their multi-controlled
/// gates lowered to Toffolis. Controlled circuits must match exactly,
/// uncontrolled ones up to a global phase.
pub fn run_trial<T: Real>(
    spec: &TrialSpec<T>,
    tol: T,
    fault: Option<Fault>,
) -> Result<TrialOutcome<T>> {
    let exact = exact_term_exponential(&spec.term, spec.gamma)?;
    let exact_controlled = controlled_block(&exact)?;
    let mut checks = Vec::new();
    for mode in [Mode::Naive, Mode::Gadget] {
        for controlled in [false, true] {
            let circuit = compile(&spec.term, mode, spec.gamma, controlled, TRIAL_DIRTY_BUDGET)?;
            let variants = match mode {
                Mode::Naive => vec![("", circuit)],
                Mode::Gadget => {
                    let lowered = circuit.lowered()?;
                    vec![("", circuit), (" lowered", lowered)]
                }
            };
            for (suffix, circuit) in variants {
                let circuit = inject(circuit, fault)?;
                let target = if controlled {
                    &exact_controlled
                } else {
                    &exact
                };
                let target = target.embed_above(circuit.dirty_ancilla_count);
                let actual = dense_unitary(&circuit)?;
                let eq = equivalent(&actual, &target, !controlled, tol)?;
                let unitarity = actual.unitarity_deviation();
                let deviation = eq.deviation.max(unitarity);
                checks.push(Check {
                    label: format!(
                        "{mode}{}{suffix}",
                        if controlled { " controlled" } else { "" }
                    ),
                    deviation,
                    passed: deviation <= tol,
                });
            }
        }
    }
    Ok(TrialOutcome {
        spec: spec.clone(),
        checks,
    })
}

/// Run trials in parallel; results keep the order of `specs`.
pub fn run_trials<T: Real>(
    specs: &[TrialSpec<T>],
    tol: T,
    fault: Option<Fault>,
) -> Result<Vec<TrialOutcome<T>>> {
    specs.par_iter().map(|s| run_trial(s, tol, fault)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSummary<T> {
    pub total: usize,
    pub passed: usize,
    pub max_deviation: T,
}

pub fn summarize<T: Real>(outcomes: &[TrialOutcome<T>]) -> TrialSummary<T> {
    TrialSummary {
        total: outcomes.len(),
        passed: outcomes.iter().filter(|o| o.passed()).count(),
        max_deviation: outcomes
            .iter()
            .fold(T::zero(), |m, o| m.max(o.max_deviation())),
    }
}
