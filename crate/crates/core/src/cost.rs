//! T-count accounting.
//!
//! Arbitrary-angle rotations cost `ceil(3 log2(1/ε))` T gates each (the
//! doubly-logarithmic correction is dropped) unless a fixed per-rotation
//! cost is supplied. Toffolis cost a fixed number of T gates; Cliffords
//! are free. Multi-controlled Z gates are charged for the Toffolis of
//! their staircase decomposition.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gadget::mcz_toffoli_count;
use crate::scalar::Real;

pub const DEFAULT_TOFFOLI_T_COST: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SynthesisParams<T> {
    /// Total synthesis error budget across the enclosing algorithm.
    pub eps_total: T,
    /// Number of rotations sharing the budget.
    pub n_rot: u64,
    pub per_rotation_cost_override: Option<u64>,
    pub toffoli_t_cost: u64,
}

impl<T: Real> SynthesisParams<T> {
    pub fn new(eps_total: T, n_rot: u64) -> Result<Self> {
        if eps_total.is_nan() || eps_total <= T::zero() || n_rot == 0 {
            return Err(Error::Domain("need eps_total > 0 and n_rot > 0".into()));
        }
        let params = SynthesisParams {
            eps_total,
            n_rot,
            per_rotation_cost_override: None,
            toffoli_t_cost: DEFAULT_TOFFOLI_T_COST,
        };
        if params.per_rotation_epsilon() >= T::one() {
            return Err(Error::Domain(
                "per-rotation error eps_total/n_rot must be < 1".into(),
            ));
        }
        Ok(params)
    }

    pub fn with_override(mut self, per_rotation: Option<u64>) -> Self {
        self.per_rotation_cost_override = per_rotation;
        self
    }

    pub fn with_toffoli_cost(mut self, t_cost: u64) -> Self {
        self.toffoli_t_cost = t_cost;
        self
    }

    /// Per-rotation error from splitting the budget evenly (triangle inequality).
    pub fn per_rotation_epsilon(&self) -> T {
        self.eps_total / T::from_u64(self.n_rot).expect("n_rot representable")
    }

    /// Formula cost at this budget, ignoring any override.
    pub fn formula_cost(&self) -> Result<u64> {
        formula_synthesis_cost(self.per_rotation_epsilon())
    }

    /// Cost actually charged per rotation.
    pub fn per_rotation_cost(&self) -> Result<u64> {
        rotation_synthesis_cost(self.per_rotation_epsilon(), self)
    }
}

impl Default for SynthesisParams<f64> {
    fn default() -> Self {
        SynthesisParams::new(1e-5, 10_000_000).expect("valid defaults")
    }
}

/// `ceil(3 log2(1/ε))`.
pub fn formula_synthesis_cost<T: Real>(epsilon: T) -> Result<u64> {
    if !(epsilon > T::zero() && epsilon < T::one()) {
        return Err(Error::Domain(format!(
            "synthesis accuracy must lie in (0, 1), got {epsilon}"
        )));
    }
    let three = T::from_f64_lossy(3.0);
    let cost = (three * epsilon.recip().log2()).ceil();
    Ok(cost.to_u64().expect("finite positive cost"))
}

/// T gates to synthesize one rotation to accuracy `epsilon`; the override
/// wins when set.
pub fn rotation_synthesis_cost<T: Real>(epsilon: T, params: &SynthesisParams<T>) -> Result<u64> {
    match params.per_rotation_cost_override {
        Some(cost) => Ok(cost),
        None => formula_synthesis_cost(epsilon),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostLine {
    pub source: String,
    pub count: u64,
    pub t_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub ppr_count: u64,
    pub toffoli_count: u64,
    pub t_from_rotations: u64,
    pub t_from_toffolis: u64,
    pub t_total: u64,
    /// Cost charged per rotation.
    pub per_rotation_t: u64,
    /// What the synthesis formula gives at the configured budget.
    pub formula_per_rotation_t: u64,
    pub override_per_rotation_t: Option<u64>,
    pub toffoli_t: u64,
    pub breakdown: Vec<CostLine>,
}

impl CostReport {
    pub fn empty<T: Real>(params: &SynthesisParams<T>) -> Result<Self> {
        Ok(CostReport {
            ppr_count: 0,
            toffoli_count: 0,
            t_from_rotations: 0,
            t_from_toffolis: 0,
            t_total: 0,
            per_rotation_t: params.per_rotation_cost()?,
            formula_per_rotation_t: params.formula_cost()?,
            override_per_rotation_t: params.per_rotation_cost_override,
            toffoli_t: params.toffoli_t_cost,
            breakdown: Vec::new(),
        })
    }

    /// Sum two reports priced with the same parameters.
    pub fn combine(&self, other: &CostReport) -> CostReport {
        let mut lines: BTreeMap<String, (u64, u64)> = BTreeMap::new();
        for line in self.breakdown.iter().chain(&other.breakdown) {
            let slot = lines.entry(line.source.clone()).or_default();
            slot.0 += line.count;
            slot.1 += line.t_count;
        }
        CostReport {
            ppr_count: self.ppr_count + other.ppr_count,
            toffoli_count: self.toffoli_count + other.toffoli_count,
            t_from_rotations: self.t_from_rotations + other.t_from_rotations,
            t_from_toffolis: self.t_from_toffolis + other.t_from_toffolis,
            t_total: self.t_total + other.t_total,
            breakdown: lines
                .into_iter()
                .map(|(source, (count, t_count))| CostLine {
                    source,
                    count,
                    t_count,
                })
                .collect(),
            ..self.clone()
        }
    }
}

pub fn cost_report<T: Real>(
    circuit: &Circuit<T>,
    params: &SynthesisParams<T>,
) -> Result<CostReport> {
    let mut report = CostReport::empty(params)?;
    let census = circuit.census();
    let per_rotation = report.per_rotation_t;
    let toffoli_t = params.toffoli_t_cost;

    let mut lines: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    let mut add = |source: String, count: u64, t_count: u64| {
        let slot = lines.entry(source).or_default();
        slot.0 += count;
        slot.1 += t_count;
    };
    let rotations = census.rotations as u64;
    if rotations > 0 {
        add("rotation".into(), rotations, rotations * per_rotation);
    }
    if census.toffolis > 0 {
        let n = census.toffolis as u64;
        add("toffoli".into(), n, n * toffoli_t);
    }
    let mut toffolis = census.toffolis as u64;
    for &controls in &census.multi_controlled {
        let n = mcz_toffoli_count(controls) as u64;
        toffolis += n;
        add(format!("mcz{controls}"), 1, n * toffoli_t);
    }

    report.ppr_count = rotations;
    report.toffoli_count = toffolis;
    report.t_from_rotations = rotations * per_rotation;
    report.t_from_toffolis = toffolis * toffoli_t;
    report.t_total = report.t_from_rotations + report.t_from_toffolis;
    report.breakdown = lines
        .into_iter()
        .map(|(source, (count, t_count))| CostLine {
            source,
            count,
            t_count,
        })
        .collect();
    Ok(report)
}

/// `naive.t_total / gadget.t_total`.
pub fn compare(naive: &CostReport, gadget: &CostReport) -> Result<f64> {
    if naive.t_total == 0 || gadget.t_total == 0 {
        return Err(Error::DivisionByZero(
            "both reports need a positive T total".into(),
        ));
    }
    Ok(naive.t_total as f64 / gadget.t_total as f64)
}

/// Format with four significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}
