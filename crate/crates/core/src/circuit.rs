//! Gate-level circuit representation shared by the compilers, the cost
//! model and the verifier.
//!
//! Register layout: system qubits `0..M`, then the control ancilla (if
//! any) at `M`, then the dirty ancillae. In text form ancillae are written
//! `a0, a1, ...` counting from `M`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pauli::Letters;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Fires on `|1>`.
    Closed,
    /// Fires on `|0>`.
    Open,
}

impl Polarity {
    pub fn fires_on(bit: bool) -> Self {
        if bit {
            Polarity::Closed
        } else {
            Polarity::Open
        }
    }

    pub fn matches(self, bit: bool) -> bool {
        bit == (self == Polarity::Closed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate<T> {
    PauliX(usize),
    Hadamard(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Cz(usize, usize),
    Toffoli {
        c1: usize,
        c2: usize,
        target: usize,
    },
    /// Z on `target` conditioned on every control matching its polarity.
    /// `dirty` lists borrowed qubits available to its decomposition.
    MultiControlledZ {
        controls: Vec<(usize, Polarity)>,
        target: usize,
        dirty: Vec<usize>,
    },
    /// `exp(i * angle * axis)`. An identity axis is a global phase.
    Rotation {
        axis: Letters,
        angle: T,
    },
}

/// Bring an angle into `(-2π, 2π]`.
pub fn normalize_angle<T: Real>(angle: T) -> T {
    let two_pi = T::PI() + T::PI();
    let a = angle % two_pi;
    if a <= -two_pi {
        a + two_pi
    } else {
        a
    }
}

impl<T: Real> Gate<T> {
    pub fn rotation(axis: Letters, angle: T) -> Self {
        Gate::Rotation {
            axis,
            angle: normalize_angle(angle),
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::PauliX(t) | Gate::Hadamard(t) => vec![*t],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Cz(a, b) => vec![*a, *b],
            Gate::Toffoli { c1, c2, target } => vec![*c1, *c2, *target],
            Gate::MultiControlledZ {
                controls,
                target,
                dirty,
            } => controls
                .iter()
                .map(|(q, _)| *q)
                .chain(std::iter::once(*target))
                .chain(dirty.iter().copied())
                .collect(),
            Gate::Rotation { axis, .. } => axis.iter().map(|(q, _)| q).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Gate::Rotation { axis, angle } => Gate::rotation(axis.clone(), -*angle),
            other => other.clone(),
        }
    }

    fn validate(&self, width: usize) -> Result<()> {
        let qubits = self.qubits();
        let mut sorted = qubits.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != qubits.len() {
            return Err(Error::InvalidGate(format!("repeated qubit in {self:?}")));
        }
        if let Some(&q) = sorted.last() {
            if q >= width {
                return Err(Error::InvalidGate(format!(
                    "qubit {q} outside register of {width}"
                )));
            }
        }
        if let Gate::Rotation { angle, .. } = self {
            if !angle.is_finite() {
                return Err(Error::InvalidGate("non-finite rotation angle".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T> {
    pub system_width: usize,
    pub has_control_ancilla: bool,
    pub dirty_ancilla_count: usize,
    gates: Vec<Gate<T>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    /// Rotations with a non-identity axis.
    pub rotations: usize,
    /// Identity-axis rotations, i.e. global phases.
    pub global_phases: usize,
    pub toffolis: usize,
    /// Control count of every multi-controlled Z, in circuit order.
    pub multi_controlled: Vec<usize>,
    pub cliffords: usize,
}

impl<T: Real> Circuit<T> {
    pub fn new(system_width: usize, has_control_ancilla: bool, dirty_ancilla_count: usize) -> Self {
        Circuit {
            system_width,
            has_control_ancilla,
            dirty_ancilla_count,
            gates: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.system_width + self.has_control_ancilla as usize + self.dirty_ancilla_count
    }

    pub fn control_qubit(&self) -> Option<usize> {
        self.has_control_ancilla.then_some(self.system_width)
    }

    pub fn dirty_qubits(&self) -> Vec<usize> {
        let first = self.system_width + self.has_control_ancilla as usize;
        (first..first + self.dirty_ancilla_count).collect()
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate<T>) -> Result<()> {
        gate.validate(self.width())?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate<T>>>(&mut self, gates: I) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.push(g))
    }

    fn same_shape(&self, other: &Self) -> bool {
        self.system_width == other.system_width
            && self.has_control_ancilla == other.has_control_ancilla
            && self.dirty_ancilla_count == other.dirty_ancilla_count
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !self.same_shape(other) {
            return Err(Error::ShapeMismatch(format!(
                "{} vs {}",
                self.header(),
                other.header()
            )));
        }
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }

    pub fn inverse(&self) -> Self {
        Circuit {
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            ..self.clone()
        }
    }

    pub fn census(&self) -> Census {
        let mut census = Census::default();
        for gate in &self.gates {
            match gate {
                Gate::Rotation { axis, .. } if axis.is_identity() => census.global_phases += 1,
                Gate::Rotation { .. } => census.rotations += 1,
                Gate::Toffoli { .. } => census.toffolis += 1,
                Gate::MultiControlledZ { controls, .. } => {
                    census.multi_controlled.push(controls.len())
                }
                Gate::PauliX(_) | Gate::Hadamard(_) | Gate::Cnot { .. } | Gate::Cz(..) => {
                    census.cliffords += 1
                }
            }
        }
        census
    }

    /// Replace every multi-controlled Z by its Toffoli-level decomposition.
    pub fn lowered(&self) -> Result<Self> {
        let mut out = Circuit {
            gates: Vec::new(),
            ..self.clone()
        };
        for gate in &self.gates {
            match gate {
                Gate::MultiControlledZ { dirty, .. } => {
                    let dirty = dirty.clone();
                    out.extend(crate::gadget::decompose_mcz(gate, &dirty)?)?
                }
                other => out.push(other.clone())?,
            }
        }
        Ok(out)
    }

    fn header(&self) -> String {
        format!(
            "circuit M={} control={} dirty={}",
            self.system_width, self.has_control_ancilla as u8, self.dirty_ancilla_count
        )
    }

    fn qubit_name(&self, q: usize) -> String {
        if q < self.system_width {
            q.to_string()
        } else {
            format!("a{}", q - self.system_width)
        }
    }

    fn parse_qubit(&self, token: &str) -> std::result::Result<usize, String> {
        let q = match token.strip_prefix('a') {
            Some(rest) => {
                self.system_width
                    + rest
                        .parse::<usize>()
                        .map_err(|_| format!("bad qubit `{token}`"))?
            }
            None => token
                .parse::<usize>()
                .map_err(|_| format!("bad qubit `{token}`"))?,
        };
        if q >= self.width() {
            return Err(format!("qubit `{token}` outside register"));
        }
        Ok(q)
    }

    fn gate_line(&self, gate: &Gate<T>) -> String {
        let n = |q: &usize| self.qubit_name(*q);
        match gate {
            Gate::PauliX(t) => format!("X {}", n(t)),
            Gate::Hadamard(t) => format!("H {}", n(t)),
            Gate::Cnot { control, target } => format!("CNOT {} {}", n(control), n(target)),
            Gate::Cz(a, b) => format!("CZ {} {}", n(a), n(b)),
            Gate::Toffoli { c1, c2, target } => format!("TOFF {} {} {}", n(c1), n(c2), n(target)),
            Gate::MultiControlledZ {
                controls,
                target,
                dirty,
            } => {
                let mut line = String::from("MCZ");
                for (q, pol) in controls {
                    let mark = if *pol == Polarity::Closed { '+' } else { '-' };
                    line.push_str(&format!(" {mark}{}", n(q)));
                }
                line.push_str(&format!(" : {}", n(target)));
                if !dirty.is_empty() {
                    line.push_str(" dirty");
                    for d in dirty {
                        line.push_str(&format!(" {}", n(d)));
                    }
                }
                line
            }
            Gate::Rotation { axis, angle } => {
                if axis.is_identity() {
                    format!("ROT {angle}")
                } else {
                    let letters: Vec<String> = axis
                        .iter()
                        .map(|(q, p)| format!("{}{}", p.symbol(), self.qubit_name(q)))
                        .collect();
                    format!("ROT {angle} {}", letters.join(" "))
                }
            }
        }
    }

    fn parse_gate(&self, line: &str) -> std::result::Result<Gate<T>, String> {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let q = |i: usize| -> std::result::Result<usize, String> {
            let token = tokens
                .get(i)
                .ok_or_else(|| format!("missing operand in `{line}`"))?;
            self.parse_qubit(token)
        };
        let arity = |n: usize| -> std::result::Result<(), String> {
            if tokens.len() != n + 1 {
                return Err(format!("`{}` takes {n} operands", tokens[0]));
            }
            Ok(())
        };
        let gate = match tokens[0] {
            "X" => {
                arity(1)?;
                Gate::PauliX(q(1)?)
            }
            "H" => {
                arity(1)?;
                Gate::Hadamard(q(1)?)
            }
            "CNOT" => {
                arity(2)?;
                Gate::Cnot {
                    control: q(1)?,
                    target: q(2)?,
                }
            }
            "CZ" => {
                arity(2)?;
                Gate::Cz(q(1)?, q(2)?)
            }
            "TOFF" => {
                arity(3)?;
                Gate::Toffoli {
                    c1: q(1)?,
                    c2: q(2)?,
                    target: q(3)?,
                }
            }
            "MCZ" => {
                let colon = tokens
                    .iter()
                    .position(|t| *t == ":")
                    .ok_or("MCZ needs ` : target`")?;
                let mut controls = Vec::new();
                for token in &tokens[1..colon] {
                    let (pol, rest) = match token.split_at(1) {
                        ("+", rest) => (Polarity::Closed, rest),
                        ("-", rest) => (Polarity::Open, rest),
                        _ => return Err(format!("control `{token}` needs +/- polarity")),
                    };
                    controls.push((self.parse_qubit(rest)?, pol));
                }
                let target = q(colon + 1)?;
                let dirty = match tokens.get(colon + 2) {
                    None => Vec::new(),
                    Some(&"dirty") => tokens[colon + 3..]
                        .iter()
                        .map(|t| self.parse_qubit(t))
                        .collect::<std::result::Result<_, _>>()?,
                    Some(other) => return Err(format!("unexpected `{other}` after MCZ target")),
                };
                Gate::MultiControlledZ {
                    controls,
                    target,
                    dirty,
                }
            }
            "ROT" => {
                let angle_text = tokens.get(1).ok_or("ROT needs an angle")?;
                let angle: T = angle_text
                    .parse()
                    .map_err(|_| format!("bad angle `{angle_text}`"))?;
                let mut pairs = Vec::new();
                for token in &tokens[2..] {
                    let (letter, rest) = token.split_at(1);
                    let pauli = match letter {
                        "X" => crate::pauli::Pauli::X,
                        "Y" => crate::pauli::Pauli::Y,
                        "Z" => crate::pauli::Pauli::Z,
                        _ => return Err(format!("bad pauli `{token}`")),
                    };
                    pairs.push((self.parse_qubit(rest)?, pauli));
                }
                Gate::Rotation {
                    axis: Letters::from_pairs(pairs),
                    angle,
                }
            }
            other => return Err(format!("unknown gate `{other}`")),
        };
        Ok(gate)
    }
}

impl<T: Real> fmt::Display for Circuit<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header())?;
        for gate in &self.gates {
            writeln!(f, "{}", self.gate_line(gate))?;
        }
        Ok(())
    }
}

impl<T: Real> FromStr for Circuit<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, message: String| Error::Parse { line, message };
        let (line, header) = lines.next().ok_or_else(|| err(0, "empty circuit".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let value = |key: &str| -> Result<usize> {
            fields
                .iter()
                .find_map(|f| f.strip_prefix(key))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err(line, format!("header needs `{key}<n>`")))
        };
        if fields.first() != Some(&"circuit") {
            return Err(err(
                line,
                "expected `circuit M=.. control=.. dirty=..`".into(),
            ));
        }
        let mut circuit = Circuit::new(value("M=")?, value("control=")? == 1, value("dirty=")?);
        for (line, text) in lines {
            let gate = circuit.parse_gate(text).map_err(|m| err(line, m))?;
            circuit.push(gate).map_err(|e| err(line, e.to_string()))?;
        }
        Ok(circuit)
    }
}
