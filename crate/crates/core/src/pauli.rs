//! Pauli strings and weighted sums of them.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    /// `self * other = i^k * result`, with `result == None` meaning identity.
    pub fn product(self, other: Pauli) -> (u8, Option<Pauli>) {
        use Pauli::*;
        match (self, other) {
            (X, X) | (Y, Y) | (Z, Z) => (0, None),
            (X, Y) => (1, Some(Z)),
            (Y, Z) => (1, Some(X)),
            (Z, X) => (1, Some(Y)),
            (Y, X) => (3, Some(Z)),
            (Z, Y) => (3, Some(X)),
            (X, Z) => (3, Some(Y)),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis; absent qubits carry identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letters(BTreeMap<usize, Pauli>);

impl Letters {
    pub fn identity() -> Self {
        Letters(BTreeMap::new())
    }

    pub fn single(qubit: usize, pauli: Pauli) -> Self {
        Letters(BTreeMap::from([(qubit, pauli)]))
    }

    /// `Z` on every listed qubit.
    pub fn z_string<I: IntoIterator<Item = usize>>(qubits: I) -> Self {
        Letters(qubits.into_iter().map(|q| (q, Pauli::Z)).collect())
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Pauli)>>(pairs: I) -> Self {
        Letters(pairs.into_iter().collect())
    }

    pub fn get(&self, qubit: usize) -> Option<Pauli> {
        self.0.get(&qubit).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Pauli)> + '_ {
        self.0.iter().map(|(&q, &p)| (q, p))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn max_qubit(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    /// Returns `(k, letters)` with `self * other = i^k * letters`.
    pub fn product(&self, other: &Letters) -> (u8, Letters) {
        let mut out = self.0.clone();
        let mut phase = 0u8;
        for (&q, &b) in &other.0 {
            match out.get(&q).copied() {
                None => {
                    out.insert(q, b);
                }
                Some(a) => {
                    let (k, r) = a.product(b);
                    phase = (phase + k) % 4;
                    match r {
                        Some(r) => {
                            out.insert(q, r);
                        }
                        None => {
                            out.remove(&q);
                        }
                    }
                }
            }
        }
        (phase, Letters(out))
    }

    pub fn commutes_with(&self, other: &Letters) -> bool {
        let clashes = self
            .0
            .iter()
            .filter(|(q, a)| other.0.get(q).is_some_and(|b| b != *a))
            .count();
        clashes % 2 == 0
    }

    /// Bit masks for the action on computational basis states:
    /// `P|x> = i^y_count * (-1)^popcount(x & phase_mask) |x ^ flip_mask>`.
    pub fn masks(&self) -> BasisAction {
        let mut action = BasisAction {
            flip_mask: 0,
            phase_mask: 0,
            y_count: 0,
        };
        for (&q, &p) in &self.0 {
            assert!(q < 64, "qubit {q} outside the 64-bit basis-state range");
            let bit = 1u64 << q;
            match p {
                Pauli::X => action.flip_mask |= bit,
                Pauli::Y => {
                    action.flip_mask |= bit;
                    action.phase_mask |= bit;
                    action.y_count += 1;
                }
                Pauli::Z => action.phase_mask |= bit,
            }
        }
        action
    }
}

impl fmt::Display for Letters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(q, p)| format!("{}{q}", p.symbol()))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl std::str::FromStr for Letters {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut letters = BTreeMap::new();
        for token in s.split_whitespace() {
            if token == "I" {
                continue;
            }
            let mut chars = token.chars();
            let pauli = match chars.next() {
                Some('X') => Pauli::X,
                Some('Y') => Pauli::Y,
                Some('Z') => Pauli::Z,
                _ => return Err(format!("bad pauli letter `{token}`")),
            };
            let qubit: usize = chars
                .as_str()
                .parse()
                .map_err(|_| format!("bad qubit in `{token}`"))?;
            if letters.insert(qubit, pauli).is_some() {
                return Err(format!("qubit {qubit} repeated"));
            }
        }
        Ok(Letters(letters))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisAction {
    pub flip_mask: u64,
    pub phase_mask: u64,
    pub y_count: u32,
}

impl BasisAction {
    /// Image of basis state `x`: `(i^k, y)` as the power `k` and the index `y`.
    pub fn apply(&self, x: u64) -> (u32, u64) {
        let sign = (x & self.phase_mask).count_ones() % 2;
        ((self.y_count + 2 * sign) % 4, x ^ self.flip_mask)
    }
}

pub fn i_power<T: Real>(k: u32) -> Complex<T> {
    match k % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliString<T> {
    pub coefficient: Complex<T>,
    pub letters: Letters,
}

impl<T: Real> fmt::Display for PauliString<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.coefficient.re, self.coefficient.im, self.letters
        )
    }
}

/// Linear combination of distinct Pauli strings over `width` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum<T> {
    width: usize,
    terms: BTreeMap<Letters, Complex<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumOp {
    Add,
    Multiply,
    Commutator,
}

impl<T: Real> PauliSum<T> {
    pub fn zero(width: usize) -> Self {
        PauliSum {
            width,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(width: usize) -> Self {
        Self::from_strings(
            width,
            [(Complex::new(T::one(), T::zero()), Letters::identity())],
        )
        .expect("identity fits any width")
    }

    pub fn from_strings<I>(width: usize, strings: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex<T>, Letters)>,
    {
        let mut sum = PauliSum::zero(width);
        for (c, letters) in strings {
            if let Some(q) = letters.max_qubit() {
                if q >= width {
                    return Err(Error::IndexOutOfRange {
                        index: q,
                        num_orbitals: width,
                    });
                }
            }
            sum.accumulate(letters, c);
        }
        sum.prune();
        Ok(sum)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, letters: &Letters) -> Complex<T> {
        self.terms
            .get(letters)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn iter(&self) -> impl Iterator<Item = PauliString<T>> + '_ {
        self.terms.iter().map(|(l, &c)| PauliString {
            coefficient: c,
            letters: l.clone(),
        })
    }

    fn accumulate(&mut self, letters: Letters, c: Complex<T>) {
        let slot = self
            .terms
            .entry(letters)
            .or_insert_with(|| Complex::new(T::zero(), T::zero()));
        *slot = *slot + c;
    }

    /// Drop strings whose magnitude is negligible relative to the largest one.
    fn prune(&mut self) {
        let max = self
            .terms
            .values()
            .map(|c| c.norm())
            .fold(T::zero(), T::max);
        let cutoff = max * T::prune_tolerance();
        self.terms
            .retain(|_, c| c.norm() > cutoff && *c != Complex::new(T::zero(), T::zero()));
    }

    fn check_width(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch(self.width, other.width));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_width(other)?;
        let mut out = self.clone();
        for (l, &c) in &other.terms {
            out.accumulate(l.clone(), c);
        }
        out.prune();
        Ok(out)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_width(other)?;
        let mut out = PauliSum::zero(self.width);
        for (la, &ca) in &self.terms {
            for (lb, &cb) in &other.terms {
                let (k, l) = la.product(lb);
                out.accumulate(l, ca * cb * i_power::<T>(k as u32));
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.multiply(other)?;
        let ba = other.multiply(self)?;
        ab.add(&ba.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn combine(&self, other: &Self, op: SumOp) -> Result<Self> {
        match op {
            SumOp::Add => self.add(other),
            SumOp::Multiply => self.multiply(other),
            SumOp::Commutator => self.commutator(other),
        }
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        let mut out = PauliSum {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|(l, &c)| (l.clone(), c * factor))
                .collect(),
        };
        out.prune();
        out
    }

    /// Hermitian adjoint. Pauli strings are Hermitian, so only the
    /// coefficients are conjugated.
    pub fn adjoint(&self) -> Self {
        PauliSum {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), c.conj()))
                .collect(),
        }
    }

    /// Largest imaginary part among the coefficients.
    pub fn max_imaginary(&self) -> T {
        self.terms
            .values()
            .map(|c| c.im.abs())
            .fold(T::zero(), T::max)
    }

    pub fn to_text(&self) -> String {
        self.iter().map(|s| format!("{s}\n")).collect()
    }

    /// Inverse of [`PauliSum::to_text`].
    pub fn parse(text: &str, width: usize) -> Result<Self> {
        let mut strings = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let mut fields = line.split_whitespace();
            let (Some(re), Some(im)) = (fields.next(), fields.next()) else {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(Error::Parse {
                    line: line_no,
                    message: "expected `<re> <im> <letters>`".into(),
                });
            };
            let bad = |what: &str| Error::Parse {
                line: line_no,
                message: format!("bad {what}"),
            };
            let re: T = re.parse().map_err(|_| bad("real part"))?;
            let im: T = im.parse().map_err(|_| bad("imaginary part"))?;
            let rest: Vec<&str> = fields.collect();
            let letters: Letters = rest.join(" ").parse().map_err(|e: String| Error::Parse {
                line: line_no,
                message: e,
            })?;
            strings.push((Complex::new(re, im), letters));
        }
        Self::from_strings(width, strings)
    }
}
