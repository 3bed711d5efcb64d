//! Fermionic Hamiltonian terms: classification into the five supported
//! families, canonical ordering, and the line-oriented input format.
//!
//! Every non-diagonal term stands for itself plus its Hermitian conjugate.
//! Orbital indices are 0-based.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Sign picked up while anticommuting operators into canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of_swap(swapped: bool) -> Self {
        if swapped {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_real<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, other: Sign) -> Sign {
        Sign::of_swap(self != other)
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A single creation (`dagger`) or annihilation operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ladder {
    pub index: usize,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(index: usize) -> Self {
        Ladder {
            index,
            dagger: true,
        }
    }

    pub fn annihilate(index: usize) -> Self {
        Ladder {
            index,
            dagger: false,
        }
    }
}

/// Term family with canonical index layout.
///
/// * `Number(p)`: `a†p ap`.
/// * `Hopping(p, q)`, `p < q`: `a†p aq + h.c.`.
/// * `NumberNumber(p, q)`, `p < q`: `a†p a†q aq ap`.
/// * `NumberExcitation(p, q, r)`, `q < r`, `p` anywhere: `a†p a†q ap ar + h.c.`.
/// * `DoubleExcitation(p, q, r, s)`: `a†p a†q ar as + h.c.` with `p < q`,
///   `r < s` and `p` the smallest of the four. The common case is
///   `p < q < r < s`; interleaved orderings such as `p < r < q < s` are
///   accepted as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Number(usize),
    Hopping(usize, usize),
    NumberNumber(usize, usize),
    NumberExcitation(usize, usize, usize),
    DoubleExcitation(usize, usize, usize, usize),
}

impl Family {
    /// Canonical operator product, leftmost operator first.
    pub fn operators(&self) -> Vec<Ladder> {
        use Ladder as L;
        match *self {
            Family::Number(p) => vec![L::create(p), L::annihilate(p)],
            Family::Hopping(p, q) => vec![L::create(p), L::annihilate(q)],
            Family::NumberNumber(p, q) => {
                vec![
                    L::create(p),
                    L::create(q),
                    L::annihilate(q),
                    L::annihilate(p),
                ]
            }
            Family::NumberExcitation(p, q, r) => {
                vec![
                    L::create(p),
                    L::create(q),
                    L::annihilate(p),
                    L::annihilate(r),
                ]
            }
            Family::DoubleExcitation(p, q, r, s) => {
                vec![
                    L::create(p),
                    L::create(q),
                    L::annihilate(r),
                    L::annihilate(s),
                ]
            }
        }
    }

    pub fn creations(&self) -> Vec<usize> {
        self.operators()
            .iter()
            .filter(|l| l.dagger)
            .map(|l| l.index)
            .collect()
    }

    pub fn annihilations(&self) -> Vec<usize> {
        self.operators()
            .iter()
            .filter(|l| !l.dagger)
            .map(|l| l.index)
            .collect()
    }

    /// True for the families whose operator is Hermitian on its own.
    pub fn is_diagonal(&self) -> bool {
        matches!(self, Family::Number(_) | Family::NumberNumber(..))
    }

    pub fn max_index(&self) -> usize {
        self.operators().iter().map(|l| l.index).max().unwrap_or(0)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Number(_) => "Number",
            Family::Hopping(..) => "Hopping",
            Family::NumberNumber(..) => "NumberNumber",
            Family::NumberExcitation(..) => "NumberExcitation",
            Family::DoubleExcitation(..) => "DoubleExcitation",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Number(p) => write!(f, "Number({p})"),
            Family::Hopping(p, q) => write!(f, "Hopping({p},{q})"),
            Family::NumberNumber(p, q) => write!(f, "NumberNumber({p},{q})"),
            Family::NumberExcitation(p, q, r) => write!(f, "NumberExcitation({p},{q},{r})"),
            Family::DoubleExcitation(p, q, r, s) => {
                write!(f, "DoubleExcitation({p},{q},{r},{s})")
            }
        }
    }
}

/// A canonical Hamiltonian term. The represented operator is
/// `coefficient * sign * (family operator [+ h.c.])`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionTerm<T> {
    pub family: Family,
    pub coefficient: T,
    pub sign: Sign,
    pub num_orbitals: usize,
}

impl<T: Real> FermionTerm<T> {
    pub fn new(family: Family, coefficient: T, num_orbitals: usize) -> Result<Self> {
        let term = FermionTerm {
            family,
            coefficient,
            sign: Sign::Plus,
            num_orbitals,
        };
        let creations = family.creations();
        let annihilations = family.annihilations();
        let canonical = classify_raw(&creations, &annihilations, coefficient, num_orbitals)?;
        if canonical.family != family || canonical.sign != Sign::Plus {
            return Err(Error::UnclassifiableTerm(format!(
                "{family} is not in canonical form"
            )));
        }
        Ok(term)
    }

    /// `coefficient * sign`.
    pub fn weight(&self) -> T {
        self.coefficient * self.sign.to_real()
    }

    /// One record line in the input format that parses back to this term,
    /// sign included.
    pub fn to_record(&self) -> String {
        let mut creations = self.family.creations();
        let annihilations = self.family.annihilations();
        if self.sign == Sign::Minus {
            // only reachable for two-creation families
            creations.swap(0, 1);
        }
        let keyword = if creations.len() == 1 { "two" } else { "four" };
        let indices: Vec<String> = creations
            .iter()
            .chain(&annihilations)
            .map(|i| i.to_string())
            .collect();
        format!("{keyword} {} {}", indices.join(" "), self.coefficient)
    }
}

impl<T: Real> fmt::Display for FermionTerm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} coeff {} sign {}",
            self.family, self.coefficient, self.sign
        )
    }
}

fn check_range(indices: &[usize], num_orbitals: usize) -> Result<()> {
    match indices.iter().find(|&&i| i >= num_orbitals) {
        Some(&index) => Err(Error::IndexOutOfRange {
            index,
            num_orbitals,
        }),
        None => Ok(()),
    }
}

/// Classify a raw product `a†c1 [a†c2] ad1 [ad2]` and bring it to canonical
/// form, returning the anticommutation sign of the reordering.
pub fn classify_raw<T: Real>(
    creations: &[usize],
    annihilations: &[usize],
    coefficient: T,
    num_orbitals: usize,
) -> Result<FermionTerm<T>> {
    let describe = || format!("creations {creations:?}, annihilations {annihilations:?}");
    check_range(creations, num_orbitals)?;
    check_range(annihilations, num_orbitals)?;

    let (family, sign) = match (creations, annihilations) {
        (&[c], &[d]) => {
            if c == d {
                (Family::Number(c), Sign::Plus)
            } else {
                // a†c ad and its conjugate form the same pair
                (Family::Hopping(c.min(d), c.max(d)), Sign::Plus)
            }
        }
        (&[c1, c2], &[d1, d2]) => {
            if c1 == c2 || d1 == d2 {
                return Err(Error::UnclassifiableTerm(describe()));
            }
            let shared: Vec<usize> = [c1, c2]
                .into_iter()
                .filter(|c| *c == d1 || *c == d2)
                .collect();
            match shared.len() {
                2 => {
                    let (p, q) = (c1.min(c2), c1.max(c2));
                    // canonical a†p a†q aq ap
                    let sign = Sign::of_swap(c1 != p) * Sign::of_swap(d1 != q);
                    (Family::NumberNumber(p, q), sign)
                }
                1 => {
                    let p = shared[0];
                    let q = if c1 == p { c2 } else { c1 };
                    let r = if d1 == p { d2 } else { d1 };
                    // canonical a†p a†q ap ar; the conjugate reorders with two swaps
                    let sign = Sign::of_swap(c1 != p) * Sign::of_swap(d1 != p);
                    (Family::NumberExcitation(p, q.min(r), q.max(r)), sign)
                }
                _ => {
                    // pick between the product and its conjugate a†d2 a†d1 ac2 ac1
                    let smallest = c1.min(c2).min(d1).min(d2);
                    let (cre, ann) = if smallest == c1 || smallest == c2 {
                        ([c1, c2], [d1, d2])
                    } else {
                        ([d2, d1], [c2, c1])
                    };
                    let sign = Sign::of_swap(cre[0] > cre[1]) * Sign::of_swap(ann[0] > ann[1]);
                    (
                        Family::DoubleExcitation(
                            cre[0].min(cre[1]),
                            cre[0].max(cre[1]),
                            ann[0].min(ann[1]),
                            ann[0].max(ann[1]),
                        ),
                        sign,
                    )
                }
            }
        }
        _ => return Err(Error::UnclassifiableTerm(describe())),
    };
    Ok(FermionTerm {
        family,
        coefficient,
        sign,
        num_orbitals,
    })
}

/// Where a merged term came from: input line and the coefficient as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Source {
    pub line: usize,
    pub coefficient_text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTerm<T> {
    pub term: FermionTerm<T>,
    pub sources: Vec<Source>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian<T> {
    pub num_orbitals: usize,
    pub terms: Vec<ParsedTerm<T>>,
}

impl<T: Real> Hamiltonian<T> {
    pub fn terms(&self) -> impl Iterator<Item = &FermionTerm<T>> {
        self.terms.iter().map(|t| &t.term)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("orbitals {}\n", self.num_orbitals);
        for t in &self.terms {
            out.push_str(&t.term.to_record());
            out.push('\n');
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("bad orbital index `{token}`")))
}

/// Parse one `two`/`four` record. With `coefficient_optional`, a missing
/// trailing coefficient defaults to 1.
fn parse_record<T: Real>(
    tokens: &[&str],
    line: usize,
    num_orbitals: usize,
    coefficient_optional: bool,
) -> Result<(FermionTerm<T>, String)> {
    let n_indices = match tokens.first() {
        Some(&"two") => 2,
        Some(&"four") => 4,
        Some(other) => return Err(parse_err(line, format!("unknown record `{other}`"))),
        None => return Err(parse_err(line, "empty record")),
    };
    let expected = 1 + n_indices + 1;
    let coefficient_text = match tokens.len() {
        n if n == expected => tokens[expected - 1].to_string(),
        n if n == expected - 1 && coefficient_optional => "1".to_string(),
        n => {
            return Err(parse_err(
                line,
                format!(
                    "`{}` expects {} indices and a coefficient, got {} fields",
                    tokens[0],
                    n_indices,
                    n - 1
                ),
            ))
        }
    };
    let indices = tokens[1..=n_indices]
        .iter()
        .map(|t| parse_index(t, line))
        .collect::<Result<Vec<_>>>()?;
    let coefficient: T = coefficient_text
        .parse()
        .map_err(|_| parse_err(line, format!("bad coefficient `{coefficient_text}`")))?;
    if !coefficient.is_finite() {
        return Err(parse_err(
            line,
            format!("non-finite coefficient `{coefficient_text}`"),
        ));
    }
    let half = n_indices / 2;
    let term = classify_raw(
        &indices[..half],
        &indices[half..],
        coefficient,
        num_orbitals,
    )
    .map_err(|e| match e {
        Error::UnclassifiableTerm(_) | Error::IndexOutOfRange { .. } => {
            parse_err(line, e.to_string())
        }
        other => other,
    })?;
    Ok((term, coefficient_text))
}

/// Parse a single term given as `two i j [coeff]` or `four i j k l [coeff]`.
pub fn parse_term<T: Real>(text: &str, num_orbitals: usize) -> Result<FermionTerm<T>> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    parse_record(&tokens, 1, num_orbitals, true).map(|(t, _)| t)
}

/// Parse a Hamiltonian file. Terms that canonicalize to the same family and
/// indices are merged by summing their signed coefficients.
pub fn parse_hamiltonian<T: Real>(input: &str) -> Result<Hamiltonian<T>> {
    let mut num_orbitals: Option<usize> = None;
    let mut terms: Vec<ParsedTerm<T>> = Vec::new();
    let mut seen: HashMap<Family, usize> = HashMap::new();

    for (i, raw_line) in input.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens[0] == "orbitals" {
            if num_orbitals.is_some() {
                return Err(parse_err(line, "duplicate `orbitals` header"));
            }
            if tokens.len() != 2 {
                return Err(parse_err(line, "`orbitals` expects one integer"));
            }
            let m = parse_index(tokens[1], line)?;
            if m == 0 {
                return Err(parse_err(line, "`orbitals` must be positive"));
            }
            num_orbitals = Some(m);
            continue;
        }
        let m = num_orbitals.ok_or_else(|| parse_err(line, "record before `orbitals` header"))?;
        let (term, coefficient_text) = parse_record::<T>(&tokens, line, m, false)?;
        let source = Source {
            line,
            coefficient_text,
        };
        match seen.get(&term.family) {
            Some(&slot) => {
                let existing = &mut terms[slot];
                let relative = term.sign * existing.term.sign;
                existing.term.coefficient =
                    existing.term.coefficient + relative.to_real::<T>() * term.coefficient;
                existing.sources.push(source);
            }
            None => {
                seen.insert(term.family, terms.len());
                terms.push(ParsedTerm {
                    term,
                    sources: vec![source],
                });
            }
        }
    }

    let num_orbitals = num_orbitals.ok_or_else(|| parse_err(0, "missing `orbitals` header"))?;
    Ok(Hamiltonian {
        num_orbitals,
        terms,
    })
}
