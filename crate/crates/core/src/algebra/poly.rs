use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use super::var::{parse_factors, Monomial, Var};
use super::AlgebraError;

/// Laurent polynomial over GF(2), stored as its set of monomials.
///
/// The set is kept in graded lexicographic order, so iteration and the
/// canonical text both list the leading term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeSet<Monomial>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::from_monomial(Monomial::var(v))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        LaurentPoly { terms: BTreeSet::from([m]) }
    }

    /// Sums monomials with GF(2) cancellation of repeats.
    pub fn from_terms(ms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Self::zero();
        for m in ms {
            p.toggle(m);
        }
        p
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().unwrap().is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.iter().next()
    }

    /// The single monomial, if this polynomial has exactly one term.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|m| m.vars()).collect()
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|t| t.mul(m)).collect() }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power; negative exponents need an invertible monomial.
    pub fn pow_i(&self, k: i32) -> Option<LaurentPoly> {
        if k >= 0 {
            Some(self.pow(k as u32))
        } else {
            self.as_monomial()?.pow(k).map(LaurentPoly::from_monomial)
        }
    }

    /// Simultaneous substitution of variables; unmapped variables stay put.
    ///
    /// Fails if a negative power lands on a non-monomial image.
    pub fn substitute(&self, map: &BTreeMap<Var, LaurentPoly>) -> Result<LaurentPoly, AlgebraError> {
        let mut out = LaurentPoly::zero();
        for m in &self.terms {
            let mut keep = Vec::new();
            let mut acc = LaurentPoly::one();
            for &(v, e) in m.pairs() {
                match map.get(&v) {
                    Some(img) => {
                        let f = img.pow_i(e).ok_or(AlgebraError::NonMonomialInverse(v))?;
                        acc = &acc * &f;
                    }
                    None => keep.push((v, e)),
                }
            }
            let rest = Monomial::new(keep)?;
            out += acc.mul_monomial(&rest);
        }
        Ok(out)
    }

    /// Greatest common monomial factor in the invertible variables.
    pub(crate) fn invertible_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.invertible_part(), |acc, m| acc.invertible_min(m))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: self.terms.symmetric_difference(&rhs.terms).cloned().collect() }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += rhs;
        self
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for m in rhs.terms {
            self.toggle(m);
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for m in &rhs.terms {
            self.toggle(m.clone());
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for a in &self.terms {
            for b in &rhs.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v)
    }
}

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> Self {
        LaurentPoly::from_monomial(m)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = AlgebraError;

    /// Accepts the canonical text as well as juxtaposed forms like `b1b3 + 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut out = LaurentPoly::zero();
        for term in s.split('+') {
            out.toggle(Monomial::new(parse_factors(term)?)?);
        }
        Ok(out)
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact division `p / d`, allowing Laurent shifts in invertible variables.
///
/// Monomial content in the invertible variables is split off first, then
/// ordinary graded-lex division runs on the remaining polynomial parts.
pub fn poly_div_exact(p: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    if d.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    if p.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let cp = p.invertible_content();
    let cd = d.invertible_content();
    let cp_inv = cp.inv().expect("content is invertible");
    let cd_inv = cd.inv().expect("content is invertible");
    let mut r = p.mul_monomial(&cp_inv);
    let d0 = d.mul_monomial(&cd_inv);
    let lt = d0.leading().expect("nonzero").clone();
    let mut q = LaurentPoly::zero();
    while let Some(head) = r.leading().cloned() {
        let Some(step) = divides(&head, &lt) else {
            return Err(AlgebraError::NotDivisible);
        };
        r += d0.mul_monomial(&step);
        q.toggle(step);
    }
    Ok(q.mul_monomial(&cp.mul(&cd_inv)))
}

/// `a / b` when every exponent of `b` is at most that of `a`.
fn divides(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    let q = a.div(b)?;
    if q.pairs().iter().all(|&(_, e)| e >= 0) {
        Some(q)
    } else {
        None
    }
}
