//! Free GF(2)-algebra on chords and invertible markers, modulo `g g⁻¹ = 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{fmt_factor, parse_factors, AlgebraError, LaurentPoly, Monomial, PolyMatrix, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("level {i} out of range for {n} strands")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("{0} is not invertible")]
    NotInvertible(Var),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A generator or its formal inverse. Positive letters sort first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub var: Var,
    pub inv: bool,
}

impl Letter {
    pub fn pos(var: Var) -> Self {
        Letter { var, inv: false }
    }

    pub fn neg(var: Var) -> Self {
        Letter { var, inv: true }
    }

    fn cancels(self, other: Letter) -> bool {
        self.var == other.var && self.inv != other.inv
    }
}

/// A reduced word: no adjacent `g g⁻¹` or `g⁻¹ g`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NCWord(Vec<Letter>);

impl NCWord {
    pub fn empty() -> Self {
        NCWord(Vec::new())
    }

    /// Reduces by stack cancellation. Inverse letters on non-invertible
    /// variables are rejected.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Result<Self, NcError> {
        let mut w = NCWord::empty();
        for l in letters {
            if l.inv && !l.var.invertible() {
                return Err(NcError::NotInvertible(l.var));
            }
            w.push(l);
        }
        Ok(w)
    }

    fn push(&mut self, l: Letter) {
        match self.0.last() {
            Some(&last) if last.cancels(l) => {
                self.0.pop();
            }
            _ => self.0.push(l),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &NCWord) -> NCWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn abelianize(&self) -> Monomial {
        Monomial::new(self.0.iter().map(|l| (l.var, if l.inv { -1 } else { 1 })))
            .expect("inverse letters only on invertible variables")
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            fmt_factor(f, l.var, if l.inv { -1 } else { 1 })?;
        }
        Ok(())
    }
}

/// GF(2)-span of reduced words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    words: BTreeSet<NCWord>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(NCWord::empty())
    }

    pub fn var(v: Var) -> Self {
        Self::from_word(NCWord(vec![Letter::pos(v)]))
    }

    /// `v⁻¹` for an invertible variable.
    pub fn inv_var(v: Var) -> Result<Self, NcError> {
        Ok(Self::from_word(NCWord::new([Letter::neg(v)])?))
    }

    pub fn from_word(w: NCWord) -> Self {
        NCPoly { words: BTreeSet::from([w]) }
    }

    fn toggle(&mut self, w: NCWord) {
        if !self.words.remove(&w) {
            self.words.insert(w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words.iter().next().unwrap().is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &NCWord> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Image in the commutative ring.
    pub fn abelianize(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.words.iter().map(NCWord::abelianize))
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;

    fn add(self, rhs: &NCPoly) -> NCPoly {
        NCPoly { words: self.words.symmetric_difference(&rhs.words).cloned().collect() }
    }
}

impl Add for NCPoly {
    type Output = NCPoly;

    fn add(mut self, rhs: NCPoly) -> NCPoly {
        self += rhs;
        self
    }
}

impl AddAssign for NCPoly {
    fn add_assign(&mut self, rhs: NCPoly) {
        for w in rhs.words {
            self.toggle(w);
        }
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;

    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for a in &self.words {
            for b in &rhs.words {
                out.toggle(a.concat(b));
            }
        }
        out
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;

    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl From<Var> for NCPoly {
    fn from(v: Var) -> Self {
        NCPoly::var(v)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return write!(f, "0");
        }
        for (k, w) in self.words.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for NCPoly {
    type Err = NcError;

    /// Factor order is kept; `x^k` expands to `|k|` copies of `x` or `x⁻¹`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(NCPoly::zero());
        }
        let mut out = NCPoly::zero();
        for term in s.split('+') {
            let mut letters = Vec::new();
            for (v, e) in parse_factors(term)? {
                let l = Letter { var: v, inv: e < 0 };
                letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
            }
            out.toggle(NCWord::new(letters)?);
        }
        Ok(out)
    }
}

impl serde::Serialize for NCPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for NCPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Which strict triangle `nc_truncate` keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// Square matrix of non-commutative polynomials, 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCMatrix {
    n: usize,
    entries: Vec<NCPoly>,
}

impl NCMatrix {
    pub fn zeros(n: usize) -> Self {
        NCMatrix { n, entries: vec![NCPoly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, NCPoly::one());
        }
        m
    }

    fn block(i: usize, n: usize, a: NCPoly, d: NCPoly) -> Result<Self, NcError> {
        if i == 0 || i >= n {
            return Err(NcError::IndexOutOfRange { i, n });
        }
        let mut m = Self::identity(n);
        m.set(i - 1, i - 1, a);
        m.set(i - 1, i, NCPoly::one());
        m.set(i, i - 1, NCPoly::one());
        m.set(i, i, d);
        Ok(m)
    }

    /// `Z_i(x)` with block `[[x, 1], [1, 0]]` at 1-based level `i`.
    pub fn z(i: usize, x: NCPoly, n: usize) -> Result<Self, NcError> {
        Self::block(i, n, x, NCPoly::zero())
    }

    /// `Z_i(x)⁻¹` with block `[[0, 1], [1, x]]`.
    pub fn z_inv(i: usize, x: NCPoly, n: usize) -> Result<Self, NcError> {
        Self::block(i, n, NCPoly::zero(), x)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &NCPoly {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: NCPoly) {
        self.entries[r * self.n + c] = x;
    }

    pub fn mul(&self, other: &NCMatrix) -> NCMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut out = NCMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = NCPoly::zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &NCMatrix) -> NCMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        NCMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    /// Strictly upper or strictly lower part.
    pub fn truncate(&self, side: Side) -> NCMatrix {
        let mut out = NCMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let keep = match side {
                    Side::Upper => i < j,
                    Side::Lower => i > j,
                };
                if keep {
                    out.set(i, j, self.get(i, j).clone());
                }
            }
        }
        out
    }

    pub fn diagonal(&self) -> NCMatrix {
        let mut out = NCMatrix::zeros(self.n);
        for i in 0..self.n {
            out.set(i, i, self.get(i, i).clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NCPoly::is_zero)
    }

    pub fn abelianize(&self) -> PolyMatrix {
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abelianize()).collect())
            .collect();
        PolyMatrix::from_rows(rows).expect("square")
    }
}

impl fmt::Display for NCMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
