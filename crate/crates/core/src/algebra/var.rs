use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Kind of a symbol. The derived order is the variable order used everywhere:
/// all Reeb chords, then markers, then curve variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VarKind {
    /// Degree-0 Reeb chord `b_k`. Not invertible.
    Reeb,
    /// Marked point `t_k`. Invertible.
    Marker,
    /// Marked curve `p_k`. Invertible.
    Curve,
}

impl VarKind {
    pub fn prefix(self) -> char {
        match self {
            VarKind::Reeb => 'b',
            VarKind::Marker => 't',
            VarKind::Curve => 'p',
        }
    }

    fn from_prefix(c: char) -> Option<Self> {
        match c {
            'b' => Some(VarKind::Reeb),
            't' => Some(VarKind::Marker),
            'p' => Some(VarKind::Curve),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var {
    pub kind: VarKind,
    pub index: u32,
}

impl Var {
    pub const fn b(index: u32) -> Self {
        Var { kind: VarKind::Reeb, index }
    }

    pub const fn t(index: u32) -> Self {
        Var { kind: VarKind::Marker, index }
    }

    pub const fn p(index: u32) -> Self {
        Var { kind: VarKind::Curve, index }
    }

    pub fn invertible(self) -> bool {
        self.kind != VarKind::Reeb
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.index)
    }
}

impl FromStr for Var {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let kind = chars
            .next()
            .and_then(VarKind::from_prefix)
            .ok_or_else(|| AlgebraError::Parse(format!("bad variable `{s}`")))?;
        let index = chars
            .as_str()
            .parse::<u32>()
            .map_err(|_| AlgebraError::Parse(format!("bad variable `{s}`")))?;
        Ok(Var { kind, index })
    }
}

/// A commutative monomial: sorted `(var, exponent)` pairs with nonzero exponents.
///
/// Reeb chords only ever carry positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary pairs, merging repeats.
    pub fn new(pairs: impl IntoIterator<Item = (Var, i32)>) -> Result<Self, AlgebraError> {
        let mut v: Vec<(Var, i32)> = pairs.into_iter().collect();
        v.sort_by_key(|&(x, _)| x);
        let mut out: Vec<(Var, i32)> = Vec::with_capacity(v.len());
        for (x, e) in v {
            match out.last_mut() {
                Some((y, f)) if *y == x => *f += e,
                _ => out.push((x, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        if let Some(&(x, e)) = out.iter().find(|&&(x, e)| !x.invertible() && e < 0) {
            return Err(AlgebraError::NegativeExponent(x, e));
        }
        Ok(Monomial(out))
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0
            .binary_search_by_key(&v, |&(x, _)| x)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Inverse, defined only when every variable is invertible.
    pub fn inv(&self) -> Option<Monomial> {
        if self.0.iter().any(|&(v, _)| !v.invertible()) {
            return None;
        }
        Some(Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect()))
    }

    /// `self / other`, if no Reeb exponent goes negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let neg = Monomial(other.0.iter().map(|&(v, e)| (v, -e)).collect());
        let q = self.mul(&neg);
        if q.0.iter().any(|&(v, e)| !v.invertible() && e < 0) {
            None
        } else {
            Some(q)
        }
    }

    pub fn pow(&self, k: i32) -> Option<Monomial> {
        if k < 0 && self.0.iter().any(|&(v, _)| !v.invertible()) {
            return None;
        }
        Some(Monomial(
            self.0
                .iter()
                .filter(|_| k != 0)
                .map(|&(v, e)| (v, e * k))
                .collect(),
        ))
    }

    /// Restriction to the invertible variables.
    pub fn invertible_part(&self) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(v, _)| v.invertible()).collect())
    }

    /// Componentwise minimum over invertible variables (absent counts as 0).
    pub(crate) fn invertible_min(&self, other: &Monomial) -> Monomial {
        let mut vars: Vec<Var> = self
            .vars()
            .chain(other.vars())
            .filter(|v| v.invertible())
            .collect();
        vars.sort();
        vars.dedup();
        Monomial(
            vars.into_iter()
                .map(|v| (v, self.exp(v).min(other.exp(v))))
                .filter(|&(_, e)| e != 0)
                .collect(),
        )
    }
}

/// Graded lexicographic order: higher total degree first, then at the first
/// variable where exponents differ the larger exponent comes first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(&(_, e)), None) => return 0.cmp(&e),
                    (None, Some(&(_, f))) => return f.cmp(&0),
                    (Some(&(x, e)), Some(&(y, f))) => match x.cmp(&y) {
                        Ordering::Less => return 0.cmp(&e),
                        Ordering::Greater => return f.cmp(&0),
                        Ordering::Equal if e != f => return f.cmp(&e),
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn fmt_factor(f: &mut fmt::Formatter<'_>, v: Var, e: i32) -> fmt::Result {
    if e == 1 {
        write!(f, "{v}")
    } else {
        write!(f, "{v}^{e}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            fmt_factor(f, v, e)?;
        }
        Ok(())
    }
}

/// Splits one product term such as `t2 b2^3 p1^-1` or `b1b3` into ordered
/// factors. A bare `1` is the empty product.
pub(crate) fn parse_factors(term: &str) -> Result<Vec<(Var, i32)>, AlgebraError> {
    let bad = || AlgebraError::Parse(format!("bad term `{}`", term.trim()));
    let chars: Vec<char> = term.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut saw_one = false;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' || c == '·' {
            i += 1;
            continue;
        }
        if c == '1' && !chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
            saw_one = true;
            i += 1;
            continue;
        }
        let kind = VarKind::from_prefix(c).ok_or_else(bad)?;
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if start == i {
            return Err(bad());
        }
        let index: u32 = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())?;
        let mut exp = 1i32;
        if chars.get(i) == Some(&'^') {
            i += 1;
            let mut sign = 1;
            if matches!(chars.get(i), Some('-') | Some('−')) {
                sign = -1;
                i += 1;
            }
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if s == i {
                return Err(bad());
            }
            exp = sign * chars[s..i].iter().collect::<String>().parse::<i32>().map_err(|_| bad())?;
        }
        out.push((Var { kind, index }, exp));
    }
    if out.is_empty() && !saw_one {
        return Err(bad());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_order_is_b_then_t_then_p() {
        assert!(Var::b(9) < Var::t(1));
        assert!(Var::t(9) < Var::p(1));
        assert_eq!("p12".parse::<Var>().unwrap(), Var::p(12));
    }

    #[test]
    fn monomial_rejects_negative_reeb() {
        assert!(Monomial::new([(Var::b(1), -1)]).is_err());
        let m = Monomial::new([(Var::t(1), 1), (Var::t(1), -1)]).unwrap();
        assert!(m.is_one());
    }

    #[test]
    fn graded_lex_order() {
        let b = |i| Monomial::var(Var::b(i));
        let b1b2b3 = b(1).mul(&b(2)).mul(&b(3));
        assert!(b1b2b3 < b(1));
        assert!(b(1) < b(3));
        assert!(b(3) < Monomial::one());
        let b1sq = b(1).mul(&b(1));
        assert!(b1sq < b(1).mul(&b(2)));
    }

    #[test]
    fn parse_factors_handles_juxtaposition() {
        let f = parse_factors("b1b3 t1^-1").unwrap();
        assert_eq!(f, vec![(Var::b(1), 1), (Var::b(3), 1), (Var::t(1), -1)]);
        assert!(parse_factors("1").unwrap().is_empty());
        assert!(parse_factors("x1").is_err());
    }
}
