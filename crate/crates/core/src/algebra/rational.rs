use std::fmt;
use std::str::FromStr;

use super::poly::{poly_div_exact, LaurentPoly};
use super::AlgebraError;

/// Quotient of Laurent polynomials. Never reduced by a GCD; equality is by
/// cross-multiplication.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(RationalFn { num, den }.simplified())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    /// The polynomial, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn { num: &self.num * &other.num, den: &self.den * &other.den }.simplified()
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        if self.den == other.den {
            return RationalFn { num: &self.num + &other.num, den: self.den.clone() }.simplified();
        }
        RationalFn {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
        .simplified()
    }

    pub fn inv(&self) -> Result<RationalFn, AlgebraError> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFn) -> Result<RationalFn, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow_i(&self, k: i32) -> Result<RationalFn, AlgebraError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RationalFn::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Replaces `num/den` by an exact quotient when one exists.
    fn simplified(self) -> RationalFn {
        if self.den.is_one() {
            return self;
        }
        match poly_div_exact(&self.num, &self.den) {
            Ok(q) => RationalFn { num: q, den: LaurentPoly::one() },
            Err(_) => self,
        }
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        RationalFn { num: p, den: LaurentPoly::one() }
    }
}

/// `num1 * den2 == num2 * den1`.
pub fn frac_eq(a: &RationalFn, b: &RationalFn) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        frac_eq(self, other)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl FromStr for RationalFn {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let strip = |t: &str| -> String {
            let t = t.trim();
            t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t).to_string()
        };
        match s.split_once(") / (") {
            Some((n, d)) => RationalFn::new(strip(&format!("{n})")).parse()?, strip(&format!("({d}")).parse()?),
            None => Ok(s.parse::<LaurentPoly>()?.into()),
        }
    }
}

impl serde::Serialize for RationalFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for RationalFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
