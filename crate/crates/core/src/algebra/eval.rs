use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use super::gf216::Gf216;
use super::poly::LaurentPoly;
use super::rational::RationalFn;
use super::var::{Monomial, Var};
use super::AlgebraError;

/// An assignment of field values to variables.
pub type Point = BTreeMap<Var, Gf216>;

const MAX_ATTEMPTS: usize = 1000;

pub fn monomial_eval(m: &Monomial, pt: &Point) -> Result<Gf216, AlgebraError> {
    let mut acc = Gf216::ONE;
    for &(v, e) in m.pairs() {
        let x = *pt.get(&v).ok_or(AlgebraError::MissingVariable(v))?;
        if v.invertible() && x.is_zero() {
            return Err(AlgebraError::ZeroAtInvertible(v));
        }
        acc *= x.pow(e as i64).ok_or(AlgebraError::ZeroAtInvertible(v))?;
    }
    Ok(acc)
}

pub fn poly_eval(p: &LaurentPoly, pt: &Point) -> Result<Gf216, AlgebraError> {
    p.terms().try_fold(Gf216::ZERO, |acc, m| Ok(acc + monomial_eval(m, pt)?))
}

/// Value of a rational function; a vanishing denominator is an error.
pub fn rational_eval(r: &RationalFn, pt: &Point) -> Result<Gf216, AlgebraError> {
    let d = poly_eval(r.den(), pt)?;
    if d.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(poly_eval(r.num(), pt)? / d)
}

fn sample(v: Var, rng: &mut impl Rng) -> Gf216 {
    if v.invertible() {
        Gf216(rng.gen_range(1..=u16::MAX))
    } else {
        Gf216(rng.gen())
    }
}

/// Uniform point with invertible variables nonzero and every `avoid`
/// polynomial nonzero. Gives up after a bounded number of draws.
pub fn random_point(
    vars: &BTreeSet<Var>,
    rng: &mut impl Rng,
    avoid: &[LaurentPoly],
) -> Result<Point, AlgebraError> {
    let mut all = vars.clone();
    for p in avoid {
        all.extend(p.vars());
    }
    for _ in 0..MAX_ATTEMPTS {
        let pt: Point = all.iter().map(|&v| (v, sample(v, rng))).collect();
        let ok = avoid
            .iter()
            .all(|p| poly_eval(p, &pt).map(|x| !x.is_zero()).unwrap_or(false));
        if ok {
            return Ok(pt);
        }
    }
    Err(AlgebraError::SamplingExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        let pt = Point::from([(Var::t(1), Gf216(77))]);
        assert_eq!(poly_eval(&LaurentPoly::zero(), &pt).unwrap(), Gf216::ZERO);
        assert_eq!(poly_eval(&lp("t1 t1^-1"), &pt).unwrap(), Gf216::ONE);
        let p = lp("t1^2 + t1^-1");
        assert_eq!(poly_eval(&(&p + &p), &pt).unwrap(), Gf216::ZERO);
    }

    #[test]
    fn eval_errors() {
        let pt = Point::from([(Var::t(1), Gf216::ZERO)]);
        assert_eq!(poly_eval(&lp("t1"), &pt), Err(AlgebraError::ZeroAtInvertible(Var::t(1))));
        assert_eq!(poly_eval(&lp("b2"), &pt), Err(AlgebraError::MissingVariable(Var::b(2))));
    }

    #[test]
    fn random_point_respects_avoid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let vars = BTreeSet::from([Var::b(1), Var::t(1)]);
        let pt = random_point(&vars, &mut rng, &[]).unwrap();
        assert!(!pt[&Var::t(1)].is_zero());
        let pt = random_point(&vars, &mut rng, &[lp("b1")]).unwrap();
        assert!(!pt[&Var::b(1)].is_zero());
        assert_eq!(
            random_point(&vars, &mut rng, &[LaurentPoly::zero()]),
            Err(AlgebraError::SamplingExhausted)
        );
    }
}
