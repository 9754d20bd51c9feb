use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::quiver::{initial_quiver, Quiver};
use super::ClusterError;
use crate::algebra::{random_point, rational_eval, Gf216, LaurentPoly, PolyMatrix, RationalFn, Var};
use crate::braid::BraidWord;

/// Quiver plus one cluster variable per vertex, aligned by position.
#[derive(Debug, Clone)]
pub struct Seed {
    pub quiver: Quiver,
    vars: Vec<RationalFn>,
}

impl Seed {
    pub fn new(quiver: Quiver, vars: Vec<RationalFn>) -> Result<Self, ClusterError> {
        if vars.len() != quiver.len() {
            return Err(ClusterError::Malformed("one variable per vertex".into()));
        }
        Ok(Seed { quiver, vars })
    }

    pub fn var(&self, id: usize) -> Result<&RationalFn, ClusterError> {
        Ok(&self.vars[self.quiver.pos(id)?])
    }

    pub fn vars(&self) -> impl Iterator<Item = (usize, &RationalFn)> {
        self.quiver.vertices().iter().map(|v| v.id).zip(&self.vars)
    }

    /// Ids whose variable is not a polynomial.
    pub fn non_polynomial(&self) -> Vec<usize> {
        self.vars().filter(|(_, r)| r.as_poly().is_none()).map(|(id, _)| id).collect()
    }

    /// Seed mutation. In characteristic 2 the exchange relation reads
    /// `A_k A'_k = ∏_{ε_kj > 0} A_j^{ε_kj} + ∏_{ε_kj < 0} A_j^{-ε_kj}`.
    pub fn mutate(&self, id: usize) -> Result<Seed, ClusterError> {
        let k = self.quiver.check_mutable(id)?;
        let mut plus = RationalFn::one();
        let mut minus = RationalFn::one();
        for j in 0..self.vars.len() {
            let e = self.quiver.eps2_at(k, j) / 2;
            if e > 0 {
                plus = plus.mul(&self.vars[j].pow_i(e)?);
            } else if e < 0 {
                minus = minus.mul(&self.vars[j].pow_i(-e)?);
            }
        }
        let mut vars = self.vars.clone();
        vars[k] = plus.add(&minus).div(&self.vars[k])?;
        Ok(Seed { quiver: self.quiver.mutate(id)?, vars })
    }

    /// Applies `seq[0]` first.
    pub fn apply_mutation_sequence(&self, seq: &[usize]) -> Result<Seed, ClusterError> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// `∏_j A_j^{ε_kj}`.
    pub fn poisson_pullback(&self, id: usize) -> Result<RationalFn, ClusterError> {
        let k = self.quiver.pos(id)?;
        if self.quiver.vertices()[k].frozen {
            return Err(ClusterError::FrozenVertex(id));
        }
        let mut acc = RationalFn::one();
        for j in 0..self.vars.len() {
            let e = self.quiver.eps2_at(k, j) / 2;
            if e != 0 {
                acc = acc.mul(&self.vars[j].pow_i(e)?);
            }
        }
        Ok(acc)
    }

    /// Applies a substitution of chord variables to every cluster variable.
    pub fn substitute(&self, map: &std::collections::BTreeMap<Var, LaurentPoly>) -> Result<Seed, ClusterError> {
        let vars = self
            .vars
            .iter()
            .map(|r| Ok(RationalFn::new(r.num().substitute(map)?, r.den().substitute(map)?)?))
            .collect::<Result<Vec<_>, ClusterError>>()?;
        Ok(Seed { quiver: self.quiver.clone(), vars })
    }
}

/// `A_k = Δ_{i_k}(Z_{i_1}(b_1) ⋯ Z_{i_k}(b_k))` on the initial quiver.
pub fn initial_seed(w: &BraidWord) -> Seed {
    let n = w.n();
    let mut m = PolyMatrix::identity(n);
    let mut vars = Vec::with_capacity(w.len());
    for (k, &i) in w.letters().iter().enumerate() {
        m = m.mul(&PolyMatrix::z(i, LaurentPoly::var(Var::b(k as u32 + 1)), n)).expect("square");
        vars.push(RationalFn::from(m.principal_minor(i).expect("level below n")));
    }
    Seed { quiver: initial_quiver(w), vars }
}

const SCREEN_POINTS: usize = 5;
const SCREEN_SEED: u64 = 0x5eed_c1a5;

/// Values of every variable of both seeds at a few shared random points.
type Table = Vec<Vec<Gf216>>;

fn signatures(s1: &Seed, s2: &Seed) -> Option<(Table, Table)> {
    let mut vars = BTreeSet::new();
    let mut avoid = Vec::new();
    for r in s1.vars.iter().chain(&s2.vars) {
        vars.extend(r.num().vars());
        vars.extend(r.den().vars());
        if !r.den().is_one() {
            avoid.push(r.den().clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SCREEN_SEED);
    let pts: Vec<_> = (0..SCREEN_POINTS)
        .map(|_| random_point(&vars, &mut rng, &avoid))
        .collect::<Result<_, _>>()
        .ok()?;
    let sig = |s: &Seed| -> Option<Vec<Vec<Gf216>>> {
        s.vars
            .iter()
            .map(|r| pts.iter().map(|p| rational_eval(r, p).ok()).collect())
            .collect()
    };
    Some((sig(s1)?, sig(s2)?))
}

/// True iff some bijection of active unfrozen vertices, together with the
/// level-wise matching of frozen vertices, carries one seed to the other:
/// variables agree as rational functions and the doubled exchange matrices
/// agree on all active vertices.
pub fn seeds_equal(s1: &Seed, s2: &Seed) -> bool {
    let (q1, q2) = (&s1.quiver, &s2.quiver);
    let active = |q: &Quiver, frozen: bool| -> Vec<usize> {
        (0..q.len())
            .filter(|&i| q.vertices()[i].active && q.vertices()[i].frozen == frozen)
            .collect()
    };
    let (u1, u2) = (active(q1, false), active(q2, false));
    let (f1, f2) = (active(q1, true), active(q2, true));
    if u1.len() != u2.len() || f1.len() != f2.len() {
        return false;
    }
    let Some((sig1, sig2)) = signatures(s1, s2) else {
        return false;
    };
    let same = |i: usize, j: usize| sig1[i] == sig2[j] && s1.vars[i] == s2.vars[j];

    // Frozen vertices pair up by level.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &i in &f1 {
        let level = q1.vertices()[i].level;
        let Some(&j) = f2.iter().find(|&&j| q2.vertices()[j].level == level) else {
            return false;
        };
        if !same(i, j) {
            return false;
        }
        pairs.push((i, j));
    }
    let candidates: Vec<Vec<usize>> = u1.iter().map(|&i| u2.iter().copied().filter(|&j| same(i, j)).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return false;
    }
    let consistent = |pairs: &[(usize, usize)]| -> bool {
        let &(a, b) = pairs.last().expect("nonempty");
        pairs.iter().all(|&(c, d)| q1.eps2_at(a, c) == q2.eps2_at(b, d))
    };
    if !(1..=pairs.len()).all(|m| consistent(&pairs[..m])) {
        return false;
    }
    let mut used = vec![false; q2.len()];
    backtrack(0, &u1, &candidates, &mut used, &mut pairs, &consistent)
}

type Pairing = [(usize, usize)];

fn backtrack(
    depth: usize,
    u1: &[usize],
    candidates: &[Vec<usize>],
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    consistent: &dyn Fn(&Pairing) -> bool,
) -> bool {
    if depth == u1.len() {
        return true;
    }
    for &j in &candidates[depth] {
        if used[j] {
            continue;
        }
        pairs.push((u1[depth], j));
        if consistent(pairs) {
            used[j] = true;
            if backtrack(depth + 1, u1, candidates, used, pairs, consistent) {
                return true;
            }
            used[j] = false;
        }
        pairs.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_exchange_by_hand() {
        let s = initial_seed(&parse_braid("1,1,1", None).unwrap());
        assert_eq!(s.var(1).unwrap().as_poly().unwrap(), &lp("b1"));
        assert_eq!(s.var(2).unwrap().as_poly().unwrap(), &lp("1 + b1 b2"));
        let m = s.mutate(1).unwrap();
        assert_eq!(m.var(1).unwrap().as_poly().unwrap(), &lp("b2"));
    }

    #[test]
    fn single_crossing_seed() {
        let s = initial_seed(&parse_braid("1", None).unwrap());
        assert_eq!(s.var(1).unwrap().as_poly().unwrap(), &lp("b1"));
    }

    #[test]
    fn mutation_twice_is_identity() {
        let s = initial_seed(&parse_braid("1,2,1,2,1", None).unwrap());
        for k in [1, 2, 3] {
            let back = s.mutate(k).unwrap().mutate(k).unwrap();
            assert!(seeds_equal(&s, &back));
            for (id, r) in back.vars() {
                assert_eq!(r, s.var(id).unwrap());
            }
        }
    }

    #[test]
    fn mutation_changes_the_seed() {
        let s = initial_seed(&parse_braid("1,1,1", None).unwrap());
        assert!(seeds_equal(&s, &s));
        assert!(!seeds_equal(&s, &s.mutate(1).unwrap()));
    }

    #[test]
    fn poisson_pullback_examples() {
        let s = initial_seed(&parse_braid("1,1,1", None).unwrap());
        assert_eq!(s.poisson_pullback(1).unwrap(), RationalFn::from(lp("1 + b1 b2")));
        let lone = initial_seed(&parse_braid("1,1", None).unwrap()).quiver.without(&[2]);
        let lone = Seed::new(lone, vec![lp("b1").into()]).unwrap();
        assert!(lone.poisson_pullback(1).unwrap().as_poly().unwrap().is_one());
    }
}
