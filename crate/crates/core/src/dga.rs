//! Degree ≤ 1 part of the Chekanov–Eliashberg DGA of a positive braid closure.
//!
//! Crossing `s` carries the degree-0 chord `b_s`, right cusp `k` carries the
//! degree-1 chord `a_k` and the marker `t_k`.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{
    poly_eval, random_point, AlgebraError, Gf216, GfMatrix, LaurentPoly, Monomial, PolyMatrix, Var,
};
use crate::braid::BraidWord;
use crate::ncalg::{NCMatrix, NCPoly};

/// `M^(1) = Z_{i_1}(x_1) ⋯ Z_{i_l}(x_l)` for arbitrary chord symbols.
pub fn nc_product(n: usize, letters: &[usize], chords: &[Var]) -> NCMatrix {
    letters.iter().zip(chords).fold(NCMatrix::identity(n), |m, (&i, &v)| {
        m.mul(&NCMatrix::z(i, NCPoly::var(v), n).expect("letter in range"))
    })
}

/// Commutative `M^(1)` for arbitrary chord symbols.
pub fn commutative_product(n: usize, letters: &[usize], chords: &[Var]) -> PolyMatrix {
    letters.iter().zip(chords).fold(PolyMatrix::identity(n), |m, (&i, &v)| {
        m.mul(&PolyMatrix::z(i, LaurentPoly::var(v), n)).expect("square")
    })
}

fn chords_of(w: &BraidWord) -> Vec<Var> {
    (1..=w.len() as u32).map(Var::b).collect()
}

/// Non-commutative transfer matrices `M^(1), ..., M^(n)` and their
/// commutative images. `M^(k)` is stored 0-indexed with local index 0
/// standing for global index `k`.
#[derive(Debug, Clone)]
pub struct TransferTower {
    pub word: BraidWord,
    nc: Vec<NCMatrix>,
    shadow: Vec<PolyMatrix>,
}

impl TransferTower {
    pub fn n(&self) -> usize {
        self.word.n()
    }

    /// `M^(k)`, 1-based `k`.
    pub fn nc(&self, k: usize) -> &NCMatrix {
        &self.nc[k - 1]
    }

    pub fn shadow(&self, k: usize) -> &PolyMatrix {
        &self.shadow[k - 1]
    }

    /// `M^(k)_{ij}` with global 1-based indices `k ≤ i, j ≤ n`.
    pub fn entry(&self, k: usize, i: usize, j: usize) -> &NCPoly {
        self.nc(k).get(i - k, j - k)
    }

    pub fn shadow_entry(&self, k: usize, i: usize, j: usize) -> &LaurentPoly {
        self.shadow(k).get(i - k, j - k)
    }
}

/// Next matrix of the tower:
/// `M^(k+1)_{ij} = M^(k)_{ij} + M^(k)_{ik} t_k M^(k)_{kj}`.
fn nc_step(m: &NCMatrix, k: usize) -> NCMatrix {
    let size = m.size() - 1;
    let t = NCPoly::var(Var::t(k as u32));
    let mut out = NCMatrix::zeros(size);
    for i in 0..size {
        for j in 0..size {
            let corr = &(m.get(i + 1, 0) * &t) * m.get(0, j + 1);
            out.set(i, j, m.get(i + 1, j + 1) + &corr);
        }
    }
    out
}

/// Commutative version of [`nc_step`].
pub fn commutative_step(m: &PolyMatrix, k: usize) -> PolyMatrix {
    let size = m.rows() - 1;
    let t = LaurentPoly::var(Var::t(k as u32));
    let mut out = PolyMatrix::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            let corr = &(m.get(i + 1, 0) * &t) * m.get(0, j + 1);
            out.set(i, j, m.get(i + 1, j + 1) + &corr);
        }
    }
    out
}

/// Commutative tower `M^(1), ..., M^(n)` with symbolic markers.
pub fn commutative_tower(n: usize, letters: &[usize], chords: &[Var]) -> Vec<PolyMatrix> {
    let mut out = vec![commutative_product(n, letters, chords)];
    for k in 1..n {
        let next = commutative_step(out.last().unwrap(), k);
        out.push(next);
    }
    out
}

pub fn transfer_tower(w: &BraidWord) -> TransferTower {
    let n = w.n();
    let mut nc = vec![nc_product(n, w.letters(), &chords_of(w))];
    for k in 1..n {
        let next = nc_step(nc.last().unwrap(), k);
        nc.push(next);
    }
    let shadow = nc.iter().map(NCMatrix::abelianize).collect();
    TransferTower { word: w.clone(), nc, shadow }
}

/// `∂a_k = M^(k)_{kk} + t_k⁻¹` for `k = 1..n`.
pub fn differentials(w: &BraidWord) -> Vec<NCPoly> {
    differentials_of(&transfer_tower(w))
}

pub fn differentials_of(tower: &TransferTower) -> Vec<NCPoly> {
    (1..=tower.n())
        .map(|k| {
            let tinv = NCPoly::inv_var(Var::t(k as u32)).expect("markers are invertible");
            tower.entry(k, k, k) + &tinv
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugPresentation {
    /// `E_m = Δ_m(M) + ∏_{k ≤ m} t_k⁻¹`, `m = 1..n`.
    pub equations: Vec<LaurentPoly>,
    /// `∏_m Δ_m(M)`, a polynomial in the chords only.
    pub eliminated: LaurentPoly,
    pub minors: Vec<LaurentPoly>,
}

pub fn principal_minors(m: &PolyMatrix) -> Vec<LaurentPoly> {
    (1..=m.rows()).map(|k| m.principal_minor(k).expect("square")).collect()
}

/// `∏_{k ≤ m} t_k⁻¹`.
pub fn marker_product_inv(m: usize) -> Monomial {
    Monomial::new((1..=m as u32).map(|k| (Var::t(k), -1))).expect("markers are invertible")
}

pub fn aug_equations(w: &BraidWord) -> AugPresentation {
    let m1 = commutative_product(w.n(), w.letters(), &chords_of(w));
    let minors = principal_minors(&m1);
    let equations = minors
        .iter()
        .enumerate()
        .map(|(k, d)| d + &LaurentPoly::from_monomial(marker_product_inv(k + 1)))
        .collect();
    let eliminated = minors.iter().fold(LaurentPoly::one(), |acc, d| &acc * d);
    AugPresentation { equations, eliminated, minors }
}

/// Marker values `t_m = Δ_{m-1} / Δ_m` at a chord assignment, or `None` when
/// some principal minor vanishes.
pub fn is_augmentation(w: &BraidWord, b: &[Gf216]) -> Option<Vec<Gf216>> {
    assert_eq!(b.len(), w.len(), "one value per crossing");
    let n = w.n();
    let m = w
        .letters()
        .iter()
        .zip(b)
        .fold(GfMatrix::identity(n), |acc, (&i, &x)| acc.mul(&GfMatrix::z(i, x, n)).expect("square"));
    marker_values(&m)
}

fn marker_values(m: &GfMatrix) -> Option<Vec<Gf216>> {
    let n = m.rows();
    let deltas: Vec<Gf216> = (0..=n).map(|k| m.principal_minor(k)).collect();
    if deltas.iter().any(|d| d.is_zero()) {
        return None;
    }
    Some((1..=n).map(|k| deltas[k - 1] / deltas[k]).collect())
}

/// Checks `M^(k)_{ij}` (commutative, markers on the augmentation locus)
/// against `det(M[1..k-1, i; 1..k-1, j]) / Δ_{k-1}` at random points.
pub fn quasidet_shadow_check(
    w: &BraidWord,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<bool, AlgebraError> {
    let tower = transfer_tower(w);
    let n = w.n();
    let minors = principal_minors(tower.shadow(1));
    let vars: BTreeSet<Var> = chords_of(w).into_iter().collect();
    for _ in 0..trials {
        let mut pt = random_point(&vars, rng, &minors[..n - 1])?;
        let m1 = tower.shadow(1).eval(&pt)?;
        let deltas: Vec<Gf216> = (0..=n).map(|k| m1.principal_minor(k)).collect();
        for k in 1..=n {
            pt.insert(Var::t(k as u32), deltas[k - 1] / deltas[k]);
        }
        for k in 1..=n {
            let head: Vec<usize> = (0..k - 1).collect();
            for i in k..=n {
                for j in k..=n {
                    let lhs = poly_eval(tower.shadow_entry(k, i, j), &pt)?;
                    let rows: Vec<usize> = head.iter().copied().chain([i - 1]).collect();
                    let cols: Vec<usize> = head.iter().copied().chain([j - 1]).collect();
                    let rhs = m1.submatrix_det(&rows, &cols)? / deltas[k - 1];
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Checks `t_i M^(i)_{i,i+1} = Δ_i(M Z_i(0)) / Δ_i(M)` at random points on
/// the augmentation locus, for every level `i`.
pub fn rotation_ratio_check(
    w: &BraidWord,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<bool, AlgebraError> {
    let tower = transfer_tower(w);
    let n = w.n();
    let minors = principal_minors(tower.shadow(1));
    let vars: BTreeSet<Var> = chords_of(w).into_iter().collect();
    for _ in 0..trials {
        let mut pt = random_point(&vars, rng, &minors[..n - 1])?;
        let m1 = tower.shadow(1).eval(&pt)?;
        let deltas: Vec<Gf216> = (0..=n).map(|k| m1.principal_minor(k)).collect();
        for k in 1..=n {
            pt.insert(Var::t(k as u32), deltas[k - 1] / deltas[k]);
        }
        for i in 1..n {
            let lhs = pt[&Var::t(i as u32)] * poly_eval(tower.shadow_entry(i, i, i + 1), &pt)?;
            let swapped = m1.mul(&GfMatrix::z(i, Gf216::ZERO, n))?;
            let rhs = swapped.principal_minor(i) / deltas[i];
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn word(s: &str, n: usize) -> BraidWord {
        parse_braid(s, Some(n)).unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_equations_by_hand() {
        // Z(b1)Z(b2) = [[b1b2+1, b1],[b2, 1]]; times Z(b3) gives top-left b1b2b3+b3+b1.
        let a = aug_equations(&word("1,1,1", 2));
        assert_eq!(a.minors[0], lp("b1 b2 b3 + b1 + b3"));
        assert_eq!(a.equations[0], lp("b1 b2 b3 + b1 + b3 + t1^-1"));
        assert_eq!(a.eliminated, lp("b1 b2 b3 + b1 + b3"));
        assert_eq!(a.equations.len(), 2);
    }

    #[test]
    fn empty_word_is_a_point() {
        let w = BraidWord::partial(3, vec![]).unwrap();
        let d = differentials(&w);
        assert_eq!(d[0].to_string(), "1 + t1^-1");
        let a = aug_equations(&w);
        assert!(a.eliminated.is_one());
        assert!(is_augmentation(&w, &[]).is_some());
    }

    #[test]
    fn trefoil_membership() {
        let w = word("1,1,1", 2);
        assert!(is_augmentation(&w, &[Gf216::ONE; 3]).is_some());
        assert!(is_augmentation(&w, &[Gf216::ZERO, Gf216(5), Gf216::ZERO]).is_none());
    }

    #[test]
    fn eliminated_has_no_markers() {
        let a = aug_equations(&word("1,2,1,2", 3));
        assert!(a.eliminated.vars().iter().all(|v| !v.invertible()));
        assert!(a.minors[2].is_one());
    }

    #[test]
    fn quasidet_check_small_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(quasidet_shadow_check(&word("1,2,1,2", 3), 20, &mut rng).unwrap());
        assert!(quasidet_shadow_check(&word("1,1", 2), 20, &mut rng).unwrap());
        assert!(rotation_ratio_check(&word("1,2,1,2", 3), 20, &mut rng).unwrap());
    }

    #[test]
    fn hopf_second_matrix_by_hand() {
        // Z(b1)Z(b2) = [[b1b2+1, b1],[b2, 1]], so M^(2) = 1 + b2 t1 b1.
        let t = transfer_tower(&word("1,1", 2));
        assert_eq!(t.entry(2, 2, 2).to_string(), "1 + b2 t1 b1");
    }
}
