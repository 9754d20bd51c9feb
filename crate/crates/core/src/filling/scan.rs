use super::FillingError;
use crate::algebra::{Monomial, Var};
use crate::braid::BraidWord;
use crate::ncalg::{NCMatrix, NCPoly, Side};

/// Matrix scanning for the pinch of crossing `k`.
#[derive(Debug, Clone)]
pub struct Scan {
    pub k: usize,
    /// `U^(k+1), ..., U^(l+1)`.
    pub upper: Vec<NCMatrix>,
    /// `L^(k-1), ..., L^(0)`.
    pub lower: Vec<NCMatrix>,
    /// `Φ(b_s)` for `s = 1..l`, 0-indexed.
    pub images: Vec<NCPoly>,
}

impl Scan {
    /// `U^(s)` for `k < s ≤ l + 1`.
    pub fn u(&self, s: usize) -> Option<&NCMatrix> {
        s.checked_sub(self.k + 1).and_then(|d| self.upper.get(d))
    }

    /// `L^(s)` for `0 ≤ s < k`.
    pub fn l(&self, s: usize) -> Option<&NCMatrix> {
        (self.k - 1).checked_sub(s).and_then(|d| self.lower.get(d))
    }

    /// `Φ(b_s)`, 1-based.
    pub fn image(&self, s: usize) -> &NCPoly {
        &self.images[s - 1]
    }
}

/// Scan of a word whose crossings carry the given chord symbols, pinching
/// position `k` into the curve variable `p`.
pub fn scan_with(n: usize, letters: &[usize], chords: &[Var], k: usize, p: Var) -> Result<Scan, FillingError> {
    let l = letters.len();
    if k == 0 || k > l {
        return Err(FillingError::InvalidMove(format!("no crossing at position {k}")));
    }
    let pinv = NCPoly::inv_var(p)?;
    let ik = letters[k - 1];
    let mut images = vec![NCPoly::zero(); l];
    images[k - 1] = NCPoly::var(p);

    let mut u = NCMatrix::zeros(n);
    u.set(ik - 1, ik, pinv.clone());
    let mut upper = vec![u.clone()];
    for s in k + 1..=l {
        let i = letters[s - 1];
        let b = NCPoly::var(chords[s - 1]);
        let phi = &b + u.get(i - 1, i);
        u = NCMatrix::z_inv(i, phi.clone(), n)?.mul(&u).mul(&NCMatrix::z(i, b, n)?).truncate(Side::Upper);
        images[s - 1] = phi;
        upper.push(u.clone());
    }

    let mut lo = NCMatrix::zeros(n);
    lo.set(ik, ik - 1, pinv);
    let mut lower = vec![lo.clone()];
    for s in (1..k).rev() {
        let i = letters[s - 1];
        let b = NCPoly::var(chords[s - 1]);
        let phi = &b + lo.get(i, i - 1);
        lo = NCMatrix::z(i, b, n)?.mul(&lo).mul(&NCMatrix::z_inv(i, phi.clone(), n)?).truncate(Side::Lower);
        images[s - 1] = phi;
        lower.push(lo.clone());
    }
    Ok(Scan { k, upper, lower, images })
}

/// Scan of `w` with chords `b_1..b_l`, pinching crossing `k` into `p_k`.
pub fn pinch_scan(w: &BraidWord, k: usize) -> Result<Scan, FillingError> {
    let chords: Vec<Var> = (1..=w.len() as u32).map(Var::b).collect();
    scan_with(w.n(), w.letters(), &chords, k, Var::p(k as u32))
}

/// `D_i(x)`: diagonal with `x` at entry `i` and `x⁻¹` at entry `i + 1`.
/// Index 0 is unused so entries read 1-based.
pub fn d_matrix(n: usize, i: usize, x: &Monomial) -> Vec<Monomial> {
    let mut d = vec![Monomial::one(); n + 1];
    d[i] = x.clone();
    d[i + 1] = x.inv().expect("curve monomials are invertible");
    d
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerPush {
    /// New chord value is `factor · old` at each suffix crossing.
    pub factors: Vec<Monomial>,
    /// Diagonal that ends up past the suffix, 1-based.
    pub diag: Vec<Monomial>,
}

/// Moves `D_i(x)` rightwards through crossings on the given levels using
/// `D Z_j(b) = Z_j((d_j / d_{j+1}) b) D'`, where `D'` swaps entries `j`,
/// `j + 1`.
pub fn marker_push(n: usize, i: usize, x: &Monomial, suffix: &[usize]) -> MarkerPush {
    let mut d = d_matrix(n, i, x);
    let factors = suffix
        .iter()
        .map(|&j| {
            let f = d[j].div(&d[j + 1]).expect("invertible");
            d.swap(j, j + 1);
            f
        })
        .collect();
    MarkerPush { factors, diag: d }
}
