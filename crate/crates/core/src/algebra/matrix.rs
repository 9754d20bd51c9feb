use std::fmt;

use super::eval::{poly_eval, Point};
use super::gf216::Gf216;
use super::poly::LaurentPoly;
use super::AlgebraError;

/// Dense rectangular matrix of Laurent polynomials, 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch);
        }
        Ok(PolyMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// `Z_i(x)`: identity with the block `[[x, 1], [1, 0]]` at levels `i, i+1`
    /// (1-based `i`).
    pub fn z(i: usize, x: LaurentPoly, n: usize) -> Self {
        assert!(i >= 1 && i < n, "level {i} out of range for {n} strands");
        let mut m = Self::identity(n);
        m.set(i - 1, i - 1, x);
        m.set(i - 1, i, LaurentPoly::one());
        m.set(i, i - 1, LaurentPoly::one());
        m.set(i, i, LaurentPoly::zero());
        m
    }

    /// Diagonal matrix from its entries.
    pub fn diag(d: Vec<LaurentPoly>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: LaurentPoly) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch);
        }
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Determinant of the selected rows and columns (0-based).
    ///
    /// Laplace expansion memoised over column subsets; no signs in
    /// characteristic 2.
    pub fn submatrix_det(&self, rows: &[usize], cols: &[usize]) -> Result<LaurentPoly, AlgebraError> {
        if rows.len() != cols.len() {
            return Err(AlgebraError::SizeMismatch);
        }
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(AlgebraError::DimensionMismatch);
        }
        let m = rows.len();
        let mut dp = vec![LaurentPoly::zero(); 1 << m];
        dp[0] = LaurentPoly::one();
        for mask in 1usize..1 << m {
            let r = rows[mask.count_ones() as usize - 1];
            let mut acc = LaurentPoly::zero();
            for (k, &c) in cols.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    let prev = &dp[mask ^ (1 << k)];
                    let x = self.get(r, c);
                    if !prev.is_zero() && !x.is_zero() {
                        acc += prev * x;
                    }
                }
            }
            dp[mask] = acc;
        }
        Ok(dp.pop().expect("nonempty table"))
    }

    /// `Δ_m`: determinant of the upper-left `m × m` block.
    pub fn principal_minor(&self, m: usize) -> Result<LaurentPoly, AlgebraError> {
        if m > self.rows || m > self.cols {
            return Err(AlgebraError::DimensionMismatch);
        }
        let idx: Vec<usize> = (0..m).collect();
        self.submatrix_det(&idx, &idx)
    }

    pub fn det(&self) -> Result<LaurentPoly, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch);
        }
        self.principal_minor(self.rows)
    }

    pub fn eval(&self, pt: &Point) -> Result<GfMatrix, AlgebraError> {
        let mut out = GfMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, poly_eval(self.get(i, j), pt)?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Numeric matrix over GF(2^16).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Gf216>,
}

impl GfMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GfMatrix { rows, cols, entries: vec![Gf216::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Gf216::ONE);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Numeric `Z_i(x)`, 1-based `i`.
    pub fn z(i: usize, x: Gf216, n: usize) -> Self {
        let mut m = Self::identity(n);
        m.set(i - 1, i - 1, x);
        m.set(i - 1, i, Gf216::ONE);
        m.set(i, i - 1, Gf216::ONE);
        m.set(i, i, Gf216::ZERO);
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Gf216 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Gf216) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn mul(&self, other: &GfMatrix) -> Result<GfMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch);
        }
        let mut out = GfMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Gf216::ZERO;
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Determinant of a selected square submatrix by Gaussian elimination.
    pub fn submatrix_det(&self, rows: &[usize], cols: &[usize]) -> Result<Gf216, AlgebraError> {
        if rows.len() != cols.len() {
            return Err(AlgebraError::SizeMismatch);
        }
        let m = rows.len();
        let mut a: Vec<Vec<Gf216>> =
            rows.iter().map(|&r| cols.iter().map(|&c| self.get(r, c)).collect()).collect();
        let mut det = Gf216::ONE;
        for col in 0..m {
            let Some(piv) = (col..m).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Gf216::ZERO);
            };
            a.swap(col, piv);
            let p = a[col][col];
            det *= p;
            let pinv = p.inv().expect("nonzero pivot");
            for r in col + 1..m {
                let f = a[r][col] * pinv;
                if f.is_zero() {
                    continue;
                }
                for c in col..m {
                    let v = a[col][c];
                    a[r][c] += f * v;
                }
            }
        }
        Ok(det)
    }

    pub fn principal_minor(&self, m: usize) -> Gf216 {
        let idx: Vec<usize> = (0..m).collect();
        self.submatrix_det(&idx, &idx).expect("square selection")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| lp(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn minors_of_z_block() {
        let m = mat(&[&["b1", "1"], &["1", "0"]]);
        assert_eq!(m.principal_minor(1).unwrap(), lp("b1"));
        assert!(m.principal_minor(2).unwrap().is_one());
    }

    #[test]
    fn product_of_z_has_unit_determinant() {
        let n = 3;
        let mut m = PolyMatrix::identity(n);
        for (i, b) in [(1, "b1"), (2, "b2"), (1, "b3"), (2, "b4")] {
            m = m.mul(&PolyMatrix::z(i, lp(b), n)).unwrap();
        }
        assert!(m.det().unwrap().is_one());
    }

    #[test]
    fn submatrix_det_examples() {
        let m = mat(&[&["b1", "b2", "b3"], &["b4", "b5", "b6"], &["0", "0", "1"]]);
        assert_eq!(m.submatrix_det(&[0, 1], &[0, 1]).unwrap(), m.principal_minor(2).unwrap());
        assert_eq!(m.submatrix_det(&[0, 2], &[0, 1]).unwrap(), LaurentPoly::zero());
        assert_eq!(m.submatrix_det(&[0, 1], &[0, 2]).unwrap(), lp("b1 b6 + b3 b4"));
        assert_eq!(m.submatrix_det(&[0, 2], &[0, 2]).unwrap(), lp("b1"));
        assert_eq!(m.submatrix_det(&[0, 1], &[0]), Err(AlgebraError::SizeMismatch));
    }

    #[test]
    fn numeric_and_symbolic_determinants_agree() {
        let m = mat(&[&["b1", "b2", "b3"], &["b4", "b5", "b6"], &["b7", "b8", "b9"]]);
        let pt: Point = (1..=9).map(|i| (super::super::Var::b(i), Gf216(1000 + 37 * i as u16))).collect();
        let sym = poly_eval(&m.det().unwrap(), &pt).unwrap();
        let num = m.eval(&pt).unwrap().principal_minor(3);
        assert_eq!(sym, num);
    }
}
