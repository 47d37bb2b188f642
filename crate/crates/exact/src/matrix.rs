//! Dense matrices over Q(i) with exact rank, kernel and solve.

use crate::scalar::Scalar;
use crate::ExactError;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense row-major matrix with `GaussianRational` entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Column vector from a coefficient list.
    pub fn col_vector(v: &[Scalar]) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    /// Integer-entry convenience constructor.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Scalar::from_int(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    let e = self.get(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc += &(e * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row-echelon form, returning `(rref, pivot_columns)`.
    ///
    /// Plain Gaussian elimination over the field; `num`'s automatic gcd
    /// reduction keeps coefficient growth in check at the sizes used here.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.entries.swap(row * m.cols + c, p * m.cols + c);
                }
            }
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c) - &(&factor * m.get(row, c));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Exact rank over Q(i).
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form an exact basis of the kernel; `self * kernel_basis(self) = 0`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, Scalar::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, -r.get(prow, fc));
            }
        }
        basis
    }

    /// Exact solution `x` of `self * x = b` (any one solution), or the
    /// inconsistency report.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, ExactError> {
        if b.rows != self.rows {
            return Err(ExactError::Shape(format!(
                "solve: {}x{} vs rhs {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // A pivot in the rhs block signals inconsistency.
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(ExactError::Inconsistent);
        }
        let mut x = Matrix::zero(self.cols, b.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(pc, c, r.get(prow, self.cols + c).clone());
            }
        }
        Ok(x)
    }

    /// Determinant by elimination (square matrices only).
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                for c in 0..n {
                    m.entries.swap(col * n + c, p * n + c);
                }
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.recip();
            for r in col + 1..n {
                if !m.get(r, col).is_zero() {
                    let factor = m.get(r, col) * &inv;
                    for c in col..n {
                        let v = m.get(r, c) - &(&factor * m.get(col, c));
                        m.set(r, c, v);
                    }
                }
            }
        }
        det
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut t = Scalar::zero();
        for k in 0..self.rows {
            t += self.get(k, k);
        }
        t
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<'a> Add for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + &(a * b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Neg for &'a Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> Scalar {
        Scalar::i()
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zero(4, 7).rank(), 0);
    }

    #[test]
    fn rank_complex_dependent_rows() {
        // Row 2 = i * row 1; the 2x2 determinant vanishes, so rank is 1.
        let m = Matrix::from_rows(vec![
            vec![Scalar::one(), i()],
            vec![i(), Scalar::from_int(-1)],
        ]);
        assert_eq!(m.det(), Scalar::zero());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_cases() {
        assert_eq!(Matrix::identity(5).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zero(2, 2).kernel_basis().cols(), 2);

        let m = Matrix::from_rows(vec![
            vec![Scalar::one(), i()],
            vec![i(), Scalar::from_int(-1)],
        ]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
        // Substituting back shows the kernel is the span of (1, i): the ratio
        // of the two coordinates is fixed even though the scale is not.
        let ratio = &k.get(0, 0).clone() / &k.get(1, 0).clone();
        assert_eq!(ratio, -i());
    }

    #[test]
    fn rank_nullity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let r = rng.gen_range(1..6);
            let c = rng.gen_range(1..6);
            let m = Matrix::from_fn(r, c, |_, _| {
                Scalar::complex(rng.gen_range(-3..4), rng.gen_range(-3..4), 1)
            });
            assert_eq!(m.rank() + m.kernel_basis().cols(), c);
            assert!((&m * &m.kernel_basis()).is_zero());
        }
    }

    #[test]
    fn solve_round_trip_and_inconsistent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        // Random full-rank 5x5 with known x: solve(m, m*x) = x.
        loop {
            let m = Matrix::from_fn(5, 5, |_, _| {
                Scalar::complex(rng.gen_range(-4..5), rng.gen_range(-4..5), 1)
            });
            if m.rank() < 5 {
                continue;
            }
            let x = Matrix::from_fn(5, 1, |_, _| {
                Scalar::complex(rng.gen_range(-4..5), rng.gen_range(-4..5), 3)
            });
            let b = &m * &x;
            assert_eq!(m.solve(&b).unwrap(), x);
            break;
        }

        let id = Matrix::identity(3);
        let b = Matrix::from_i64(&[&[1], &[2], &[3]]);
        assert_eq!(id.solve(&b).unwrap(), b);

        let z = Matrix::zero(2, 2);
        let nz = Matrix::from_i64(&[&[1], &[0]]);
        assert!(matches!(z.solve(&nz), Err(ExactError::Inconsistent)));
    }
}
