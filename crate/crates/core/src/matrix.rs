//! Small dense row-major matrices.
//!
//! Products are always accumulated with the inner index increasing, so two
//! products computed along the same association order agree bit for bit.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds a matrix from a slice of rows; all rows must share a length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::invalid(format!(
                    "row {i} has {} entries, expected {ncols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(nrows, ncols, data)
    }

    /// Builds a `d x p` matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[f64]>>(cols: &[C]) -> Result<Self> {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, |c| c.as_ref().len());
        let mut m = Self::zeros(nrows, ncols);
        for (j, c) in cols.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != nrows {
                return Err(Error::invalid(format!(
                    "column {j} has {} entries, expected {nrows}",
                    c.len()
                )));
            }
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scaled(&self, c: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Entrywise `self + c * other`.
    pub fn add_scaled(&self, c: f64, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + c * b)
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// A power of two `s` with `self / s` of moderate size, or `None` when
    /// the largest entry already lies within `[1e-100, 1e100]` (or is zero).
    /// Homogeneous quantities can then be evaluated on `self / s` without
    /// losing precision to underflow.
    pub fn balancing_factor(&self) -> Option<f64> {
        let m = self.max_abs();
        if m == 0.0 || !m.is_finite() || (1e-100..=1e100).contains(&m) {
            return None;
        }
        Some(2f64.powi(m.log2().round() as i32))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0.0)
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|&x| x > 0.0)
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (s, x) in sums.iter_mut().zip(self.row(i)) {
                *s += x;
            }
        }
        sums
    }

    /// Numerical rank by Gaussian elimination with full pivoting.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let mut a = self.data.clone();
        let (r, c) = (self.rows, self.cols);
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0;
        }
        let tol = rel_tol * scale * (r.max(c) as f64);
        let mut rank = 0;
        let mut row_used = vec![false; r];
        let mut col_used = vec![false; c];
        loop {
            let mut best = (0.0, 0, 0);
            for i in (0..r).filter(|&i| !row_used[i]) {
                for j in (0..c).filter(|&j| !col_used[j]) {
                    let v = a[i * c + j].abs();
                    if v > best.0 {
                        best = (v, i, j);
                    }
                }
            }
            let (piv, pi, pj) = best;
            if piv <= tol {
                break;
            }
            row_used[pi] = true;
            col_used[pj] = true;
            rank += 1;
            for i in (0..r).filter(|&i| !row_used[i]) {
                let f = a[i * c + pj] / a[pi * c + pj];
                if f != 0.0 {
                    for j in 0..c {
                        a[i * c + j] -= f * a[pi * c + j];
                    }
                }
            }
        }
        rank
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Solves `a x = b` with partial pivoting. Returns `None` on an exactly
/// singular pivot.
pub(crate) fn solve_dense(a: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.rows();
    let mut m = a.data.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv =
            (col..n).max_by(|&i, &j| m[i * n + col].abs().total_cmp(&m[j * n + col].abs()))?;
        if m[piv * n + col] == 0.0 {
            return None;
        }
        if piv != col {
            for j in 0..n {
                m.swap(piv * n + j, col * n + j);
            }
            x.swap(piv, col);
        }
        let p = m[col * n + col];
        for i in col + 1..n {
            let f = m[i * n + col] / p;
            if f != 0.0 {
                for j in col..n {
                    m[i * n + j] -= f * m[col * n + j];
                }
                x[i] -= f * x[col];
            }
        }
    }
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i * n + j] * x[j]).sum();
        x[i] = (x[i] - s) / m[i * n + i];
    }
    Some(x)
}
