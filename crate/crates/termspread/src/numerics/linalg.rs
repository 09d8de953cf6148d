//! Small dense matrices and symmetric positive definite solving.
//!
//! The matrices here are design matrices with a handful of columns, so the
//! implementation favors clarity and strong failure diagnostics over
//! performance: plain row-major storage, textbook Cholesky with a relative
//! pivot floor, and solve/inverse built on the factorization.

use crate::error::{Error, Result};

/// Relative pivot floor for the Cholesky factorization: a pivot at or below
/// this fraction of the largest diagonal entry is treated as a sign of a
/// non-positive-definite (collinear) system.
const PIVOT_FLOOR: f64 = 1e-12;

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Build from row-major data; dimensions must be positive and match the
    /// data length.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Validation {
                msg: format!("matrix dimensions must be positive, got {rows}x{cols}"),
            });
        }
        if data.len() != rows * cols {
            return Err(Error::Validation {
                msg: format!(
                    "matrix data length {} does not match {rows}x{cols}",
                    data.len()
                ),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0.0; rows * cols])
    }

    /// Build from equal-length columns (the natural shape for a design
    /// matrix assembled one regressor at a time).
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        if columns.is_empty() || columns[0].is_empty() {
            return Err(Error::Validation {
                msg: "matrix needs at least one nonempty column".into(),
            });
        }
        let rows = columns[0].len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Validation {
                msg: "matrix columns must all have the same length".into(),
            });
        }
        let cols = columns.len();
        let mut data = vec![0.0; rows * cols];
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                data[i * cols + j] = v;
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.data[r * self.cols + c] = v;
    }

    /// Row `r` as a slice.
    pub fn row(&self, r: usize) -> &[f64] {
        assert!(r < self.rows, "row index out of bounds");
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Gram matrix `AᵀA` (square, `cols x cols`, symmetric).
    pub fn gram(&self) -> Matrix {
        let k = self.cols;
        let mut out = vec![0.0; k * k];
        for i in 0..k {
            for j in i..k {
                let mut acc = 0.0;
                for r in 0..self.rows {
                    acc += self.data[r * k + i] * self.data[r * k + j];
                }
                out[i * k + j] = acc;
                out[j * k + i] = acc;
            }
        }
        Matrix { rows: k, cols: k, data: out }
    }

    /// Weighted Gram matrix `Aᵀ diag(w) A`, one weight per row. The negative
    /// Hessian of the probit log-likelihood has this shape.
    pub fn weighted_gram(&self, weights: &[f64]) -> Matrix {
        assert_eq!(weights.len(), self.rows, "one weight per row required");
        let k = self.cols;
        let mut out = vec![0.0; k * k];
        for r in 0..self.rows {
            let w = weights[r];
            let row = &self.data[r * k..(r + 1) * k];
            for i in 0..k {
                let wi = w * row[i];
                for j in i..k {
                    out[i * k + j] += wi * row[j];
                }
            }
        }
        for i in 0..k {
            for j in 0..i {
                out[i * k + j] = out[j * k + i];
            }
        }
        Matrix { rows: k, cols: k, data: out }
    }

    /// `Aᵀ v` for a vector with one entry per row.
    pub fn transpose_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.rows, "vector length must equal row count");
        let mut out = vec![0.0; self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[c] += self.data[r * self.cols + c] * v[r];
            }
        }
        out
    }

    /// `A v` for a vector with one entry per column.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Lower-triangular Cholesky factor `L` with `L Lᵀ = A`.
///
/// Only the lower triangle of `A` is read, so a symmetric matrix stored with
/// roundoff asymmetry still factors. Fails with a singularity error naming
/// the pivot index when a pivot drops to or below `1e-12` of the largest
/// diagonal entry.
pub fn cholesky(a: &Matrix) -> Result<Matrix> {
    if a.rows() != a.cols() {
        return Err(Error::Validation {
            msg: format!("cholesky requires a square matrix, got {}x{}", a.rows(), a.cols()),
        });
    }
    let n = a.rows();
    let max_diag = (0..n).map(|i| a.get(i, i).abs()).fold(0.0_f64, f64::max);
    let floor = PIVOT_FLOOR * max_diag.max(f64::MIN_POSITIVE);

    let mut l = Matrix::zeros(n, n)?;
    for j in 0..n {
        let mut d = a.get(j, j);
        for k in 0..j {
            d -= l.get(j, k) * l.get(j, k);
        }
        if !(d > floor) {
            return Err(Error::Singular {
                pivot: j,
                detail: format!(" (pivot value {d:.3e})"),
            });
        }
        let lj = d.sqrt();
        l.set(j, j, lj);
        for i in j + 1..n {
            let mut v = a.get(i, j);
            for k in 0..j {
                v -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, v / lj);
        }
    }
    Ok(l)
}

/// Solve `A x = b` for symmetric positive definite `A` via Cholesky.
pub fn solve_spd(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    if b.len() != a.rows() {
        return Err(Error::Validation {
            msg: format!(
                "right-hand side length {} does not match matrix dimension {}",
                b.len(),
                a.rows()
            ),
        });
    }
    let l = cholesky(a)?;
    Ok(solve_with_factor(&l, b))
}

/// Forward/back substitution given the lower Cholesky factor.
fn solve_with_factor(l: &Matrix, b: &[f64]) -> Vec<f64> {
    let n = l.rows();
    // L y = b
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut acc = b[i];
        for k in 0..i {
            acc -= l.get(i, k) * y[k];
        }
        y[i] = acc / l.get(i, i);
    }
    // Lᵀ x = y
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = y[i];
        for k in i + 1..n {
            acc -= l.get(k, i) * x[k];
        }
        x[i] = acc / l.get(i, i);
    }
    x
}

/// Inverse of a symmetric positive definite matrix, column by column through
/// the shared Cholesky factor. Used for coefficient covariance matrices.
pub fn inverse_spd(a: &Matrix) -> Result<Matrix> {
    let l = cholesky(a)?;
    let n = a.rows();
    let mut inv = Matrix::zeros(n, n)?;
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = solve_with_factor(&l, &e);
        e[j] = 0.0;
        for (i, &v) in col.iter().enumerate() {
            inv.set(i, j, v);
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, data: &[f64]) -> Matrix {
        Matrix::new(rows, cols, data.to_vec()).unwrap()
    }

    #[test]
    fn construction_validates_shape() {
        assert!(Matrix::new(0, 2, vec![]).is_err());
        assert!(Matrix::new(2, 2, vec![1.0; 3]).is_err());
        assert!(Matrix::from_columns(&[vec![1.0, 2.0], vec![3.0]]).is_err());
        assert!(Matrix::from_columns(&[]).is_err());
    }

    #[test]
    fn from_columns_lays_out_rows() {
        let m = Matrix::from_columns(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(m.row(0), &[1.0, 3.0]);
        assert_eq!(m.row(1), &[2.0, 4.0]);
    }

    #[test]
    fn solve_identity() {
        let a = mat(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        let x = solve_spd(&a, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(x, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn solve_diagonal() {
        let a = mat(2, 2, &[4.0, 0.0, 0.0, 9.0]);
        let x = solve_spd(&a, &[8.0, 27.0]).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-14);
        assert!((x[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn solve_two_by_two() {
        let a = mat(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let x = solve_spd(&a, &[3.0, 3.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn singular_matrix_reports_pivot() {
        // Second column is a multiple of the first.
        let a = mat(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        match solve_spd(&a, &[1.0, 2.0]) {
            Err(Error::Singular { pivot, .. }) => assert_eq!(pivot, 1),
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn not_positive_definite_fails_immediately() {
        let a = mat(2, 2, &[-1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(solve_spd(&a, &[1.0, 1.0]), Err(Error::Singular { pivot: 0, .. })));
    }

    #[test]
    fn random_spd_solves_accurately() {
        // A = MᵀM + I is SPD; residual should be tiny for small dimensions.
        let mut next = 123456789_u64;
        let mut rand = move || {
            next = next.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (next >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for dim in 1..=6 {
            let m_data: Vec<f64> = (0..dim * dim).map(|_| rand() * 4.0).collect();
            let m = mat(dim, dim, &m_data);
            let mut a = m.gram();
            for i in 0..dim {
                a.set(i, i, a.get(i, i) + 1.0);
            }
            let b: Vec<f64> = (0..dim).map(|_| rand() * 10.0).collect();
            let x = solve_spd(&a, &b).unwrap();
            let ax = a.mul_vec(&x);
            for i in 0..dim {
                assert!((ax[i] - b[i]).abs() < 1e-9, "dim {dim} residual too large");
            }
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = mat(3, 3, &[4.0, 1.0, 0.5, 1.0, 3.0, 0.2, 0.5, 0.2, 2.0]);
        let inv = inverse_spd(&a).unwrap();
        for i in 0..3 {
            let col: Vec<f64> = (0..3).map(|j| inv.get(j, i)).collect();
            let ax = a.mul_vec(&col);
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ax[j] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gram_and_products() {
        let x = Matrix::from_columns(&[vec![1.0, 1.0, 1.0], vec![0.0, 1.0, 2.0]]).unwrap();
        let g = x.gram();
        assert_eq!(g.get(0, 0), 3.0);
        assert_eq!(g.get(0, 1), 3.0);
        assert_eq!(g.get(1, 1), 5.0);
        let xty = x.transpose_mul_vec(&[1.0, 3.0, 5.0]);
        assert_eq!(xty, vec![9.0, 13.0]);
        let xb = x.mul_vec(&[1.0, 2.0]);
        assert_eq!(xb, vec![1.0, 3.0, 5.0]);
    }

    #[test]
    fn weighted_gram_matches_unit_weights_and_scales() {
        let x = Matrix::from_columns(&[vec![1.0, 1.0, 1.0], vec![0.0, 1.0, 2.0]]).unwrap();
        let unweighted = x.gram();
        let unit = x.weighted_gram(&[1.0, 1.0, 1.0]);
        assert_eq!(unit, unweighted);
        let w = x.weighted_gram(&[2.0, 0.0, 1.0]);
        // Row sums by hand: [2*1+0+1, 2*0+0+2; ., 0+0+4].
        assert_eq!(w.get(0, 0), 3.0);
        assert_eq!(w.get(0, 1), 2.0);
        assert_eq!(w.get(1, 0), 2.0);
        assert_eq!(w.get(1, 1), 4.0);
    }
}
