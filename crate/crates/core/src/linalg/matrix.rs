use alloc::vec;
use alloc::vec::Vec;

use super::{check_dim, dot, Vector};
use crate::{Error, Result, Tolerance};

/// Row-major dense matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            check_dim(c, row.len())?;
            data.extend(row);
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vector]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vector::dim);
        if c == 0 {
            return Err(Error::Empty);
        }
        let mut data = vec![0.0; r * c];
        for (j, col) in columns.iter().enumerate() {
            check_dim(r, col.dim())?;
            for (i, &x) in col.iter().enumerate() {
                data[i * c + j] = x;
            }
        }
        Ok(Self {
            rows: r,
            cols: c,
            data,
        })
    }

    /// # Panics
    /// If `n == 0`.
    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1.0)
    }

    /// `s · I`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn scalar(n: usize, s: f64) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = s;
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub(crate) fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
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

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_vec_unchecked((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        check_dim(self.cols, v.dim())?;
        Ok(Vector::from_vec_unchecked(
            (0..self.rows)
                .map(|i| dot(self.row(i), v.as_slice()))
                .collect(),
        ))
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_dim(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `‖self − other‖_max`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// `‖mᵀm − I‖_max`.
    pub fn orthogonality_residual(&self) -> Result<f64> {
        check_dim(self.rows, self.cols)?;
        let n = self.cols;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let s: f64 = (0..n).map(|i| self.get(i, a) * self.get(i, b)).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        Ok(worst)
    }

    pub fn is_orthogonal(&self, tol: Tolerance) -> bool {
        self.orthogonality_residual()
            .is_ok_and(|r| r <= tol.unit_bound())
    }

    pub fn det(&self) -> Result<f64> {
        match Lu::factor(self) {
            Ok(lu) => Ok(lu.det()),
            Err(Error::Singular) => Ok(0.0),
            Err(e) => Err(e),
        }
    }

    /// Solves `self · x = b`.
    pub fn solve(&self, b: &Vector) -> Result<Vector> {
        Lu::factor(self)?
            .solve(b.as_slice())
            .map(Vector::from_vec_unchecked)
    }

    /// Solves `self · X = b` column by column.
    pub fn solve_matrix(&self, b: &Self) -> Result<Self> {
        check_dim(self.rows, b.rows)?;
        let lu = Lu::factor(self)?;
        let cols = (0..b.cols)
            .map(|j| {
                lu.solve(b.column(j).as_slice())
                    .map(Vector::from_vec_unchecked)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(&cols)
    }
}

/// LU factorization with partial pivoting, `P·A = L·U` packed in one buffer.
struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    const PIVOT_TOL: f64 = 1e-300;

    fn factor(a: &Matrix) -> Result<Self> {
        check_dim(a.rows, a.cols)?;
        let n = a.rows;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| lu[i * n + k].abs().total_cmp(&lu[j * n + k].abs()))
                .unwrap_or(k);
            if lu[p * n + k].abs() <= Self::PIVOT_TOL {
                return Err(Error::Singular);
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    lu[i * n + j] -= f * lu[k * n + j];
                }
            }
        }
        Ok(Self { n, lu, perm, sign })
    }

    fn det(&self) -> f64 {
        (0..self.n)
            .map(|i| self.lu[i * self.n + i])
            .product::<f64>()
            * self.sign
    }

    fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        check_dim(n, b.len())?;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        Ok(x)
    }
}
