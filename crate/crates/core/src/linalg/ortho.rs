use super::{Matrix, Vector};
use crate::{Error, Result, Tolerance};

const POLAR_MAX_STEPS: usize = 4;

/// A square matrix with orthonormal columns: an element of O(n).
///
/// Products and transposes of `OrthoMatrix` values stay `OrthoMatrix`
/// without re-checking; only external input goes through [`OrthoMatrix::new`].
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoMatrix(Matrix);

impl OrthoMatrix {
    pub fn new(m: Matrix, tol: Tolerance) -> Result<Self> {
        let residual = m.orthogonality_residual()?;
        if residual <= tol.unit_bound() {
            Ok(Self(m))
        } else {
            Err(Error::NotOrthogonal { residual })
        }
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix) -> Self {
        debug_assert!(m.is_square());
        Self(m)
    }

    /// Nearest orthogonal matrix to a nearly orthogonal `m`, by Newton
    /// iteration on the polar factor: `X ← X(3I − XᵀX)/2`.
    pub(crate) fn polar_projection(m: Matrix) -> Result<Self> {
        let n = m.rows();
        let mut x = m;
        let mut residual = x.orthogonality_residual()?;
        for _ in 0..POLAR_MAX_STEPS {
            if residual == 0.0 {
                break;
            }
            let mut c = x.transpose().compose(&x)?.scaled(-1.0);
            for i in 0..n {
                c.set(i, i, c.get(i, i) + 3.0);
            }
            let next = x.compose(&c)?.scaled(0.5);
            let next_residual = next.orthogonality_residual()?;
            if next_residual >= residual {
                break;
            }
            x = next;
            residual = next_residual;
        }
        Ok(Self(x))
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    /// The point inversion `v ↦ −v`.
    pub fn negation(n: usize) -> Self {
        Self(Matrix::scalar(n, -1.0))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        self.0.apply(v)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.0.compose(&other.0).map(Self)
    }

    /// Transpose, which is also the inverse.
    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn det(&self) -> f64 {
        // an orthogonal matrix is never singular; Matrix::det only fails on shape
        self.0.det().unwrap_or(0.0)
    }

    pub fn residual(&self) -> f64 {
        self.0.orthogonality_residual().unwrap_or(f64::INFINITY)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.0.max_abs_diff(&other.0)
    }

    /// Max-norm distance from the identity matrix.
    pub fn identity_residual(&self) -> f64 {
        self.0
            .max_abs_diff(&Matrix::identity(self.dim()))
            .unwrap_or(f64::INFINITY)
    }
}

impl AsRef<Matrix> for OrthoMatrix {
    fn as_ref(&self) -> &Matrix {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_non_orthogonal() {
        let m = Matrix::from_rows(vec![vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            OrthoMatrix::new(m, Tolerance::DEFAULT),
            Err(Error::NotOrthogonal { .. })
        ));
        let rect = Matrix::from_rows(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        assert!(matches!(
            OrthoMatrix::new(rect, Tolerance::DEFAULT),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn polar_projection_removes_drift() {
        let c = libm::cos(0.3);
        let s = libm::sin(0.3);
        let drifted =
            Matrix::from_rows(vec![vec![c * (1.0 + 1e-7), -s], vec![s, c - 2e-8]]).unwrap();
        let q = OrthoMatrix::polar_projection(drifted).unwrap();
        assert!(q.residual() < 1e-15);
        let exact = Matrix::from_rows(vec![vec![c, -s], vec![s, c]]).unwrap();
        assert!(q.as_matrix().max_abs_diff(&exact).unwrap() < 1e-7);
    }

    #[test]
    fn negation_has_determinant_sign_of_dimension() {
        assert!((OrthoMatrix::negation(3).det() + 1.0).abs() < 1e-15);
        assert!((OrthoMatrix::negation(2).det() - 1.0).abs() < 1e-15);
    }
}
