//! Dense vectors and matrices of runtime dimension, plus seeded samplers.
//!
//! Everything here is plain `f64` arithmetic on row-major storage. Sizes are
//! checked on every binary operation and reported as
//! [`Error::DimensionMismatch`].

mod matrix;
mod ortho;
mod sample;
mod vector;

pub use matrix::Matrix;
pub use ortho::OrthoMatrix;
pub use sample::{random_ball_point, random_orthogonal, Sampler, MAX_SAMPLE_ATTEMPTS};
pub use vector::Vector;

use crate::{Error, Result};

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Euclidean inner product `Σ uᵢvᵢ`.
pub fn inner(u: &Vector, v: &Vector) -> Result<f64> {
    u.inner(v)
}

/// Euclidean norm.
pub fn norm(v: &Vector) -> f64 {
    v.norm()
}

/// Matrix–vector product.
pub fn mat_apply(m: &Matrix, v: &Vector) -> Result<Vector> {
    m.apply(v)
}

/// Matrix product `a · b`.
pub fn mat_compose(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.compose(b)
}

pub fn transpose(m: &Matrix) -> Matrix {
    m.transpose()
}

/// `‖mᵀm − I‖_max ≤ tol.abs + tol.rel`; false for non-square input.
pub fn is_orthogonal(m: &Matrix, tol: crate::Tolerance) -> bool {
    m.is_orthogonal(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Tolerance;
    use alloc::vec;

    fn v(xs: &[f64]) -> Vector {
        Vector::new(xs.to_vec()).unwrap()
    }

    fn rot2(theta: f64) -> Matrix {
        let (s, c) = (libm::sin(theta), libm::cos(theta));
        Matrix::from_rows(vec![vec![c, -s], vec![s, c]]).unwrap()
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(&v(&[1.0, 0.0]), &v(&[0.0, 1.0])).unwrap(), 0.0);
        assert!((inner(&v(&[0.6, 0.0]), &v(&[0.6, 0.0])).unwrap() - 0.36).abs() < 1e-15);
        assert!((inner(&v(&[0.3, 0.4]), &v(&[0.5, 0.2])).unwrap() - 0.23).abs() < 1e-15);
    }

    #[test]
    fn inner_dimension_mismatch() {
        assert_eq!(
            inner(&v(&[1.0, 0.0]), &v(&[1.0, 0.0, 0.0])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&v(&[0.0, 0.0, 0.0])), 0.0);
        assert!((norm(&v(&[0.6, 0.8])) - 1.0).abs() < 1e-15);
        assert!((norm(&v(&[0.3, 0.4])) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mat_apply_examples() {
        let x = v(&[0.3, 0.4]);
        assert_eq!(mat_apply(&Matrix::identity(2), &x).unwrap(), x);
        let quarter = Matrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(
            mat_apply(&quarter, &v(&[1.0, 0.0])).unwrap(),
            v(&[0.0, 1.0])
        );
        let diag = Matrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 3.0]]).unwrap();
        assert_eq!(mat_apply(&diag, &v(&[1.0, 1.0])).unwrap(), v(&[2.0, 3.0]));
        assert!(matches!(
            mat_apply(&diag, &v(&[1.0, 1.0, 1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn compose_transpose_orthogonal() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        assert_eq!(mat_compose(&Matrix::identity(2), &m).unwrap(), m);
        assert_eq!(transpose(&transpose(&m)), m);
        assert!(matches!(
            mat_compose(&m, &m),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(is_orthogonal(&rot2(0.7), Tolerance::DEFAULT));
        assert!(!is_orthogonal(&m, Tolerance::DEFAULT));
        let skew = Matrix::from_rows(vec![vec![1.0, 0.1], vec![0.0, 1.0]]).unwrap();
        assert!(!is_orthogonal(&skew, Tolerance::DEFAULT));
    }
}
