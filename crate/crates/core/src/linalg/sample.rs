use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{dot, Matrix, OrthoMatrix, Vector};
use crate::{Error, Result};

/// Number of Gaussian matrices drawn before [`random_orthogonal`] gives up.
pub const MAX_SAMPLE_ATTEMPTS: u32 = 16;

// columns whose norm collapses below this fraction during Gram–Schmidt are
// treated as numerically dependent
const DEPENDENCE_RATIO: f64 = 1e-8;

/// Seeded sampler for ball points and orthogonal matrices.
///
/// Backed by ChaCha8; the output depends only on `(seed, stream)`, never on
/// thread scheduling or earlier draws from other samplers.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent sub-sequence `stream` of `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Direction uniform on the sphere, radius uniform in `[0, rmax]`.
    pub fn ball_vector(&mut self, n: usize, rmax: f64) -> Result<Vector> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1"));
        }
        if !(rmax > 0.0 && rmax < 1.0) {
            return Err(Error::InvalidArgument("rmax must lie in (0, 1)"));
        }
        let dir = loop {
            let g: Vec<f64> = (0..n).map(|_| self.normal()).collect();
            let len = libm::sqrt(dot(&g, &g));
            if len > 1e-12 {
                break Vector::from_vec_unchecked(g.iter().map(|x| x / len).collect());
            }
        };
        let r = rmax * self.uniform();
        let v = dir.scaled(r);
        // rounding in the normalization can push |v| a hair above r
        let len = v.norm();
        Ok(if len > rmax { v.scaled(rmax / len) } else { v })
    }

    /// Orthonormalized Gaussian matrix.
    ///
    /// Gram–Schmidt on the columns is QR with a positive diagonal in R, which
    /// fixes the sign ambiguity and gives Haar-distributed Q.
    pub fn orthogonal(&mut self, n: usize) -> Result<OrthoMatrix> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1"));
        }
        for _ in 0..MAX_SAMPLE_ATTEMPTS {
            let cols: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..n).map(|_| self.normal()).collect())
                .collect();
            if let Some(q) = gram_schmidt(cols) {
                let cols: Vec<Vector> = q.into_iter().map(Vector::from_vec_unchecked).collect();
                let m = Matrix::from_columns(&cols)?;
                return Ok(OrthoMatrix::from_matrix_unchecked(m));
            }
        }
        Err(Error::Degenerate {
            attempts: MAX_SAMPLE_ATTEMPTS,
        })
    }
}

/// Modified Gram–Schmidt with one re-orthogonalization pass.
fn gram_schmidt(mut cols: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    for j in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(j);
        let c = &mut rest[0];
        let original = libm::sqrt(dot(c, c));
        for _pass in 0..2 {
            for q in done.iter() {
                let p = dot(c, q);
                c.iter_mut().zip(q).for_each(|(x, y)| *x -= p * y);
            }
        }
        let len = libm::sqrt(dot(c, c));
        if len.is_nan() || len <= DEPENDENCE_RATIO * original {
            return None;
        }
        c.iter_mut().for_each(|x| *x /= len);
    }
    Some(cols)
}

/// Seeded random orthogonal `n × n` matrix.
pub fn random_orthogonal(n: usize, seed: u64) -> Result<OrthoMatrix> {
    Sampler::new(seed).orthogonal(n)
}

/// Seeded random vector of norm at most `rmax`.
pub fn random_ball_point(n: usize, rmax: f64, seed: u64) -> Result<Vector> {
    Sampler::new(seed).ball_vector(n, rmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Tolerance;

    #[test]
    fn orthogonal_samples_are_orthogonal_with_unit_determinant() {
        for s in 0..50 {
            let q = random_orthogonal(3, s).unwrap();
            assert!(q.as_matrix().is_orthogonal(Tolerance::DEFAULT));
            let q4 = random_orthogonal(4, s).unwrap();
            assert!((q4.det().abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn orthogonal_sampling_is_deterministic() {
        assert_eq!(
            random_orthogonal(5, 11).unwrap(),
            random_orthogonal(5, 11).unwrap()
        );
        assert_ne!(
            random_orthogonal(5, 11).unwrap(),
            random_orthogonal(5, 12).unwrap()
        );
    }

    #[test]
    fn both_determinant_signs_occur() {
        let dets: Vec<f64> = (0..40)
            .map(|s| random_orthogonal(3, s).unwrap().det())
            .collect();
        assert!(dets.iter().any(|&d| d > 0.0));
        assert!(dets.iter().any(|&d| d < 0.0));
    }

    #[test]
    fn dependent_columns_are_rejected() {
        let cols = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(gram_schmidt(cols).is_none());
    }

    #[test]
    fn ball_points_respect_radius() {
        for s in 0..200 {
            assert!(random_ball_point(3, 0.99, s).unwrap().norm() <= 0.99);
        }
        assert_eq!(
            random_ball_point(2, 0.5, 3).unwrap(),
            random_ball_point(2, 0.5, 3).unwrap()
        );
        assert!(random_ball_point(2, 1.0, 0).is_err());
        assert!(random_ball_point(0, 0.5, 0).is_err());
    }

    #[test]
    fn mean_radius_is_half_of_rmax() {
        let mut s = Sampler::new(2024);
        let total: f64 = (0..10_000)
            .map(|_| s.ball_vector(3, 0.9).unwrap().norm())
            .sum();
        let mean = total / 10_000.0;
        assert!((mean - 0.45).abs() < 0.01, "mean radius {mean}");
    }

    #[test]
    fn streams_are_independent() {
        let a = Sampler::with_stream(7, 0).uniform();
        let b = Sampler::with_stream(7, 1).uniform();
        assert_ne!(a, b);
        assert_eq!(a, Sampler::with_stream(7, 0).uniform());
    }
}
