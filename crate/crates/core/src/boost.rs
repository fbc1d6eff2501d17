//! Lorentz boosts on `(t, x)` spacetime coordinates, c = 1.
//!
//! Two boosts compose to a boost followed by a spatial rotation:
//!
//! ```text
//! L(u) · L(v) = L(u ⊕ v) · Gyr[u, v],   Gyr[u, v] = blockdiag(1, gyr[u, v])
//! ```
//!
//! The rotation block is the Thomas rotation.

use crate::gyro::{self, BallPoint};
use crate::linalg::{check_dim, Matrix, OrthoMatrix};
use crate::Result;

/// The symmetric boost with velocity `v`:
///
/// ```text
/// ⎡ γ     γvᵀ                ⎤
/// ⎣ γv    I + γ²/(1+γ) v vᵀ  ⎦
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct BoostMatrix {
    m: Matrix,
    v: BallPoint,
}

impl BoostMatrix {
    pub fn new(v: &BallPoint) -> Self {
        let n = v.dim();
        let g = v.gamma();
        let k = g * g / (1.0 + g);
        let x = v.as_slice();
        let mut m = Matrix::identity(n + 1);
        m.set(0, 0, g);
        for i in 0..n {
            m.set(0, i + 1, g * x[i]);
            m.set(i + 1, 0, g * x[i]);
            for j in 0..n {
                let delta = if i == j { 1.0 } else { 0.0 };
                m.set(i + 1, j + 1, delta + k * (x[i] * x[j]));
            }
        }
        Self { m, v: v.clone() }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn velocity(&self) -> &BallPoint {
        &self.v
    }

    /// `‖mᵀ η m − η‖_max` with `η = diag(1, −1, …, −1)`.
    pub fn minkowski_residual(&self) -> f64 {
        let size = self.m.rows();
        let eta = |i: usize| if i == 0 { 1.0 } else { -1.0 };
        let mut worst = 0.0f64;
        for a in 0..size {
            for b in a..size {
                let s: f64 = (0..size)
                    .map(|i| eta(i) * self.m.get(i, a) * self.m.get(i, b))
                    .sum();
                let target = if a == b { eta(a) } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

pub fn boost(v: &BallPoint) -> BoostMatrix {
    BoostMatrix::new(v)
}

/// `blockdiag(1, r)`: a spatial rotation acting on spacetime.
pub fn spacetime_rotation(r: &OrthoMatrix) -> Matrix {
    let n = r.dim();
    let mut m = Matrix::identity(n + 1);
    for i in 0..n {
        for j in 0..n {
            m.set(i + 1, j + 1, r.as_matrix().get(i, j));
        }
    }
    m
}

/// `‖L(u)·L(v) − L(u ⊕ v)·Gyr[u, v]‖_max`.
pub fn boost_compose_residual(u: &BallPoint, v: &BallPoint) -> Result<f64> {
    check_dim(u.dim(), v.dim())?;
    let lhs = boost(u).m.compose(&boost(v).m)?;
    let w = gyro::add(u, v)?;
    let rhs = boost(&w)
        .m
        .compose(&spacetime_rotation(&gyro::gyr_matrix(u, v)?))?;
    lhs.max_abs_diff(&rhs)
}

/// Solves `L(u ⊕ v) · X = L(u) · L(v)` for `X` and returns
/// `‖X − blockdiag(1, gyr[u, v])‖_max`.
pub fn gyr_block_residual(u: &BallPoint, v: &BallPoint) -> Result<f64> {
    check_dim(u.dim(), v.dim())?;
    let product = boost(u).m.compose(&boost(v).m)?;
    let x = boost(&gyro::add(u, v)?).m.solve_matrix(&product)?;
    x.max_abs_diff(&spacetime_rotation(&gyro::gyr_matrix(u, v)?))
}

/// The spatial rotation left over when composing two boosts.
#[derive(Clone, Debug, PartialEq)]
pub struct ThomasRotation {
    pub matrix: OrthoMatrix,
}

impl ThomasRotation {
    /// Signed rotation angle, only meaningful in the plane.
    pub fn angle(&self) -> Option<f64> {
        let m = self.matrix.as_matrix();
        (self.matrix.dim() == 2).then(|| libm::atan2(m.get(1, 0), m.get(0, 0)))
    }
}

pub fn thomas_rotation(u: &BallPoint, v: &BallPoint) -> Result<ThomasRotation> {
    gyro::gyr_matrix(u, v).map(|matrix| ThomasRotation { matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Sampler;

    fn p(xs: &[f64]) -> BallPoint {
        BallPoint::from_slice(xs).unwrap()
    }

    #[test]
    fn boost_examples() {
        let b0 = boost(&BallPoint::origin(2));
        assert_eq!(b0.matrix(), &Matrix::identity(3));
        assert!((boost(&p(&[0.6, 0.0])).matrix().get(0, 0) - 1.25).abs() < 1e-15);
        let mut s = Sampler::new(4);
        for _ in 0..50 {
            let b = boost(&BallPoint::sample(&mut s, 3, 0.95).unwrap());
            assert!(b.minkowski_residual() < 1e-12);
            assert_eq!(b.matrix(), &b.matrix().transpose());
        }
    }

    #[test]
    fn composition_residual_examples() {
        let v = p(&[0.3, -0.6]);
        assert!(boost_compose_residual(&BallPoint::origin(2), &v).unwrap() < 1e-15);
        assert!(boost_compose_residual(&p(&[0.5, 0.0]), &p(&[0.3, 0.0])).unwrap() <= 1e-9);
        assert!(boost_compose_residual(&p(&[0.5, 0.0]), &p(&[0.0, 0.5])).unwrap() <= 1e-9);
        assert!(gyr_block_residual(&p(&[0.5, 0.0]), &p(&[0.0, 0.5])).unwrap() <= 1e-9);
    }

    #[test]
    fn thomas_rotation_examples() {
        let u = p(&[0.4, 0.4]);
        assert!(thomas_rotation(&u, &u).unwrap().matrix.identity_residual() < 1e-15);
        let collinear = thomas_rotation(&p(&[0.5, 0.0]), &p(&[0.3, 0.0])).unwrap();
        assert!(collinear.matrix.identity_residual() < 1e-15);
        assert!(collinear.angle().unwrap().abs() < 1e-15);
        let generic = thomas_rotation(&p(&[0.5, 0.0]), &p(&[0.0, 0.5])).unwrap();
        assert!(generic.angle().unwrap().abs() > 1e-3);
        assert_eq!(
            thomas_rotation(&p(&[0.1, 0.0, 0.0]), &p(&[0.0, 0.1, 0.0]))
                .unwrap()
                .angle(),
            None
        );
    }
}
