//! Einstein addition on the open unit ball and its gyrations.
//!
//! `(B, ⊕)` is a gyrocommutative gyrogroup: `0` is a two-sided identity,
//! `−v` is a two-sided inverse, and associativity and commutativity hold up
//! to the gyration `gyr[u, v]`, an orthogonal map of the ball. Gyrations are
//! computed from addition alone through the gyrator identity
//!
//! ```text
//! gyr[u, v] w = −(u ⊕ v) ⊕ (u ⊕ (v ⊕ w))
//! ```

use alloc::vec::Vec;

use crate::linalg::{check_dim, dot, Matrix, OrthoMatrix, Sampler, Vector};
use crate::{Error, Result};

/// Norm given to results that rounding pushed onto or past the unit sphere.
pub const CLAMP_RADIUS: f64 = 1.0 - 1e-12;

/// Orthogonality residual above which [`gyr_matrix`] reports an internal
/// inconsistency.
pub const GYR_CONSISTENCY_BOUND: f64 = 1e-6;

/// A point strictly inside the unit ball of `Rⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint(Vector);

impl BallPoint {
    pub fn new(v: Vector) -> Result<Self> {
        let norm = v.norm();
        if norm < 1.0 {
            Ok(Self(v))
        } else {
            Err(Error::OutsideBall { norm })
        }
    }

    pub fn from_slice(xs: &[f64]) -> Result<Self> {
        Self::new(Vector::new(xs.to_vec())?)
    }

    pub fn origin(n: usize) -> Self {
        Self(Vector::zeros(n))
    }

    /// Accepts `v` as is when it lies inside the ball, otherwise rescales it
    /// to [`CLAMP_RADIUS`]. The flag reports whether rescaling happened.
    pub(crate) fn clamped(v: Vector) -> (Self, bool) {
        let norm = v.norm();
        if norm < 1.0 {
            (Self(v), false)
        } else {
            (Self(v.scaled(CLAMP_RADIUS / norm)), true)
        }
    }

    /// Seeded sample with `‖v‖ ≤ rmax`.
    pub fn random(n: usize, rmax: f64, seed: u64) -> Result<Self> {
        Self::sample(&mut Sampler::new(seed), n, rmax)
    }

    pub fn sample(sampler: &mut Sampler, n: usize, rmax: f64) -> Result<Self> {
        sampler.ball_vector(n, rmax).map(Self)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn into_vector(self) -> Vector {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_origin(&self) -> bool {
        self.0.is_zero()
    }

    /// Lorentz factor `1/√(1 − ‖v‖²)`.
    pub fn gamma(&self) -> f64 {
        1.0 / libm::sqrt(1.0 - self.0.norm_sq())
    }

    pub fn neg(&self) -> Self {
        Self(-&self.0)
    }

    /// Image under an orthogonal map; orthogonal maps preserve the ball.
    pub fn rotate(&self, tau: &OrthoMatrix) -> Result<Self> {
        Ok(Self::clamped(tau.apply(&self.0)?).0)
    }

    /// `‖self − other‖_max`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.0.max_abs_diff(&other.0)
    }
}

impl TryFrom<Vector> for BallPoint {
    type Error = Error;

    fn try_from(v: Vector) -> Result<Self> {
        Self::new(v)
    }
}

impl AsRef<Vector> for BallPoint {
    fn as_ref(&self) -> &Vector {
        &self.0
    }
}

/// Lorentz factor of an arbitrary vector; fails outside the open ball.
pub fn gamma(v: &Vector) -> Result<f64> {
    let norm = v.norm();
    if norm < 1.0 {
        Ok(1.0 / libm::sqrt(1.0 - v.norm_sq()))
    } else {
        Err(Error::OutsideBall { norm })
    }
}

/// Einstein sum together with the rounding-guard flag.
#[derive(Clone, Debug, PartialEq)]
pub struct Sum {
    pub point: BallPoint,
    /// Set when the raw result had norm ≥ 1 and was rescaled to [`CLAMP_RADIUS`].
    pub clamped: bool,
}

/// `u ⊕ v`, reporting whether the out-of-ball guard fired.
pub fn add_guarded(u: &BallPoint, v: &BallPoint) -> Result<Sum> {
    check_dim(u.dim(), v.dim())?;
    let (us, vs) = (u.as_slice(), v.as_slice());
    let uv = dot(us, vs);
    let gu = u.gamma();
    let scale = 1.0 / (1.0 + uv);
    let along_u = 1.0 + gu / (1.0 + gu) * uv;
    let raw: Vec<f64> = us
        .iter()
        .zip(vs)
        .map(|(&a, &b)| scale * (along_u * a + b / gu))
        .collect();
    let (point, clamped) = BallPoint::clamped(Vector::from_vec_unchecked(raw));
    Ok(Sum { point, clamped })
}

/// Einstein addition `u ⊕ v`.
pub fn add(u: &BallPoint, v: &BallPoint) -> Result<BallPoint> {
    add_guarded(u, v).map(|s| s.point)
}

pub fn neg(v: &BallPoint) -> BallPoint {
    v.neg()
}

/// `−u ⊕ v`.
pub fn sub(u: &BallPoint, v: &BallPoint) -> Result<BallPoint> {
    add(&u.neg(), v)
}

/// `gyr[u, v] w`, evaluated through the gyrator identity.
pub fn gyr_apply(u: &BallPoint, v: &BallPoint, w: &BallPoint) -> Result<BallPoint> {
    let uv = add(u, v)?;
    let inner = add(u, &add(v, w)?)?;
    sub(&uv, &inner)
}

/// The orthogonal matrix of `gyr[u, v]`.
///
/// Column `i` is `2·gyr[u, v](eᵢ/2)`; the gyration is linear, so probing at
/// half scale recovers it exactly while keeping every argument well inside
/// the ball. The probed matrix is projected back onto O(n), which matters
/// near the boundary where small drift off O(n) is amplified by `γ²`.
pub fn gyr_matrix(u: &BallPoint, v: &BallPoint) -> Result<OrthoMatrix> {
    check_dim(u.dim(), v.dim())?;
    let n = u.dim();
    let uv = add(u, v)?;
    let cols = (0..n)
        .map(|i| {
            let probe = BallPoint(Vector::basis(n, i, 0.5));
            let image = sub(&uv, &add(u, &add(v, &probe)?)?)?;
            Ok(image.0.scaled(2.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_columns(&cols)?;
    let residual = m.orthogonality_residual()?;
    if residual > GYR_CONSISTENCY_BOUND {
        return Err(Error::Inconsistent {
            what: "gyration matrix orthogonality",
            residual,
        });
    }
    OrthoMatrix::polar_projection(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(xs: &[f64]) -> BallPoint {
        BallPoint::from_slice(xs).unwrap()
    }

    fn assert_near(a: &BallPoint, b: &[f64], tol: f64) {
        let d = a.max_abs_diff(&p(b)).unwrap();
        assert!(d <= tol, "{:?} vs {:?} (diff {d:e})", a.as_slice(), b);
    }

    #[test]
    fn construction_rejects_boundary_and_outside() {
        assert!(matches!(
            BallPoint::from_slice(&[1.0, 0.0]),
            Err(Error::OutsideBall { .. })
        ));
        assert!(matches!(
            BallPoint::from_slice(&[0.6, 0.8]),
            Err(Error::OutsideBall { .. })
        ));
        assert!(BallPoint::from_slice(&[0.6, 0.79]).is_ok());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(p(&[0.0, 0.0]).gamma(), 1.0);
        assert!((p(&[0.6, 0.0]).gamma() - 1.25).abs() < 1e-15);
        let edge = Vector::new(vec![0.6, 0.8]).unwrap();
        assert!(matches!(gamma(&edge), Err(Error::OutsideBall { .. })));
    }

    #[test]
    fn add_examples() {
        let v = p(&[0.3, -0.2]);
        assert_eq!(add(&BallPoint::origin(2), &v).unwrap(), v);
        assert_near(
            &add(&p(&[0.5, 0.0]), &p(&[0.5, 0.0])).unwrap(),
            &[0.8, 0.0],
            1e-15,
        );
        assert_near(
            &add(&p(&[0.6, 0.0]), &p(&[0.0, 0.6])).unwrap(),
            &[0.6, 0.48],
            1e-15,
        );
        assert!(matches!(
            add(&p(&[0.1, 0.0]), &p(&[0.1, 0.0, 0.0])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn neg_and_sub_examples() {
        assert_eq!(neg(&BallPoint::origin(2)).as_slice(), &[0.0, 0.0]);
        let v = p(&[0.3, 0.4]);
        assert_near(&add(&neg(&v), &v).unwrap(), &[0.0, 0.0], 1e-15);
        assert_eq!(neg(&neg(&v)), v);
        assert_near(&sub(&v, &v).unwrap(), &[0.0, 0.0], 1e-15);
        assert_eq!(sub(&BallPoint::origin(2), &v).unwrap(), v);
        assert_near(
            &sub(&p(&[0.5, 0.0]), &p(&[0.8, 0.0])).unwrap(),
            &[0.5, 0.0],
            1e-15,
        );
    }

    #[test]
    fn gyr_apply_examples() {
        let v = p(&[0.1, 0.7]);
        let w = p(&[0.2, 0.1]);
        assert_near(
            &gyr_apply(&BallPoint::origin(2), &v, &w).unwrap(),
            w.as_slice(),
            1e-15,
        );
        assert_near(
            &gyr_apply(&p(&[0.5, 0.0]), &p(&[0.3, 0.0]), &w).unwrap(),
            w.as_slice(),
            1e-15,
        );
        let g = gyr_apply(&p(&[0.5, 0.0]), &p(&[0.0, 0.5]), &w).unwrap();
        assert!((g.norm() - w.norm()).abs() < 1e-15);
        assert!(
            g.max_abs_diff(&w).unwrap() > 1e-3,
            "non-collinear pair must rotate"
        );
    }

    #[test]
    fn gyr_matrix_examples() {
        let u = p(&[0.5, 0.0]);
        let v = p(&[0.0, 0.5]);
        assert!(
            gyr_matrix(&BallPoint::origin(2), &v)
                .unwrap()
                .identity_residual()
                < 1e-15
        );
        assert!(gyr_matrix(&u, &u).unwrap().identity_residual() < 1e-15);
        let m = gyr_matrix(&u, &v).unwrap();
        let mut s = Sampler::new(5);
        for _ in 0..20 {
            let w = BallPoint::sample(&mut s, 2, 0.95).unwrap();
            let direct = gyr_apply(&u, &v, &w).unwrap();
            let via_matrix = w.rotate(&m).unwrap();
            assert!(direct.max_abs_diff(&via_matrix).unwrap() < 1e-14);
        }
    }

    #[test]
    fn guard_rescales_points_pushed_outside() {
        let (q, flag) = BallPoint::clamped(Vector::new(vec![1.0, 0.0]).unwrap());
        assert!(flag);
        assert!((q.norm() - CLAMP_RADIUS).abs() < 1e-15);
        let s = add_guarded(&p(&[0.3, 0.0]), &p(&[0.2, 0.0])).unwrap();
        assert!(!s.clamped);
    }

    #[test]
    fn extreme_collinear_sum_stays_inside() {
        let a = 1.0 - 1e-16_f64.max(f64::EPSILON / 2.0);
        let u = p(&[a]);
        let s = add_guarded(&u, &u).unwrap();
        assert!(s.point.norm() < 1.0);
    }
}
