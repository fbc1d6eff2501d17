//! Rapidity and the rapidity metric on the ball.
//!
//! `d(u, v) = artanh ‖−u ⊕ v‖` coincides with the Cayley–Klein distance of
//! the Beltrami–Klein model. Two oracles compute that distance by routes
//! that never touch Einstein addition:
//!
//! - [`dist_oracle_cosh`]: `arcosh((1 − ⟨u,v⟩) / √((1−‖u‖²)(1−‖v‖²)))`,
//! - [`dist_oracle_crossratio`]: half the log cross-ratio of `u`, `v` and the
//!   two points where their chord meets the unit sphere.
//!
//! The oracles are meant for cross-validation; use [`dist`] for real work.

use crate::gyro::{self, BallPoint};
use crate::linalg::{check_dim, dot};
use crate::{Error, Result};

/// Arguments of [`artanh`] are clamped to at most this value.
pub const ARTANH_CLAMP: f64 = 1.0 - 1e-15;

/// `½·ln((1+x)/(1−x))`, clamped just below 1.
///
/// Evaluated as `½·ln1p(2x/(1−x))`, which is the same quantity without the
/// cancellation for small `x`.
pub fn artanh(x: f64) -> f64 {
    let x = x.min(ARTANH_CLAMP);
    0.5 * libm::log1p(2.0 * x / (1.0 - x))
}

/// Rapidity `artanh ‖v‖`.
pub fn rapidity(v: &BallPoint) -> f64 {
    artanh(v.norm())
}

/// The gyrometric `‖−u ⊕ v‖`.
pub fn gyrometric(u: &BallPoint, v: &BallPoint) -> Result<f64> {
    Ok(gyro::sub(u, v)?.norm())
}

/// The rapidity metric `artanh ‖−u ⊕ v‖`.
pub fn dist(u: &BallPoint, v: &BallPoint) -> Result<f64> {
    gyrometric(u, v).map(artanh)
}

/// Beltrami–Klein distance by the hyperbolic-cosine formula.
///
/// With `x = (1 − ⟨u,v⟩) / √((1−‖u‖²)(1−‖v‖²))` this is `arcosh x`,
/// evaluated as `arsinh √(x² − 1)` where, for `δ = v − u`,
///
/// ```text
/// x² − 1 = (‖δ‖²(1 − ‖u‖²) + ⟨u,δ⟩²) / ((1−‖u‖²)(1−‖v‖²))
/// ```
///
/// Every term is nonnegative, so nearby points keep full relative accuracy
/// instead of losing half their digits to `arcosh` near 1.
pub fn dist_oracle_cosh(u: &BallPoint, v: &BallPoint) -> Result<f64> {
    check_dim(u.dim(), v.dim())?;
    let (us, vs) = (u.as_slice(), v.as_slice());
    let delta: alloc::vec::Vec<f64> = vs.iter().zip(us).map(|(b, a)| b - a).collect();
    let (nu, nv) = (1.0 - dot(us, us), 1.0 - dot(vs, vs));
    let ud = dot(us, &delta);
    let sinh_sq = (dot(&delta, &delta) * nu + ud * ud) / (nu * nv);
    Ok(libm::asinh(libm::sqrt(sinh_sq.max(0.0))))
}

/// Beltrami–Klein distance as half the log cross-ratio.
///
/// With `a` the chord endpoint beyond `u` and `b` the endpoint beyond `v`:
///
/// ```text
/// d(u, v) = ½ ln( ‖a − v‖·‖u − b‖ / (‖a − u‖·‖v − b‖) )
/// ```
pub fn dist_oracle_crossratio(u: &BallPoint, v: &BallPoint) -> Result<f64> {
    check_dim(u.dim(), v.dim())?;
    if u == v {
        return Ok(0.0);
    }
    let (us, vs) = (u.as_slice(), v.as_slice());
    let mut dir: alloc::vec::Vec<f64> = vs.iter().zip(us).map(|(b, a)| b - a).collect();
    // only the chord's endpoints matter, so rescale the direction to keep
    // the quadratic's leading coefficient from underflowing
    let scale = dir.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    dir.iter_mut().for_each(|x| *x /= scale);
    // |u + t·dir|² = 1  ⇔  qa·t² + qb·t + qc = 0, roots t_a < 0 < t_b
    let qa = dot(&dir, &dir);
    let qb = 2.0 * dot(us, &dir);
    let qc = dot(us, us) - 1.0;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc.is_nan() || disc <= 0.0 || qa == 0.0 {
        return Err(Error::Inconsistent {
            what: "chord/sphere intersection",
            residual: disc,
        });
    }
    let q = -0.5 * (qb + libm::copysign(libm::sqrt(disc), qb));
    let (r1, r2) = (q / qa, qc / q);
    let (t_a, t_b) = if r1 < r2 { (r1, r2) } else { (r2, r1) };

    let at =
        |t: f64| -> alloc::vec::Vec<f64> { us.iter().zip(&dir).map(|(x, d)| x + t * d).collect() };
    let len = |p: &[f64], q: &[f64]| -> f64 {
        libm::sqrt(p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum())
    };
    let (a, b) = (at(t_a), at(t_b));
    let ratio = (len(&a, vs) * len(us, &b)) / (len(&a, us) * len(vs, &b));
    Ok(0.5 * libm::log(ratio))
}
