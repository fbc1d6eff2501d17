//! The isometry group of `(B, d)`.
//!
//! Every isometry is uniquely `L_u ∘ τ`: an orthogonal map `τ` followed by
//! the left gyrotranslation `L_u(w) = u ⊕ w`. Stored as the pair `(u, τ)`,
//! the group law is the gyrosemidirect product
//!
//! ```text
//! (u, α)(v, β) = (u ⊕ α(v), gyr[u, α(v)] ∘ α ∘ β)
//! ```

use alloc::vec::Vec;

use crate::gyro::{self, BallPoint};
use crate::linalg::{check_dim, Matrix, OrthoMatrix, Sampler, Vector};
use crate::{Error, Result, Tolerance};

/// Validation probes used by [`decompose`] beyond the `n + 1` recovery probes.
pub const DECOMPOSE_PROBES: usize = 8;
const DECOMPOSE_PROBE_SEED: u64 = 0x6779_726f;
const DECOMPOSE_PROBE_RADIUS: f64 = 0.9;

/// An isometry `w ↦ u ⊕ τ(w)` of the ball.
#[derive(Clone, Debug, PartialEq)]
pub struct Isometry {
    u: BallPoint,
    tau: OrthoMatrix,
}

impl Isometry {
    pub fn new(u: BallPoint, tau: OrthoMatrix) -> Result<Self> {
        check_dim(u.dim(), tau.dim())?;
        Ok(Self { u, tau })
    }

    /// `(0, I)`.
    pub fn identity(n: usize) -> Self {
        Self {
            u: BallPoint::origin(n),
            tau: OrthoMatrix::identity(n),
        }
    }

    /// The left gyrotranslation `L_u`.
    pub fn translation(u: BallPoint) -> Self {
        let n = u.dim();
        Self {
            u,
            tau: OrthoMatrix::identity(n),
        }
    }

    /// `τ` restricted to the ball.
    pub fn rotation(tau: OrthoMatrix) -> Self {
        Self {
            u: BallPoint::origin(tau.dim()),
            tau,
        }
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    pub fn translation_part(&self) -> &BallPoint {
        &self.u
    }

    pub fn rotation_part(&self) -> &OrthoMatrix {
        &self.tau
    }

    pub fn into_parts(self) -> (BallPoint, OrthoMatrix) {
        (self.u, self.tau)
    }

    pub fn apply(&self, w: &BallPoint) -> Result<BallPoint> {
        check_dim(self.dim(), w.dim())?;
        gyro::add(&self.u, &w.rotate(&self.tau)?)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        let moved = other.u.rotate(&self.tau)?;
        let u = gyro::add(&self.u, &moved)?;
        let gyr = gyro::gyr_matrix(&self.u, &moved)?;
        let tau = gyr.compose(&self.tau.compose(&other.tau)?)?;
        Ok(Self { u, tau })
    }

    /// `(τᵀ(−u), τᵀ)`, using `τ ∘ L_w = L_{τw} ∘ τ` and `L_u⁻¹ = L_{−u}`.
    pub fn invert(&self) -> Self {
        let tau = self.tau.transpose();
        let u = self
            .u
            .neg()
            .rotate(&tau)
            .expect("dimensions agree by construction");
        Self { u, tau }
    }

    /// `max(‖u − u'‖_max, ‖τ − τ'‖_max)`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self
            .u
            .max_abs_diff(&other.u)?
            .max(self.tau.max_abs_diff(&other.tau)?))
    }

    /// Distance from the identity element.
    pub fn identity_residual(&self) -> f64 {
        self.u.norm().max(self.tau.identity_residual())
    }
}

/// Free-function form of [`Isometry::identity`].
pub fn identity(n: usize) -> Isometry {
    Isometry::identity(n)
}

pub fn apply(f: &Isometry, w: &BallPoint) -> Result<BallPoint> {
    f.apply(w)
}

pub fn compose(f: &Isometry, g: &Isometry) -> Result<Isometry> {
    f.compose(g)
}

pub fn invert(f: &Isometry) -> Isometry {
    f.invert()
}

/// A recovered isometry and the worst residual seen while validating it.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub isometry: Isometry,
    pub max_residual: f64,
}

/// Recovers `(u, τ)` from a map known only by evaluation.
///
/// `u = ψ(0)` and column `i` of `τ` is `2·(−u ⊕ ψ(eᵢ/2))`. The result is
/// accepted only if `τ` is orthogonal and it reproduces `ψ` on
/// [`DECOMPOSE_PROBES`] further seeded points, both within
/// `tol.abs + tol.rel`.
pub fn decompose<F>(psi: F, n: usize, tol: Tolerance) -> Result<Decomposition>
where
    F: Fn(&BallPoint) -> BallPoint,
{
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1"));
    }
    let eval = |w: &BallPoint| -> Result<BallPoint> {
        let out = psi(w);
        check_dim(n, out.dim())?;
        Ok(out)
    };
    let u = eval(&BallPoint::origin(n))?;
    let cols = (0..n)
        .map(|i| {
            let probe = BallPoint::new(Vector::basis(n, i, 0.5))?;
            Ok(gyro::sub(&u, &eval(&probe)?)?.into_vector().scaled(2.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_columns(&cols)?;

    let mut sampler = Sampler::new(DECOMPOSE_PROBE_SEED);
    let probes = (0..DECOMPOSE_PROBES)
        .map(|_| {
            let w = BallPoint::sample(&mut sampler, n, DECOMPOSE_PROBE_RADIUS)?;
            let image = eval(&w)?;
            Ok((w, image))
        })
        .collect::<Result<Vec<_>>>()?;
    validate(u, m, &probes, tol)
}

/// Fits `(u, τ)` to sampled input/output pairs of an unknown isometry.
///
/// The inputs must include the origin and contain `n` linearly independent
/// vectors; every pair is then used to validate the fit.
pub fn fit_pairs(pairs: &[(BallPoint, BallPoint)], tol: Tolerance) -> Result<Decomposition> {
    let n = pairs.first().map(|(x, _)| x.dim()).ok_or(Error::Empty)?;
    for (x, y) in pairs {
        check_dim(n, x.dim())?;
        check_dim(n, y.dim())?;
    }
    let u = pairs
        .iter()
        .find(|(x, _)| x.is_origin())
        .map(|(_, y)| y.clone())
        .ok_or(Error::InvalidArgument(
            "probe inputs must include the origin",
        ))?;

    // greedy choice of n independent inputs, tested with Gram–Schmidt residuals
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut inputs = Vec::new();
    let mut images = Vec::new();
    for (x, y) in pairs {
        if basis.len() == n {
            break;
        }
        let mut r = x.as_slice().to_vec();
        for q in &basis {
            let p: f64 = r.iter().zip(q).map(|(a, b)| a * b).sum();
            r.iter_mut().zip(q).for_each(|(a, b)| *a -= p * b);
        }
        let len = libm::sqrt(r.iter().map(|a| a * a).sum());
        if len > 1e-6 * x.norm().max(1e-300) && len > 1e-12 {
            r.iter_mut().for_each(|a| *a /= len);
            basis.push(r);
            inputs.push(x.as_vector().clone());
            images.push(gyro::sub(&u, y)?.into_vector());
        }
    }
    if basis.len() < n {
        return Err(Error::InvalidArgument("probe inputs must span the space"));
    }
    // τ X = Z  ⇔  Xᵀ τᵀ = Zᵀ
    let x = Matrix::from_columns(&inputs)?;
    let z = Matrix::from_columns(&images)?;
    let m = x.transpose().solve_matrix(&z.transpose())?.transpose();
    validate(u, m, pairs, tol)
}

fn validate(
    u: BallPoint,
    m: Matrix,
    probes: &[(BallPoint, BallPoint)],
    tol: Tolerance,
) -> Result<Decomposition> {
    let bound = tol.unit_bound();
    let mut worst = m.orthogonality_residual()?;
    if worst.is_nan() || worst > bound {
        return Err(Error::NotAnIsometry { residual: worst });
    }
    let isometry = Isometry {
        u,
        tau: OrthoMatrix::from_matrix_unchecked(m),
    };
    for (w, image) in probes {
        let r = isometry.apply(w)?.max_abs_diff(image)?;
        worst = worst.max(r);
    }
    if worst.is_nan() || worst > bound {
        return Err(Error::NotAnIsometry { residual: worst });
    }
    Ok(Decomposition {
        isometry,
        max_residual: worst,
    })
}

/// An isometry carrying `u` to `v`: `L_v ∘ L_{−u}`.
pub fn transport(u: &BallPoint, v: &BallPoint) -> Result<Isometry> {
    Isometry::translation(v.clone()).compose(&Isometry::translation(u.neg()))
}

/// The point reflection `σ_v = L_v ∘ ι ∘ L_{−v}` with `ι(w) = −w`.
///
/// `σ_v` is an involutive isometry whose only fixed point is `v`.
pub fn point_reflection(v: &BallPoint) -> Result<Isometry> {
    let n = v.dim();
    let iota = Isometry::rotation(OrthoMatrix::negation(n));
    let inner = iota.compose(&Isometry::translation(v.neg()))?;
    Isometry::translation(v.clone()).compose(&inner)
}
