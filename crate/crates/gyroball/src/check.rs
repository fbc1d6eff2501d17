//! Seeded randomized checks of the gyrogroup, metric, isometry and boost
//! identities.
//!
//! Every trial draws its own points from a sampler keyed by
//! `(seed, suite, trial index)`, so trials can run in parallel and the report
//! is identical for a fixed seed regardless of scheduling.
//!
//! Residual conventions, all folded into one `max_residual`:
//! - equalities contribute their max-norm (vectors, matrices) or absolute
//!   (scalars) residual;
//! - inequalities `lhs ≤ rhs` are allowed a slack of `tol/1000` and contribute
//!   `1000·max(0, lhs − rhs)`, so any excess beyond the slack exceeds `tol`;
//! - the cross-ratio oracle is held to `10·tol` and contributes its residual
//!   divided by ten;
//! - a failed yes/no requirement, a NaN, or an error inside a trial
//!   contributes `f64::MAX`.

use std::fmt;
use std::str::FromStr;

use gyroball_core::gyro::{add, gyr_apply, gyr_matrix, sub};
use gyroball_core::isometry::{decompose, fit_pairs, point_reflection, transport};
use gyroball_core::linalg::Sampler;
use gyroball_core::metric::{dist, dist_oracle_cosh, dist_oracle_crossratio, gyrometric, rapidity};
use gyroball_core::{boost, BallPoint, Isometry, Result, Tolerance};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;

/// Contribution of a failed requirement or NaN residual.
pub const FAILED: f64 = f64::MAX;
/// Inequalities may overshoot by `tol / INEQUALITY_SLACK_RATIO`.
pub const INEQUALITY_SLACK_RATIO: f64 = 1000.0;
/// The cross-ratio oracle is held to this multiple of the tolerance.
pub const CROSSRATIO_TOL_FACTOR: f64 = 10.0;
/// Probes for the canonical-form fit are drawn at least this far out, so
/// tiny sampling radii do not make the fit ill-conditioned.
pub const FIT_PROBE_MIN_RADIUS: f64 = 0.5;
/// Points closer than this to the reflection centre are not tested for
/// being moved by the reflection.
pub const FIXED_POINT_EXCLUSION: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    GyrogroupAxioms,
    RapidityLaws,
    GyroIdentities,
    MetricAxioms,
    Oracles,
    IsometryGroup,
    CompositionLaw,
    Symmetry,
    Boosts,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const EACH: [Suite; 9] = [
        Suite::GyrogroupAxioms,
        Suite::RapidityLaws,
        Suite::GyroIdentities,
        Suite::MetricAxioms,
        Suite::Oracles,
        Suite::IsometryGroup,
        Suite::CompositionLaw,
        Suite::Symmetry,
        Suite::Boosts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GyrogroupAxioms => "gyrogroup-axioms",
            Suite::RapidityLaws => "theorem1",
            Suite::GyroIdentities => "theorem2",
            Suite::MetricAxioms => "metric-axioms",
            Suite::Oracles => "oracles",
            Suite::IsometryGroup => "isometry-group",
            Suite::CompositionLaw => "eq5-eq6",
            Suite::Symmetry => "symmetry",
            Suite::Boosts => "boosts",
            Suite::All => "all",
        }
    }

    fn tag(self) -> u64 {
        Suite::EACH
            .iter()
            .position(|&s| s == self)
            .map_or(0xff, |i| i as u64 + 1)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> std::result::Result<Self, CliError> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| CliError::UnknownSuite(s.to_owned()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckConfig {
    pub dim: usize,
    pub trials: u64,
    pub rmax: f64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            dim: 3,
            trials: 1000,
            rmax: 0.95,
            seed: 0,
            tol: 1e-9,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> std::result::Result<(), CliError> {
        if self.dim < 2 {
            return Err(CliError::Argument("dimension must be at least 2".into()));
        }
        if self.trials == 0 {
            return Err(CliError::Argument("trials must be at least 1".into()));
        }
        if !(self.rmax > 0.0 && self.rmax < 1.0) {
            return Err(CliError::Argument("rmax must lie in (0, 1)".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Argument("tol must be positive".into()));
        }
        Ok(())
    }

    /// The mixed tolerance handed to library routines: `rel = tol`,
    /// `abs = tol/1000`.
    pub fn tolerance(&self) -> Tolerance {
        Tolerance::new(self.tol, self.tol / INEQUALITY_SLACK_RATIO)
            .expect("validated tolerance is positive")
    }
}

/// Outcome of one suite run; serialized verbatim as the CLI report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub trials: u64,
    pub dimension: usize,
    pub max_residual: f64,
    pub passed: bool,
    pub seed: u64,
}

pub fn run(suite: Suite, config: &CheckConfig) -> std::result::Result<CheckReport, CliError> {
    config.validate()?;
    let max_residual = match suite {
        Suite::All => Suite::EACH
            .iter()
            .map(|&s| run_trials(s, config))
            .fold(0.0, combine),
        s => run_trials(s, config),
    };
    Ok(CheckReport {
        suite: suite.name().to_owned(),
        trials: config.trials,
        dimension: config.dim,
        max_residual,
        passed: max_residual <= config.tol,
        seed: config.seed,
    })
}

fn combine(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        FAILED
    } else {
        a.max(b)
    }
}

fn run_trials(suite: Suite, config: &CheckConfig) -> f64 {
    (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(suite, config, i))
        .reduce(|| 0.0, combine)
}

fn run_trial(suite: Suite, config: &CheckConfig, index: u64) -> f64 {
    let mut ctx = Trial {
        sampler: Sampler::with_stream(config.seed, (suite.tag() << 40) | index),
        config,
        max: 0.0,
    };
    let body = match suite {
        Suite::GyrogroupAxioms => gyrogroup_axioms,
        Suite::RapidityLaws => rapidity_laws,
        Suite::GyroIdentities => gyro_identities,
        Suite::MetricAxioms => metric_axioms,
        Suite::Oracles => oracles,
        Suite::IsometryGroup => isometry_group,
        Suite::CompositionLaw => composition_law,
        Suite::Symmetry => symmetry,
        Suite::Boosts => boosts,
        Suite::All => unreachable!("`all` is expanded by the caller"),
    };
    match body(&mut ctx) {
        Ok(()) => ctx.max,
        Err(_) => FAILED,
    }
}

struct Trial<'a> {
    sampler: Sampler,
    config: &'a CheckConfig,
    max: f64,
}

impl Trial<'_> {
    fn point(&mut self) -> Result<BallPoint> {
        BallPoint::sample(&mut self.sampler, self.config.dim, self.config.rmax)
    }

    fn isometry(&mut self) -> Result<Isometry> {
        let u = self.point()?;
        let tau = self.sampler.orthogonal(self.config.dim)?;
        Isometry::new(u, tau)
    }

    fn eq(&mut self, residual: f64) {
        self.max = combine(self.max, residual.abs());
    }

    fn pt_eq(&mut self, a: &BallPoint, b: &BallPoint) -> Result<()> {
        self.eq(a.max_abs_diff(b)?);
        Ok(())
    }

    fn le(&mut self, lhs: f64, rhs: f64) {
        self.eq(INEQUALITY_SLACK_RATIO * (lhs - rhs).max(0.0));
    }

    fn require(&mut self, ok: bool) {
        if !ok {
            self.max = FAILED;
        }
    }
}

fn gyrogroup_axioms(t: &mut Trial) -> Result<()> {
    let (u, v, w) = (t.point()?, t.point()?, t.point()?);
    let zero = BallPoint::origin(t.config.dim);

    t.pt_eq(&add(&zero, &v)?, &v)?;
    t.pt_eq(&add(&v, &zero)?, &v)?;
    t.eq(add(&v.neg(), &v)?.norm());
    t.eq(add(&v, &v.neg())?.norm());

    let left = add(&u, &add(&v, &w)?)?;
    t.pt_eq(&left, &add(&add(&u, &v)?, &gyr_apply(&u, &v, &w)?)?)?;
    let right = add(&add(&u, &v)?, &w)?;
    t.pt_eq(&right, &add(&u, &add(&v, &gyr_apply(&v, &u, &w)?)?)?)?;

    let g = gyr_matrix(&u, &v)?;
    t.eq(gyr_matrix(&add(&u, &v)?, &v)?.max_abs_diff(&g)?);
    t.eq(gyr_matrix(&u, &add(&v, &u)?)?.max_abs_diff(&g)?);

    t.pt_eq(&add(&u, &v)?, &gyr_apply(&u, &v, &add(&v, &u)?)?)
}

fn rapidity_laws(t: &mut Trial) -> Result<()> {
    let (u, v, w) = (t.point()?, t.point()?, t.point()?);

    t.eq(rapidity(&BallPoint::origin(t.config.dim)));
    // artanh x ≥ x makes positivity quantitative
    t.le(v.norm(), rapidity(&v));
    t.require(v.is_origin() || rapidity(&v) > 0.0);
    t.eq(rapidity(&v.neg()) - rapidity(&v));

    let sum = add(&u, &v)?;
    t.le(rapidity(&sum), rapidity(&u) + rapidity(&v));
    let (a, b) = (u.norm(), v.norm());
    t.le(sum.norm(), (a + b) / (1.0 + a * b));

    let turned = gyr_apply(&u, &v, &w)?;
    t.eq(rapidity(&turned) - rapidity(&w));
    t.eq(turned.norm() - w.norm());
    Ok(())
}

fn gyro_identities(t: &mut Trial) -> Result<()> {
    let (u, v, w) = (t.point()?, t.point()?, t.point()?);

    t.pt_eq(&sub(&u, &add(&u, &v)?)?, &v)?;
    t.pt_eq(
        &add(&u, &v)?.neg(),
        &gyr_apply(&u, &v, &add(&v.neg(), &u.neg())?)?,
    )?;
    let three = add(&sub(&u, &v)?, &gyr_apply(&u.neg(), &v, &sub(&v, &w)?)?)?;
    t.pt_eq(&three, &sub(&u, &w)?)?;

    let g = gyr_matrix(&u, &v)?;
    t.eq(gyr_matrix(&u.neg(), &v.neg())?.max_abs_diff(&g)?);
    t.eq(gyr_matrix(&v, &u)?.compose(&g)?.identity_residual());

    t.pt_eq(&add(&u.neg(), &add(&u, &w)?)?, &w)?;
    t.pt_eq(&add(&u, &add(&u.neg(), &w)?)?, &w)
}

fn metric_axioms(t: &mut Trial) -> Result<()> {
    let (u, v, w) = (t.point()?, t.point()?, t.point()?);
    let chord = u.as_vector().distance(v.as_vector())?;

    for (metric, lower) in [(dist as fn(&_, &_) -> _, chord), (gyrometric, chord.tanh())] {
        let uv = metric(&u, &v)?;
        t.le(0.0 - uv, 0.0);
        t.eq(metric(&u, &u)?);
        // both metrics dominate the Euclidean chord, which gives
        // identity of indiscernibles a quantitative form
        t.le(lower, uv);
        t.eq(uv - metric(&v, &u)?);
        t.le(metric(&u, &w)?, uv + metric(&v, &w)?);
    }
    t.eq(dist(&u, &v)?.tanh() - gyrometric(&u, &v)?);
    Ok(())
}

fn oracles(t: &mut Trial) -> Result<()> {
    let (u, v) = (t.point()?, t.point()?);
    let d = dist(&u, &v)?;
    t.eq(d - dist_oracle_cosh(&u, &v)?);
    t.eq((d - dist_oracle_crossratio(&u, &v)?) / CROSSRATIO_TOL_FACTOR);
    Ok(())
}

fn isometry_group(t: &mut Trial) -> Result<()> {
    let (f, g, h) = (t.isometry()?, t.isometry()?, t.isometry()?);
    let (x, w) = (t.point()?, t.point()?);
    let n = t.config.dim;

    let fg = f.compose(&g)?;
    t.pt_eq(&fg.apply(&w)?, &f.apply(&g.apply(&w)?)?)?;
    t.eq(fg.rotation_part().residual());
    t.eq(fg.compose(&h)?.max_abs_diff(&f.compose(&g.compose(&h)?)?)?);

    let id = Isometry::identity(n);
    t.eq(id.compose(&f)?.max_abs_diff(&f)?);
    t.eq(f.compose(&id)?.max_abs_diff(&f)?);
    t.eq(f.compose(&f.invert())?.identity_residual());
    t.eq(f.invert().compose(&f)?.identity_residual());

    t.eq(dist(&f.apply(&x)?, &f.apply(&w)?)? - dist(&x, &w)?);

    let tol = t.config.tolerance();
    let recovered = decompose(|p| f.apply(p).expect("dimensions agree"), n, tol)?;
    t.eq(recovered.isometry.max_abs_diff(&f)?);

    // n + 1 generic probes pin down (u, τ)
    let mut pairs = vec![(BallPoint::origin(n), f.apply(&BallPoint::origin(n))?)];
    let radius = t.config.rmax.max(FIT_PROBE_MIN_RADIUS);
    for _ in 0..n {
        let p = BallPoint::sample(&mut t.sampler, n, radius)?;
        let image = f.apply(&p)?;
        pairs.push((p, image));
    }
    let fitted = fit_pairs(&pairs, tol)?;
    t.eq(fitted.isometry.max_abs_diff(&f)?);
    Ok(())
}

fn composition_law(t: &mut Trial) -> Result<()> {
    let (f, g) = (t.isometry()?, t.isometry()?);
    let (x, y, w) = (t.point()?, t.point()?, t.point()?);
    let (u, alpha) = (f.translation_part(), f.rotation_part());
    let (v, beta) = (g.translation_part(), g.rotation_part());

    // map form: (L_u∘α)∘(L_v∘β) = L_{u⊕α(v)} ∘ gyr[u, α(v)] ∘ α ∘ β
    let av = v.rotate(alpha)?;
    let direct = add(u, &add(v, &w.rotate(beta)?)?.rotate(alpha)?)?;
    let law = add(
        &add(u, &av)?,
        &gyr_apply(u, &av, &w.rotate(beta)?.rotate(alpha)?)?,
    )?;
    t.pt_eq(&direct, &law)?;

    // pair form
    let fg = f.compose(&g)?;
    t.pt_eq(fg.translation_part(), &add(u, &av)?)?;
    let tau = gyr_matrix(u, &av)?.compose(&alpha.compose(beta)?)?;
    t.eq(fg.rotation_part().max_abs_diff(&tau)?);

    let lu_lv = Isometry::translation(u.clone()).compose(&Isometry::translation(v.clone()))?;
    t.pt_eq(lu_lv.translation_part(), &add(u, v)?)?;
    t.eq(lu_lv.rotation_part().max_abs_diff(&gyr_matrix(u, v)?)?);

    let d = dist(&x, &y)?;
    t.eq(dist(&add(u, &x)?, &add(u, &y)?)? - d);
    t.eq(dist(&x.rotate(alpha)?, &y.rotate(alpha)?)? - d);
    t.pt_eq(
        &add(&x, &y)?.rotate(alpha)?,
        &add(&x.rotate(alpha)?, &y.rotate(alpha)?)?,
    )?;
    t.eq(dist(&gyr_apply(u, v, &x)?, &gyr_apply(u, v, &y)?)? - d);
    t.pt_eq(
        &gyr_apply(u, v, &add(&x, &y)?)?,
        &add(&gyr_apply(u, v, &x)?, &gyr_apply(u, v, &y)?)?,
    )
}

fn symmetry(t: &mut Trial) -> Result<()> {
    let (u, v, w) = (t.point()?, t.point()?, t.point()?);

    let carry = transport(&u, &v)?;
    t.pt_eq(&carry.apply(&u)?, &v)?;
    t.eq(dist(&carry.apply(&w)?, &v)? - dist(&w, &u)?);

    let sigma = point_reflection(&v)?;
    t.pt_eq(&sigma.apply(&v)?, &v)?;
    t.eq(sigma.compose(&sigma)?.identity_residual());
    let image = sigma.apply(&w)?;
    t.pt_eq(&sigma.apply(&image)?, &w)?;
    t.eq(dist(&image, &sigma.apply(&u)?)? - dist(&w, &u)?);
    if w.as_vector().distance(v.as_vector())? > FIXED_POINT_EXCLUSION {
        t.require(image.as_vector().distance(w.as_vector())? > t.config.tol);
    }
    Ok(())
}

fn boosts(t: &mut Trial) -> Result<()> {
    let (u, v) = (t.point()?, t.point()?);

    for p in [&u, &v, &add(&u, &v)?] {
        let b = boost::boost(p);
        t.eq(b.minkowski_residual());
        t.eq(b.matrix().get(0, 0) - p.gamma());
        t.eq(b.matrix().max_abs_diff(&b.matrix().transpose())?);
    }
    t.eq(boost::boost_compose_residual(&u, &v)?);
    t.eq(boost::gyr_block_residual(&u, &v)?);

    let along = BallPoint::new(u.as_vector().scaled(2.0 * t.sampler.uniform() - 1.0))?;
    t.eq(boost::thomas_rotation(&u, &along)?
        .matrix
        .identity_residual());
    t.eq(boost::boost_compose_residual(&u, &along)?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!(
            "nope".parse::<Suite>(),
            Err(CliError::UnknownSuite(_))
        ));
    }

    #[test]
    fn tiny_radius_gives_exact_identities() {
        let config = CheckConfig {
            dim: 2,
            trials: 1,
            rmax: 1e-310,
            seed: 3,
            tol: 1e-9,
        };
        let report = run(Suite::GyrogroupAxioms, &config).unwrap();
        assert_eq!(report.max_residual, 0.0);
        assert!(report.passed);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let base = CheckConfig::default();
        for bad in [
            CheckConfig { dim: 1, ..base },
            CheckConfig { trials: 0, ..base },
            CheckConfig { rmax: 1.0, ..base },
            CheckConfig { tol: 0.0, ..base },
        ] {
            assert!(run(Suite::RapidityLaws, &bad).is_err());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let config = CheckConfig {
            trials: 64,
            seed: 17,
            ..CheckConfig::default()
        };
        assert_eq!(
            run(Suite::All, &config).unwrap(),
            run(Suite::All, &config).unwrap()
        );
    }

    #[test]
    fn inequality_violations_fail_regardless_of_size() {
        let config = CheckConfig::default();
        let mut t = Trial {
            sampler: Sampler::new(0),
            config: &config,
            max: 0.0,
        };
        t.le(1.0 + 0.5e-12, 1.0);
        assert!(t.max <= config.tol);
        t.le(1.0 + 2e-12, 1.0);
        assert!(t.max > config.tol);
        t.require(false);
        assert_eq!(t.max, FAILED);
    }
}
