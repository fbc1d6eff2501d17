use clap::{Args, Parser, Subcommand, ValueEnum};
use gyroball_core::gyro::{self, BallPoint};
use gyroball_core::{boost, isometry, metric, Isometry, Tolerance};
use serde::Serialize;

use crate::check::{self, CheckConfig, Suite};
use crate::error::{exit, CliError};
use crate::io::{self, IsometryJson};

/// Einstein gyrogroup calculator and identity checker.
///
/// Vectors are JSON arrays, isometries are `{"u": [...], "tau": [[...], ...]}`.
/// Any data argument may be given as `@path` to read it from a file.
#[derive(Debug, Parser)]
#[command(name = "gyroball", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct Global {
    /// Tolerance for approximate comparisons
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for random sampling
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sampling radius for random points
    #[arg(long, global = true, default_value_t = 0.95)]
    pub rmax: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum DistMethod {
    #[default]
    Direct,
    Cosh,
    Crossratio,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// u ⊕ v
    Add { u: String, v: String },
    /// (−u) ⊕ v
    Sub { u: String, v: String },
    /// −v
    Neg { v: String },
    /// Lorentz factor of v
    Gamma { v: String },
    /// Gyration of w generated by u and v
    Gyr { u: String, v: String, w: String },
    /// Matrix of the gyration generated by u and v, as rows
    GyrMatrix { u: String, v: String },
    /// Rapidity of v
    Rapidity { v: String },
    /// Rapidity distance between u and v
    Dist {
        u: String,
        v: String,
        #[arg(long, value_enum, default_value_t)]
        method: DistMethod,
    },
    /// Norm of (−u) ⊕ v
    Gyrometric { u: String, v: String },
    /// Image of x under an isometry
    Apply { f: String, x: String },
    /// f ∘ g
    Compose { f: String, g: String },
    /// Inverse isometry
    Invert { f: String },
    /// Recover (u, tau) from probe pairs `[{"input": [...], "output": [...]}, ...]`
    ///
    /// The pairs must include the origin as an input, plus enough other
    /// inputs to span the space.
    Decompose { pairs: String },
    /// Point reflection about v
    Reflect { v: String },
    /// Isometry carrying u to v
    Transport { u: String, v: String },
    /// Lorentz boost matrix of velocity v
    Boost { v: String },
    /// Thomas rotation of the boosts for u and v
    Thomas { u: String, v: String },
    /// Run a randomized identity suite
    Check {
        suite: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
}

/// What to print and which exit code to use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub json: String,
    pub code: i32,
}

impl Outcome {
    fn ok<T: Serialize + ?Sized>(value: &T) -> Self {
        Self {
            json: io::to_json(value),
            code: exit::OK,
        }
    }
}

#[derive(Serialize)]
struct Decomposed {
    u: Vec<f64>,
    tau: Vec<Vec<f64>>,
    max_residual: f64,
}

#[derive(Serialize)]
struct Thomas {
    matrix: Vec<Vec<f64>>,
    angle: Option<f64>,
}

impl Global {
    fn tolerance(&self) -> Result<Tolerance, CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Argument("tol must be positive".into()));
        }
        Ok(Tolerance::new(
            self.tol,
            self.tol / check::INEQUALITY_SLACK_RATIO,
        )?)
    }
}

fn point(arg: &str) -> Result<BallPoint, CliError> {
    io::parse_point(&io::read_arg(arg)?)
}

fn iso(arg: &str, tol: Tolerance) -> Result<Isometry, CliError> {
    io::parse_isometry(&io::read_arg(arg)?, tol)
}

fn iso_out(f: &Isometry) -> Outcome {
    Outcome::ok(&IsometryJson::from_isometry(f))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = cli.global;
    let tol = g.tolerance()?;
    let out = match &cli.command {
        Command::Add { u, v } => Outcome::ok(gyro::add(&point(u)?, &point(v)?)?.as_slice()),
        Command::Sub { u, v } => Outcome::ok(gyro::sub(&point(u)?, &point(v)?)?.as_slice()),
        Command::Neg { v } => Outcome::ok(point(v)?.neg().as_slice()),
        Command::Gamma { v } => Outcome::ok(&point(v)?.gamma()),
        Command::Gyr { u, v, w } => {
            Outcome::ok(gyro::gyr_apply(&point(u)?, &point(v)?, &point(w)?)?.as_slice())
        }
        Command::GyrMatrix { u, v } => Outcome::ok(
            &gyro::gyr_matrix(&point(u)?, &point(v)?)?
                .as_matrix()
                .to_rows(),
        ),
        Command::Rapidity { v } => Outcome::ok(&metric::rapidity(&point(v)?)),
        Command::Dist { u, v, method } => {
            let (u, v) = (point(u)?, point(v)?);
            let d = match method {
                DistMethod::Direct => metric::dist(&u, &v)?,
                DistMethod::Cosh => metric::dist_oracle_cosh(&u, &v)?,
                DistMethod::Crossratio => metric::dist_oracle_crossratio(&u, &v)?,
            };
            Outcome::ok(&d)
        }
        Command::Gyrometric { u, v } => Outcome::ok(&metric::gyrometric(&point(u)?, &point(v)?)?),
        Command::Apply { f, x } => Outcome::ok(iso(f, tol)?.apply(&point(x)?)?.as_slice()),
        Command::Compose { f, g } => iso_out(&iso(f, tol)?.compose(&iso(g, tol)?)?),
        Command::Invert { f } => iso_out(&iso(f, tol)?.invert()),
        Command::Decompose { pairs } => {
            let pairs = io::parse_probe_pairs(&io::read_arg(pairs)?)?;
            let fit = isometry::fit_pairs(&pairs, tol)?;
            let parts = IsometryJson::from_isometry(&fit.isometry);
            Outcome::ok(&Decomposed {
                u: parts.u,
                tau: parts.tau,
                max_residual: fit.max_residual,
            })
        }
        Command::Reflect { v } => iso_out(&isometry::point_reflection(&point(v)?)?),
        Command::Transport { u, v } => iso_out(&isometry::transport(&point(u)?, &point(v)?)?),
        Command::Boost { v } => Outcome::ok(&boost::boost(&point(v)?).matrix().to_rows()),
        Command::Thomas { u, v } => {
            let r = boost::thomas_rotation(&point(u)?, &point(v)?)?;
            Outcome::ok(&Thomas {
                matrix: r.matrix.as_matrix().to_rows(),
                angle: r.angle(),
            })
        }
        Command::Check { suite, dim, trials } => {
            let suite: Suite = suite.parse()?;
            let config = CheckConfig {
                dim: *dim,
                trials: *trials,
                rmax: g.rmax,
                seed: g.seed,
                tol: g.tol,
            };
            let report = check::run(suite, &config)?;
            let code = if report.passed {
                exit::OK
            } else {
                exit::CHECK_FAILED
            };
            Outcome {
                json: io::to_json(&report),
                code,
            }
        }
    };
    Ok(out)
}
