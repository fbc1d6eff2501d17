//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::{Command, ExitCode};
use std::time::Instant;

use gyroball::check::{self, CheckConfig, Suite};

const SEED: u64 = 42;

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn suites(suites: &[Suite], dims: &[usize], trials: u64, rmax: f64, tol: f64) -> Outcome {
    let mut worst = 0.0f64;
    let mut failed = Vec::new();
    for &suite in suites {
        for &dim in dims {
            let config = CheckConfig {
                dim,
                trials,
                rmax,
                seed: SEED,
                tol,
            };
            let report = check::run(suite, &config).expect("valid configuration");
            worst = worst.max(report.max_residual);
            if !report.passed {
                failed.push(format!("{suite}/n={dim}"));
            }
        }
    }
    let names: Vec<_> = suites.iter().map(|s| s.name()).collect();
    let mut detail = format!(
        "{} n={dims:?} trials={trials} rmax={rmax} tol={tol:e} max_residual={worst:e}",
        names.join(",")
    );
    if !failed.is_empty() {
        detail.push_str(&format!(" failed={}", failed.join(",")));
    }
    Outcome {
        passed: failed.is_empty(),
        detail,
    }
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gyroball"))
            .args([
                "check", "all", "--dim", "3", "--trials", "1000", "--seed", "42",
            ])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    let ok = a.status.success() && b.status.success();
    Outcome {
        passed: same && ok,
        detail: format!(
            "identical={same} exit={:?}/{:?} report={}",
            a.status.code(),
            b.status.code(),
            String::from_utf8_lossy(&a.stdout).trim()
        ),
    }
}

fn main() -> ExitCode {
    use Suite::*;
    let criteria: Vec<Criterion> = vec![
        (
            "gyrogroup axioms",
            Box::new(|| suites(&[GyrogroupAxioms], &[2, 3, 5], 10_000, 0.95, 1e-9)),
        ),
        (
            "rapidity properties",
            Box::new(|| suites(&[RapidityLaws], &[2, 3, 5], 10_000, 0.95, 1e-9)),
        ),
        (
            "gyrogroup identities",
            Box::new(|| suites(&[GyroIdentities], &[2, 3, 5], 10_000, 0.95, 1e-9)),
        ),
        (
            "metric axioms and oracles",
            Box::new(|| suites(&[MetricAxioms, Oracles], &[2, 3, 5], 10_000, 0.95, 1e-9)),
        ),
        (
            "isometry group",
            Box::new(|| {
                suites(
                    &[IsometryGroup, CompositionLaw],
                    &[2, 3, 5],
                    1_000,
                    0.95,
                    1e-9,
                )
            }),
        ),
        (
            "transports and point reflections",
            Box::new(|| suites(&[Symmetry], &[2, 3, 5], 1_000, 0.95, 1e-9)),
        ),
        (
            "boosts",
            Box::new(|| suites(&[Boosts], &[2, 3], 1_000, 0.95, 1e-9)),
        ),
        (
            "near-boundary stress",
            Box::new(|| suites(&Suite::EACH, &[2, 3, 5], 1_000, 0.999, 1e-6)),
        ),
        ("determinism", Box::new(determinism)),
    ];

    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {} [{verdict}] {name}: {} ({:.2}s)",
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        all &= outcome.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
