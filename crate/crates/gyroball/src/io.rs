//! JSON encodings of points, matrices and isometries.
//!
//! - vector: `[x₁, …, xₙ]`
//! - matrix: array of rows
//! - isometry: `{"u": vector, "tau": matrix}`
//!
//! Numbers are written in shortest round-trip form, so re-reading an output
//! reproduces the exact `f64` values.

use std::fs;
use std::path::Path;

use gyroball_core::{BallPoint, Isometry, Matrix, OrthoMatrix, Tolerance, Vector};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Reads an argument that is either inline JSON or `@path` to a JSON file.
pub fn read_arg(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
            path: Path::new(path).to_path_buf(),
            source,
        }),
        None => Ok(arg.to_owned()),
    }
}

pub fn parse_vector(text: &str) -> Result<Vector, CliError> {
    let xs: Vec<f64> = serde_json::from_str(text)?;
    if xs.is_empty() {
        return Err(CliError::Malformed("empty vector".into()));
    }
    Ok(Vector::new(xs)?)
}

pub fn parse_point(text: &str) -> Result<BallPoint, CliError> {
    Ok(BallPoint::new(parse_vector(text)?)?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IsometryJson {
    pub u: Vec<f64>,
    pub tau: Vec<Vec<f64>>,
}

impl IsometryJson {
    pub fn from_isometry(f: &Isometry) -> Self {
        Self {
            u: f.translation_part().as_slice().to_vec(),
            tau: f.rotation_part().as_matrix().to_rows(),
        }
    }

    pub fn into_isometry(self, tol: Tolerance) -> Result<Isometry, CliError> {
        if self.u.is_empty() || self.tau.is_empty() {
            return Err(CliError::Malformed("empty isometry component".into()));
        }
        let u = BallPoint::new(Vector::new(self.u)?)?;
        let tau = OrthoMatrix::new(Matrix::from_rows(self.tau)?, tol)?;
        Ok(Isometry::new(u, tau)?)
    }
}

pub fn parse_isometry(text: &str, tol: Tolerance) -> Result<Isometry, CliError> {
    serde_json::from_str::<IsometryJson>(text)?.into_isometry(tol)
}

/// One sample of an unknown map, as read by `decompose`.
#[derive(Debug, Serialize, Deserialize)]
pub struct ProbePair {
    pub input: Vec<f64>,
    pub output: Vec<f64>,
}

pub fn parse_probe_pairs(text: &str) -> Result<Vec<(BallPoint, BallPoint)>, CliError> {
    let raw: Vec<ProbePair> = serde_json::from_str(text)?;
    raw.into_iter()
        .map(|p| {
            let x = BallPoint::new(Vector::new(p.input)?)?;
            let y = BallPoint::new(Vector::new(p.output)?)?;
            Ok((x, y))
        })
        .collect()
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("finite numbers always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_vectors_and_rejects_garbage() {
        assert_eq!(parse_vector("[0.3, 0.4]").unwrap().as_slice(), &[0.3, 0.4]);
        assert!(matches!(parse_vector("[0.3,"), Err(CliError::Malformed(_))));
        assert!(matches!(parse_vector("[]"), Err(CliError::Malformed(_))));
        assert!(matches!(
            parse_vector("{\"u\": 1}"),
            Err(CliError::Malformed(_))
        ));
        assert_eq!(parse_point("[1.0, 0]").unwrap_err().exit_code(), 3);
    }

    #[test]
    fn isometry_round_trip_is_exact() {
        let f = Isometry::new(
            BallPoint::from_slice(&[0.1, -0.3]).unwrap(),
            gyroball_core::linalg::random_orthogonal(2, 5).unwrap(),
        )
        .unwrap();
        let text = to_json(&IsometryJson::from_isometry(&f));
        assert_eq!(parse_isometry(&text, Tolerance::DEFAULT).unwrap(), f);
    }

    #[test]
    fn non_orthogonal_tau_is_rejected() {
        let err =
            parse_isometry(r#"{"u":[0,0],"tau":[[1,0.5],[0,1]]}"#, Tolerance::DEFAULT).unwrap_err();
        assert_eq!(err.exit_code(), 5);
    }
}
