use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A property check ran to completion and failed.
    pub const CHECK_FAILED: i32 = 1;
    /// Malformed JSON, unreadable input, bad arguments or an unknown suite.
    pub const BAD_INPUT: i32 = 2;
    pub const OUTSIDE_BALL: i32 = 3;
    pub const DIMENSION: i32 = 4;
    pub const NOT_ORTHOGONAL: i32 = 5;
    pub const NOT_AN_ISOMETRY: i32 = 6;
    /// An internal consistency check tripped.
    pub const INTERNAL: i32 = 7;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Core(#[from] gyroball_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use gyroball_core::Error as E;
        match self {
            Self::Malformed(_) | Self::Io { .. } | Self::UnknownSuite(_) | Self::Argument(_) => {
                exit::BAD_INPUT
            }
            Self::Core(e) => match e {
                E::OutsideBall { .. } => exit::OUTSIDE_BALL,
                E::DimensionMismatch { .. } => exit::DIMENSION,
                E::NotOrthogonal { .. } => exit::NOT_ORTHOGONAL,
                E::NotAnIsometry { .. } => exit::NOT_AN_ISOMETRY,
                E::Empty | E::NonFinite | E::InvalidTolerance | E::InvalidArgument(_) => {
                    exit::BAD_INPUT
                }
                E::Degenerate { .. } | E::Singular | E::Inconsistent { .. } => exit::INTERNAL,
            },
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Malformed(e.to_string())
    }
}
