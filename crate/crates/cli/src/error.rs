use std::io;

use grassframe::constructions::ConstructionError;
use grassframe::coreanalysis::CoreError;
use grassframe::{FrameError, NumericsError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("{failed} check(s) failed")]
    CheckFailed { failed: usize },
}

impl CliError {
    /// 1 usage, 2 parse or validation, 3 numerical failure, 4 failed check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Frame(e) => numerical_or(match e {
                FrameError::Numerics(n) => n.is_numerical(),
                FrameError::InconsistentVerdict { .. } => true,
                _ => false,
            }),
            CliError::Numerics(e) => numerical_or(e.is_numerical()),
            CliError::Core(e) => numerical_or(e.is_numerical()),
            CliError::Construction(e) => numerical_or(e.is_numerical()),
            CliError::CheckFailed { .. } => 4,
        }
    }
}

fn numerical_or(numerical: bool) -> i32 {
    if numerical {
        3
    } else {
        2
    }
}
