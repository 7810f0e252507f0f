use std::path::PathBuf;

use thiserror::Error;
use walk_core::WalkError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("nothing to plot: {0}")]
    EmptyPlot(String),
    #[error(transparent)]
    Model(#[from] WalkError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::EmptyPlot(_) => EXIT_INVALID_INPUT,
            CliError::Io { .. } => EXIT_FAILURE,
            CliError::Model(e) => match e {
                WalkError::InvalidTransparency(_)
                | WalkError::InvalidBeta(_)
                | WalkError::InvalidWindow(_)
                | WalkError::InvalidSplitter(_)
                | WalkError::InvalidDigit { .. }
                | WalkError::DimensionCap { .. }
                | WalkError::PathCap { .. }
                | WalkError::SeriesTooShort { .. }
                | WalkError::DegenerateWindow { .. }
                | WalkError::UnknownModel(_)
                | WalkError::InvalidParameter(_) => EXIT_INVALID_INPUT,
                WalkError::NonHermitianInput { .. }
                | WalkError::ConvergenceFailure { .. }
                | WalkError::NotPositiveSemidefinite { .. }
                | WalkError::InvalidDistribution(_)
                | WalkError::LengthMismatch(..) => EXIT_FAILURE,
            },
        }
    }
}
