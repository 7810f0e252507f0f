use thiserror::Error;

pub type Result<T, E = WalkError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("transparency {0} outside [0, 1]")]
    InvalidTransparency(f64),
    #[error("overlap parameter beta = {0} outside [0, 1]")]
    InvalidBeta(f64),
    #[error("invalid spin window: {0}")]
    InvalidWindow(String),
    #[error("invalid splitter: {0}")]
    InvalidSplitter(String),
    #[error("matrix is not Hermitian: |a[{row}][{col}] - conj(a[{col}][{row}])| = {deviation:e}")]
    NonHermitianInput { row: usize, col: usize, deviation: f64 },
    #[error("eigenvalue iteration did not converge after {iterations} sweeps (dim {dim})")]
    ConvergenceFailure { dim: usize, iterations: usize },
    #[error("eigenvalue {eigenvalue:e} below the positivity tolerance")]
    NotPositiveSemidefinite { eigenvalue: f64 },
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),
    #[error("path digit {digit} out of range for {outputs} splitter outputs")]
    InvalidDigit { digit: u8, outputs: usize },
    #[error("path lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("basis dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: u128, cap: usize },
    #[error("path enumeration depth {tau} exceeds the cap of {cap}")]
    PathCap { tau: usize, cap: usize },
    #[error("series has {len} points, need at least {needed}")]
    SeriesTooShort { len: usize, needed: usize },
    #[error("fit window [{tau_min}, {tau_max}] has fewer than 3 usable points")]
    DegenerateWindow { tau_min: usize, tau_max: usize },
    #[error("unknown model '{0}'")]
    UnknownModel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
