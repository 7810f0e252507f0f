//! Complex matrices, Hermitian eigenvalues and entropy functionals shared by every model.

mod density;
mod eigen;
mod entropy;
mod matrix;
mod secular;

pub use density::{
    validate_density_matrix, validate_matrix, DensityMatrix, ValidationReport, Violation, TOL_PSD,
    TOL_TRACE,
};
pub use eigen::{hermitian_eigenvalues, Spectrum, TOL_HERMITIAN};
pub use entropy::{
    entropy_term, shannon_entropy, spectral_entropy, von_neumann_entropy, von_neumann_entropy_of,
    ProbabilityVector, TOL_PROBABILITY,
};
pub use matrix::CMatrix;
pub use secular::{rank_one_update, RankOneOutcome, MERGE_RTOL};

/// Complex probability amplitude.
pub type Amplitude = num_complex::Complex64;
