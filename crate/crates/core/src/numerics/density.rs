use std::fmt;

use super::eigen::{hermitian_eigenvalues, TOL_HERMITIAN};
use super::matrix::CMatrix;

pub const TOL_TRACE: f64 = 1e-9;
pub const TOL_PSD: f64 = 1e-9;

/// A density operator over a finite labeled basis.
///
/// Construction does not enforce the physical invariants; call
/// [`DensityMatrix::validate`] to get the list of violations.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<L> {
    matrix: CMatrix,
    labels: Vec<L>,
}

impl<L> DensityMatrix<L> {
    /// Panics if the label count does not match the matrix dimension.
    pub fn new(matrix: CMatrix, labels: Vec<L>) -> Self {
        assert_eq!(matrix.dim(), labels.len(), "one label per basis state");
        Self { matrix, labels }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn into_parts(self) -> (CMatrix, Vec<L>) {
        (self.matrix, self.labels)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_matrix(&self.matrix)
    }
}

impl DensityMatrix<usize> {
    /// Density matrix labeled by plain basis indices.
    pub fn unlabeled(matrix: CMatrix) -> Self {
        let labels = (0..matrix.dim()).collect();
        Self::new(matrix, labels)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Empty,
    NotHermitian { row: usize, col: usize, deviation: f64 },
    TraceNotReal { imag: f64 },
    TraceNotUnit { trace: f64 },
    NegativeEigenvalue { eigenvalue: f64 },
    EigensolverFailed(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "zero-dimensional matrix"),
            Violation::NotHermitian { row, col, deviation } => {
                write!(f, "Hermiticity broken at ({row}, {col}) by {deviation:e}")
            }
            Violation::TraceNotReal { imag } => write!(f, "trace has imaginary part {imag:e}"),
            Violation::TraceNotUnit { trace } => write!(f, "trace {trace} differs from 1"),
            Violation::NegativeEigenvalue { eigenvalue } => write!(f, "eigenvalue {eigenvalue:e} < 0"),
            Violation::EigensolverFailed(msg) => write!(f, "eigensolver failed: {msg}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_trace_violation(&self) -> bool {
        self.violations
            .iter()
            .any(|v| matches!(v, Violation::TraceNotUnit { .. } | Violation::TraceNotReal { .. }))
    }

    pub fn has_hermiticity_violation(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, Violation::NotHermitian { .. }))
    }
}

/// Checks Hermiticity, unit real trace and positivity at the crate tolerances.
pub fn validate_matrix(m: &CMatrix) -> ValidationReport {
    let mut violations = Vec::new();
    if m.dim() == 0 {
        violations.push(Violation::Empty);
        return ValidationReport { violations };
    }
    let (deviation, row, col) = m.hermiticity_defect();
    if deviation > TOL_HERMITIAN {
        violations.push(Violation::NotHermitian { row, col, deviation });
    }
    let tr = m.trace();
    if tr.im.abs() > TOL_TRACE {
        violations.push(Violation::TraceNotReal { imag: tr.im });
    }
    if (tr.re - 1.0).abs() > TOL_TRACE {
        violations.push(Violation::TraceNotUnit { trace: tr.re });
    }
    // Positivity is only meaningful for a Hermitian matrix.
    if deviation <= TOL_HERMITIAN {
        match hermitian_eigenvalues(m) {
            Ok(spec) => {
                if let Some(min) = spec.min() {
                    if min < -TOL_PSD {
                        violations.push(Violation::NegativeEigenvalue { eigenvalue: min });
                    }
                }
            }
            Err(e) => violations.push(Violation::EigensolverFailed(e.to_string())),
        }
    }
    ValidationReport { violations }
}

pub fn validate_density_matrix<L>(m: &DensityMatrix<L>) -> ValidationReport {
    m.validate()
}
