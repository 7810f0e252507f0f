//! Entropy functionals, all in nats.

use super::density::{DensityMatrix, TOL_PSD};
use super::eigen::hermitian_eigenvalues;
use super::matrix::CMatrix;
use crate::error::{Result, WalkError};

/// Tolerance on the normalization of a probability vector.
pub const TOL_PROBABILITY: f64 = 1e-9;

/// `-x ln x` with `0 ln 0 = 0`.
#[inline]
pub fn entropy_term(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.ln()
    } else {
        0.0
    }
}

/// `-sum lambda ln lambda`, clamping eigenvalues in `[-TOL_PSD, 0]` to zero.
///
/// An eigenvalue slightly above 1 contributes a tiny negative term; the sum is
/// clamped at zero so pure states report exactly 0.
pub fn spectral_entropy(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &x in eigenvalues {
        if x < -TOL_PSD {
            return Err(WalkError::NotPositiveSemidefinite { eigenvalue: x });
        }
        s += entropy_term(x);
    }
    Ok(s.max(0.0))
}

pub fn von_neumann_entropy_of(m: &CMatrix) -> Result<f64> {
    let spectrum = hermitian_eigenvalues(m)?;
    spectral_entropy(&spectrum.eigenvalues)
}

/// Von Neumann entropy `-Tr(rho ln rho)`.
pub fn von_neumann_entropy<L>(rho: &DensityMatrix<L>) -> Result<f64> {
    von_neumann_entropy_of(rho.matrix())
}

/// Labeled probability distribution. Entries lie in `[0, 1]` and sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector<L> {
    entries: Vec<(L, f64)>,
}

impl<L> ProbabilityVector<L> {
    pub fn new(entries: Vec<(L, f64)>) -> Result<Self> {
        check_distribution(entries.iter().map(|(_, p)| *p))?;
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(L, f64)] {
        &self.entries
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(_, p)| *p)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entropy(&self) -> f64 {
        self.values().map(entropy_term).sum()
    }
}

impl<L: PartialEq> ProbabilityVector<L> {
    pub fn get(&self, label: &L) -> f64 {
        self.entries.iter().find(|(l, _)| l == label).map_or(0.0, |(_, p)| *p)
    }
}

fn check_distribution(values: impl Iterator<Item = f64>) -> Result<()> {
    let mut total = 0.0;
    for p in values {
        if !p.is_finite() || !(-TOL_PROBABILITY..=1.0 + TOL_PROBABILITY).contains(&p) {
            return Err(WalkError::InvalidDistribution(format!("entry {p} outside [0, 1]")));
        }
        total += p;
    }
    if (total - 1.0).abs() > TOL_PROBABILITY {
        return Err(WalkError::InvalidDistribution(format!("entries sum to {total}")));
    }
    Ok(())
}

/// Shannon entropy `-sum p ln p` of a normalized distribution.
pub fn shannon_entropy(probabilities: &[f64]) -> Result<f64> {
    check_distribution(probabilities.iter().copied())?;
    Ok(probabilities.iter().copied().map(entropy_term).sum())
}
