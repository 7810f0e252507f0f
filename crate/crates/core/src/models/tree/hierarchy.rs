//! Spectrum of the tree density matrix without forming it.
//!
//! Writing `u_m` for the amplitude vector of a fresh depth-`m` tree and
//! `P = diag(|b_k|^2)` for the splitter probabilities, the depth-`tau` state is
//!
//! ```text
//! rho_tau = Q_tau,   Q_m = c_(tau-m) u_m u_m†  +  P ⊗ Q_(m-1),   Q_0 = c_tau
//! c_0 = beta^tau,    c_K = (1 - beta) beta^(tau-K)  (K >= 1)
//! ```
//!
//! i.e. every node at depth `K` contributes its subtree's amplitude projector
//! with weight `c_K`. Since `u_m = b ⊗ u_(m-1)`, the overlap of `u_m` with the
//! eigenvectors of `P ⊗ Q_(m-1)` follows from that of `u_(m-1)` with the
//! eigenvectors of `Q_(m-1)`, and each level is a rank-one update of a known
//! spectrum. Only the part of the spectrum that `u_m` sees is ever updated;
//! the rest is carried as `(eigenvalue, multiplicity)` pairs.

use crate::error::{Result, WalkError};
use crate::numerics::{entropy_term, rank_one_update, Spectrum, TOL_PSD};

use super::TreeParams;

/// Multiset entries closer than this (relative) are pooled.
const POOL_RTOL: f64 = 1e-12;

/// Eigenvalues with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeSpectrum {
    eigenvalues: Vec<(f64, u64)>,
}

impl TreeSpectrum {
    pub fn eigenvalues(&self) -> &[(f64, u64)] {
        &self.eigenvalues
    }

    pub fn dimension(&self) -> u64 {
        self.eigenvalues.iter().map(|e| e.1).sum()
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().map(|&(x, m)| x * m as f64).sum()
    }

    pub fn entropy(&self) -> Result<f64> {
        let mut s = 0.0;
        for &(x, m) in &self.eigenvalues {
            if x < -TOL_PSD {
                return Err(WalkError::NotPositiveSemidefinite { eigenvalue: x });
            }
            s += m as f64 * entropy_term(x);
        }
        Ok(s.max(0.0))
    }

    /// Expands multiplicities into a flat descending spectrum.
    pub fn to_spectrum(&self) -> Spectrum {
        let flat = self.eigenvalues.iter().flat_map(|&(x, m)| std::iter::repeat(x).take(m as usize)).collect();
        Spectrum::new(flat)
    }
}

/// Node weights `c_0 ..= c_tau`.
pub fn level_coefficients(tau: usize, beta: f64) -> Vec<f64> {
    let pow = |n: usize| beta.powi(n as i32);
    (0..=tau).map(|k| if k == 0 { pow(tau) } else { (1.0 - beta) * pow(tau - k) }).collect()
}

fn pool(mut entries: Vec<(f64, u64)>) -> Vec<(f64, u64)> {
    entries.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, u64)> = Vec::with_capacity(entries.len());
    for (x, m) in entries {
        match out.last_mut() {
            Some(last) if (x - last.0).abs() <= POOL_RTOL * x.abs().max(last.0.abs()) => last.1 += m,
            _ => out.push((x, m)),
        }
    }
    out
}

/// Spectrum of the depth-`tau` tree density matrix.
pub fn hierarchical_spectrum(p: &TreeParams, tau: usize) -> Result<TreeSpectrum> {
    let dim = p.leaf_count(tau).ok_or(WalkError::DimensionCap {
        dim: (p.outputs() as u128).checked_pow(tau as u32).unwrap_or(u128::MAX),
        cap: u64::MAX as usize,
    })?;
    let probs = p.branch_probabilities();
    let coeffs = level_coefficients(tau, p.overlap().beta());

    // Spectral measure of u_m (visible) and the eigenvalues it cannot see (hidden).
    let mut visible: Vec<(f64, f64)> = vec![(coeffs[tau], 1.0)];
    let mut hidden: Vec<(f64, u64)> = Vec::new();

    for m in 1..=tau {
        let poles: Vec<(f64, f64)> =
            probs.iter().flat_map(|&pk| visible.iter().map(move |&(d, w)| (pk * d, pk * w))).collect();
        let scaled: Vec<(f64, u64)> =
            probs.iter().flat_map(|&pk| hidden.iter().map(move |&(x, mult)| (pk * x, mult))).collect();
        let outcome = rank_one_update(poles, coeffs[tau - m]);
        visible = outcome.visible;
        hidden = pool(scaled.into_iter().chain(outcome.deflated.into_iter().map(|x| (x, 1))).collect());
    }

    let eigenvalues = pool(visible.into_iter().map(|(x, _)| (x, 1)).chain(hidden).collect());
    let spectrum = TreeSpectrum { eigenvalues };
    debug_assert_eq!(spectrum.dimension(), dim);
    Ok(spectrum)
}
