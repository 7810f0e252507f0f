//! Interference-free splitter tree.
//!
//! A packet entering the root is split by a backscatter-free Z-output splitter
//! at every node, so after `tau` steps it occupies the `Z^tau` leaves, one per
//! path. Each edge carries a spin that is rotated when the packet passes; two
//! paths that agree on their first `d` edges leave records whose overlap is
//! `beta^(tau - d)`.

mod hierarchy;

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, WalkError};
use crate::numerics::{von_neumann_entropy, Amplitude, CMatrix, DensityMatrix};
use crate::series::{EntropySeries, RunMeta};

use super::params::ReservoirOverlap;

pub use hierarchy::{hierarchical_spectrum, level_coefficients, TreeSpectrum};

/// Largest dense density matrix built by default (`2^12`).
pub const DEFAULT_DIMENSION_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct TreeParams {
    branch_amps: Vec<Amplitude>,
    overlap: ReservoirOverlap,
}

impl TreeParams {
    /// Splitter with explicit output amplitudes; they must form a unit column.
    pub fn new(branch_amps: Vec<Amplitude>, overlap: ReservoirOverlap) -> Result<Self> {
        if branch_amps.len() < 2 {
            return Err(WalkError::InvalidSplitter(format!(
                "need at least 2 outputs, got {}",
                branch_amps.len()
            )));
        }
        if branch_amps.len() > u8::MAX as usize {
            return Err(WalkError::InvalidSplitter(format!("{} outputs is too many", branch_amps.len())));
        }
        let norm: f64 = branch_amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(WalkError::InvalidSplitter(format!("output probabilities sum to {norm}")));
        }
        Ok(Self { branch_amps, overlap })
    }

    /// `Z`-output splitter sending `T` into the first output (`sqrt(T)`) and
    /// sharing `1 - T` equally over the others (`i sqrt((1 - T)/(Z - 1))`).
    /// For `Z = 2` this is the scatterer pair `(t, r)`.
    pub fn splitter(outputs: usize, transparency: f64, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&transparency) {
            return Err(WalkError::InvalidTransparency(transparency));
        }
        if outputs < 2 {
            return Err(WalkError::InvalidSplitter(format!("need at least 2 outputs, got {outputs}")));
        }
        let overlap = ReservoirOverlap::new(beta)?;
        let side = Amplitude::new(0.0, ((1.0 - transparency) / (outputs - 1) as f64).sqrt());
        let mut amps = vec![Amplitude::new(transparency.sqrt(), 0.0)];
        amps.extend(std::iter::repeat(side).take(outputs - 1));
        Self::new(amps, overlap)
    }

    pub fn binary(transparency: f64, beta: f64) -> Result<Self> {
        Self::splitter(2, transparency, beta)
    }

    pub fn outputs(&self) -> usize {
        self.branch_amps.len()
    }

    pub fn branch_amps(&self) -> &[Amplitude] {
        &self.branch_amps
    }

    pub fn branch_probabilities(&self) -> Vec<f64> {
        self.branch_amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn overlap(&self) -> &ReservoirOverlap {
        &self.overlap
    }

    /// `Z^tau`, if it fits.
    pub fn leaf_count(&self, tau: usize) -> Option<u64> {
        (self.outputs() as u64).checked_pow(u32::try_from(tau).ok()?)
    }
}

/// Sequence of splitter outputs taken from the root, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathIndex {
    digits: Vec<u8>,
}

impl PathIndex {
    pub fn new(digits: Vec<u8>) -> Self {
        Self { digits }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Path number `index` in lexicographic order among the `outputs^tau` paths.
    pub fn from_index(mut index: usize, outputs: usize, tau: usize) -> Self {
        let mut digits = vec![0u8; tau];
        for d in digits.iter_mut().rev() {
            *d = (index % outputs) as u8;
            index /= outputs;
        }
        Self { digits }
    }

    /// All paths of length `tau`, lexicographically.
    pub fn enumerate(outputs: usize, tau: usize) -> impl Iterator<Item = PathIndex> {
        let count = outputs.pow(tau as u32);
        (0..count).map(move |i| PathIndex::from_index(i, outputs, tau))
    }
}

impl fmt::Display for PathIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("root");
        }
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for PathIndex {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| WalkError::InvalidParameter(format!("bad path digit '{c}'")))
            })
            .collect::<Result<Vec<u8>>>()
            .map(PathIndex::new)
    }
}

/// Product of the splitter amplitudes along the path.
pub fn path_amplitude(p: &TreeParams, path: &PathIndex) -> Result<Amplitude> {
    let mut amp = Amplitude::new(1.0, 0.0);
    for &d in path.digits() {
        let b = p
            .branch_amps
            .get(d as usize)
            .ok_or(WalkError::InvalidDigit { digit: d, outputs: p.outputs() })?;
        amp *= b;
    }
    Ok(amp)
}

/// Length of the common prefix of two equal-length paths.
pub fn divergence_depth(a: &PathIndex, b: &PathIndex) -> Result<usize> {
    if a.len() != b.len() {
        return Err(WalkError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.digits.iter().zip(&b.digits).take_while(|(x, y)| x == y).count())
}

/// Overlap of the spin records left by two paths, `beta^(tau - d)`.
///
/// Past the divergence point each path has rotated its own edge spins, one
/// `alpha` from one path and one `alpha*` from the other per level, so the
/// phase of `alpha` cancels.
pub fn overlap_kernel(a: &PathIndex, b: &PathIndex, overlap: &ReservoirOverlap) -> Result<f64> {
    let d = divergence_depth(a, b)?;
    Ok(overlap.power(a.len() - d))
}

/// Dense reduced density matrix over all `Z^tau` paths.
pub fn tree_density_matrix(p: &TreeParams, tau: usize, cap: usize) -> Result<DensityMatrix<PathIndex>> {
    let z = p.outputs();
    let dim = (z as u128).checked_pow(tau as u32).unwrap_or(u128::MAX);
    if dim > cap as u128 {
        return Err(WalkError::DimensionCap { dim, cap });
    }
    let dim = dim as usize;
    let paths: Vec<PathIndex> = PathIndex::enumerate(z, tau).collect();
    let amps = paths.iter().map(|path| path_amplitude(p, path)).collect::<Result<Vec<_>>>()?;
    let powers: Vec<f64> = (0..=tau).map(|k| p.overlap.power(k)).collect();
    let mut rho = CMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..=i {
            let d = paths[i].digits.iter().zip(&paths[j].digits).take_while(|(x, y)| x == y).count();
            let v = amps[i] * amps[j].conj() * powers[tau - d];
            rho[(i, j)] = v;
            rho[(j, i)] = v.conj();
        }
    }
    Ok(DensityMatrix::new(rho, paths))
}

/// How [`run_tree_with`] obtains the spectrum at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeSolver {
    /// Build the `Z^tau` density matrix and diagonalize it.
    Dense { cap: usize },
    /// Use the self-similar structure of the tree; no matrix is formed.
    Hierarchical,
}

impl Default for TreeSolver {
    fn default() -> Self {
        TreeSolver::Hierarchical
    }
}

pub fn tree_entropy(p: &TreeParams, tau: usize, solver: TreeSolver) -> Result<f64> {
    match solver {
        TreeSolver::Dense { cap } => von_neumann_entropy(&tree_density_matrix(p, tau, cap)?),
        TreeSolver::Hierarchical => hierarchical_spectrum(p, tau)?.entropy(),
    }
}

pub fn run_tree_with(p: &TreeParams, tau_max: usize, solver: TreeSolver) -> Result<EntropySeries> {
    let values = (0..=tau_max).map(|tau| tree_entropy(p, tau, solver)).collect::<Result<Vec<_>>>()?;
    let meta = RunMeta::new("tree", tau_max).with_outputs(p.outputs()).with_beta(p.overlap.beta());
    Ok(EntropySeries::new(values, meta))
}

/// Entropy series `S(0..=tau_max)`, using the hierarchical spectrum.
pub fn run_tree(p: &TreeParams, tau_max: usize) -> Result<EntropySeries> {
    run_tree_with(p, tau_max, TreeSolver::Hierarchical)
}
