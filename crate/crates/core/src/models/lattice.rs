//! Splitter lattice with interference, in its one-dimensional form: the line
//! walk, but every step meets a fresh pair of spin sets (one before the
//! scatterer, one after) that is never touched again.
//!
//! Within a step the particle rotates the pre-set spin indexed by its source
//! label and the post-set spin indexed by its destination label. Two branches
//! with different sources (destinations) therefore pick up an overlap factor
//! `beta` from the pre-set (post-set), which factorizes the step as
//! `rho -> D(U D(rho) U†)` with `D` scaling every coherence by `beta`.

use std::collections::BTreeMap;

use crate::error::{Result, WalkError};
use crate::numerics::{von_neumann_entropy, Amplitude, CMatrix, DensityMatrix};
use crate::series::{EntropySeries, RunMeta};

use super::line::{CellLabel, Direction};
use super::params::{ReservoirOverlap, ScattererParams};

/// Labels whose population falls below this are dropped; for a positive
/// semidefinite matrix their whole row is then below `1e-15`.
const DROP_POPULATION_BELOW: f64 = 1e-30;

/// Deepest trajectory enumeration the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_TAU: usize = 12;

/// What a branch writes into the spin sets of one step.
///
/// Both marks use the full `(cell, dir)` label. Swapping this for a
/// position-only mark changes [`coherence_factor`] and the oracle together.
pub type Mark = CellLabel;

/// Overlap factor between two branches of one step, from their source and
/// destination marks.
pub fn coherence_factor(overlap: &ReservoirOverlap, src: (Mark, Mark), dst: (Mark, Mark)) -> f64 {
    let differing = usize::from(src.0 != src.1) + usize::from(dst.0 != dst.1);
    overlap.power(differing)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    tau: usize,
    rho: DensityMatrix<CellLabel>,
    params: ScattererParams,
    overlap: ReservoirOverlap,
}

pub fn init_lattice(transparency: f64, beta: f64) -> Result<LatticeState> {
    let params = ScattererParams::new(transparency)?;
    let overlap = ReservoirOverlap::new(beta)?;
    let rho = DensityMatrix::new(CMatrix::diagonal(&[1.0]), vec![CellLabel::right(0)]);
    Ok(LatticeState { tau: 0, rho, params, overlap })
}

fn dephase(m: &mut CMatrix, beta: f64) {
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if i != j {
                m[(i, j)] *= beta;
            }
        }
    }
}

/// One step: dephase by the pre-set, scatter, dephase by the post-set.
pub fn step_lattice(s: &LatticeState) -> LatticeState {
    let beta = s.overlap.beta();
    let labels = s.rho.labels();
    let mut before = s.rho.matrix().clone();
    dephase(&mut before, beta);

    let mut next_index: BTreeMap<CellLabel, usize> = BTreeMap::new();
    for l in labels {
        for (to, _, _) in l.successors() {
            next_index.entry(to).or_insert(0);
        }
    }
    for (k, v) in next_index.values_mut().enumerate() {
        *v = k;
    }
    // Sparse U: each source has two images.
    let images: Vec<[(usize, Amplitude); 2]> = labels
        .iter()
        .map(|l| l.successors().map(|(to, _, branch)| (next_index[&to], branch.amplitude(&s.params))))
        .collect();

    let mut after = CMatrix::zeros(next_index.len());
    for (a, img_a) in images.iter().enumerate() {
        for (b, img_b) in images.iter().enumerate() {
            let r = before[(a, b)];
            if r == Amplitude::default() {
                continue;
            }
            for &(ia, ua) in img_a {
                let ra = ua * r;
                for &(ib, ub) in img_b {
                    after[(ia, ib)] += ra * ub.conj();
                }
            }
        }
    }
    dephase(&mut after, beta);

    let new_labels: Vec<CellLabel> = next_index.keys().copied().collect();
    let keep: Vec<usize> = (0..new_labels.len()).filter(|&i| after[(i, i)].re >= DROP_POPULATION_BELOW).collect();
    let rho = if keep.len() == new_labels.len() {
        DensityMatrix::new(after, new_labels)
    } else {
        let m = CMatrix::from_fn(keep.len(), |i, j| after[(keep[i], keep[j])]);
        DensityMatrix::new(m, keep.iter().map(|&i| new_labels[i]).collect())
    };
    LatticeState { tau: s.tau + 1, rho, params: s.params, overlap: s.overlap }
}

impl LatticeState {
    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn rho(&self) -> &DensityMatrix<CellLabel> {
        &self.rho
    }

    pub fn params(&self) -> &ScattererParams {
        &self.params
    }

    pub fn overlap(&self) -> &ReservoirOverlap {
        &self.overlap
    }

    /// Population of a label, zero if unoccupied.
    pub fn population(&self, label: CellLabel) -> f64 {
        self.rho.labels().iter().position(|l| *l == label).map_or(0.0, |i| self.rho.matrix()[(i, i)].re)
    }

    pub fn entropy(&self) -> Result<f64> {
        von_neumann_entropy(&self.rho)
    }

    /// Parity and light-cone violations of the occupied labels.
    pub fn invariant_violations(&self) -> Vec<String> {
        let tau = self.tau as i64;
        let mut out = Vec::new();
        for l in self.rho.labels() {
            let even = (l.cell + tau).rem_euclid(2) == 0;
            let ok = match l.dir {
                Direction::Right => even,
                Direction::Left => !even,
            };
            if !ok {
                out.push(format!("{l} violates parity at tau={tau}"));
            }
            if l.cell.abs() > tau {
                out.push(format!("{l} outside light cone at tau={tau}"));
            }
        }
        out
    }
}

/// States for `tau = 0..=steps`.
pub fn lattice_trajectory(transparency: f64, beta: f64, steps: usize) -> Result<Vec<LatticeState>> {
    let mut out = vec![init_lattice(transparency, beta)?];
    for _ in 0..steps {
        let next = step_lattice(out.last().expect("non-empty"));
        out.push(next);
    }
    Ok(out)
}

pub fn run_lattice(transparency: f64, beta: f64, steps: usize) -> Result<EntropySeries> {
    let mut state = init_lattice(transparency, beta)?;
    let mut values = vec![state.entropy()?];
    for _ in 0..steps {
        state = step_lattice(&state);
        values.push(state.entropy()?);
    }
    let meta = RunMeta::new("lattice", steps).with_transparency(transparency).with_beta(beta);
    Ok(EntropySeries::new(values, meta))
}

struct Trajectory {
    amp: Amplitude,
    end: CellLabel,
    marks: Vec<(Mark, Mark)>,
}

/// Reduced density matrix by explicit enumeration of all `2^tau` branch
/// sequences and their spin marks. Exponential; used as an oracle.
pub fn brute_force_lattice(transparency: f64, beta: f64, tau: usize) -> Result<DensityMatrix<CellLabel>> {
    if tau > BRUTE_FORCE_MAX_TAU {
        return Err(WalkError::PathCap { tau, cap: BRUTE_FORCE_MAX_TAU });
    }
    let params = ScattererParams::new(transparency)?;
    let overlap = ReservoirOverlap::new(beta)?;

    let mut trajectories = Vec::with_capacity(1 << tau);
    for choice in 0u32..(1u32 << tau) {
        let mut amp = Amplitude::new(1.0, 0.0);
        let mut at = CellLabel::right(0);
        let mut marks = Vec::with_capacity(tau);
        for step in 0..tau {
            let [transmit, reflect] = at.successors();
            let (to, _, branch) = if choice >> step & 1 == 0 { transmit } else { reflect };
            amp *= branch.amplitude(&params);
            marks.push((at, to));
            at = to;
        }
        if amp.norm_sqr() > 0.0 {
            trajectories.push(Trajectory { amp, end: at, marks });
        }
    }

    let mut labels: Vec<CellLabel> = trajectories.iter().map(|t| t.end).collect();
    labels.sort();
    labels.dedup();
    let index: BTreeMap<CellLabel, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let mut rho = CMatrix::zeros(labels.len());
    for x in &trajectories {
        for y in &trajectories {
            let mut factor = 1.0;
            for (mx, my) in x.marks.iter().zip(&y.marks) {
                factor *= coherence_factor(&overlap, (mx.0, my.0), (mx.1, my.1));
            }
            rho[(index[&x.end], index[&y.end])] += x.amp * y.amp.conj() * factor;
        }
    }
    Ok(DensityMatrix::new(rho, labels))
}
