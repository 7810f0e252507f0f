//! One-dimensional coherent walk through a chain of identical scatterers,
//! with π-rotating spins on some or all of the boundaries.
//!
//! Cells are integers. Boundary `k` separates cells `k` and `k + 1`, so the
//! right-moving particle released in cell 0 first hits boundary 0.
//!
//! A π rotation leaves a spin orthogonal to its initial state, so the spin
//! record of a branch is exact which-path information restricted to the
//! monitored boundaries: the record is the set of boundaries crossed an odd
//! number of times. Crossing parity of boundary `k` equals "the particle is
//! now on the far side of `k` from cell 0", which makes the record a pure
//! function of the current cell. With every boundary monitored, distinct
//! cells therefore carry orthogonal records and the reduced state is diagonal
//! in position; the `All` mode relies on this and stores no masks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Result, WalkError};
use crate::numerics::{
    shannon_entropy, von_neumann_entropy, Amplitude, CMatrix, DensityMatrix, ProbabilityVector,
};
use crate::series::{EntropySeries, RunMeta};

use super::params::ScattererParams;

/// Amplitudes below this magnitude are dropped after every step.
pub const PRUNE_BELOW: f64 = 1e-15;

/// Masks are `u64` bitfields.
pub const MAX_FINITE_SPINS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Right,
    Left,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Right => "R",
            Direction::Left => "L",
        })
    }
}

/// Position and direction of motion of the particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellLabel {
    pub cell: i64,
    pub dir: Direction,
}

impl CellLabel {
    pub const fn new(cell: i64, dir: Direction) -> Self {
        Self { cell, dir }
    }

    pub const fn right(cell: i64) -> Self {
        Self::new(cell, Direction::Right)
    }

    pub const fn left(cell: i64) -> Self {
        Self::new(cell, Direction::Left)
    }

    /// The two outcomes of one scattering event, as `(label, crossed boundary)`.
    ///
    /// Transmission keeps the direction and crosses one boundary; reflection
    /// reverses the direction in place and crosses none.
    pub fn successors(self) -> [(CellLabel, Option<i64>, Branch); 2] {
        match self.dir {
            Direction::Right => [
                (CellLabel::right(self.cell + 1), Some(self.cell), Branch::Transmit),
                (CellLabel::left(self.cell), None, Branch::Reflect),
            ],
            Direction::Left => [
                (CellLabel::left(self.cell - 1), Some(self.cell - 1), Branch::Transmit),
                (CellLabel::right(self.cell), None, Branch::Reflect),
            ],
        }
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.cell, self.dir)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Transmit,
    Reflect,
}

impl Branch {
    pub fn amplitude(self, params: &ScattererParams) -> Amplitude {
        match self {
            Branch::Transmit => params.t(),
            Branch::Reflect => params.r(),
        }
    }
}

/// Which boundaries carry a spin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinWindow {
    /// No spins: the walk stays pure.
    None,
    /// A spin on every boundary.
    All,
    /// An odd number of spins centred on boundary 0.
    Finite(usize),
}

impl SpinWindow {
    pub fn finite(count: usize) -> Result<Self> {
        let w = SpinWindow::Finite(count);
        w.check()?;
        Ok(w)
    }

    pub fn check(&self) -> Result<()> {
        if let SpinWindow::Finite(n) = *self {
            if n == 0 || n % 2 == 0 {
                return Err(WalkError::InvalidWindow(format!("spin count {n} must be odd and positive")));
            }
            if n > MAX_FINITE_SPINS {
                return Err(WalkError::InvalidWindow(format!(
                    "spin count {n} exceeds the supported maximum {MAX_FINITE_SPINS}"
                )));
            }
        }
        Ok(())
    }

    /// `(n - 1) / 2` for a finite window.
    pub fn half_width(&self) -> Option<i64> {
        match *self {
            SpinWindow::Finite(n) => Some(((n - 1) / 2) as i64),
            _ => None,
        }
    }

    /// Boundaries carrying a spin, for a finite window.
    pub fn monitored_boundaries(&self) -> Vec<i64> {
        match self.half_width() {
            Some(h) => (-h..=h).collect(),
            None => Vec::new(),
        }
    }

    /// Last step at which a finite window still distinguishes every occupied
    /// cell, i.e. before the wavefront leaves the monitored region.
    pub fn last_resolving_step(&self) -> Option<usize> {
        self.half_width().map(|h| h as usize + 1)
    }

    fn mask_bit(&self, boundary: i64) -> Option<u32> {
        let h = self.half_width()?;
        (boundary.abs() <= h).then(|| (boundary + h) as u32)
    }
}

impl fmt::Display for SpinWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinWindow::None => f.write_str("none"),
            SpinWindow::All => f.write_str("all"),
            SpinWindow::Finite(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for SpinWindow {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(SpinWindow::None),
            "all" => Ok(SpinWindow::All),
            other => {
                let n: usize = other.parse().map_err(|_| {
                    WalkError::InvalidWindow(format!("expected none, all or an odd count, got '{s}'"))
                })?;
                SpinWindow::finite(n)
            }
        }
    }
}

/// Which-path record of a branch: equal records interfere, different ones do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Record {
    Unrecorded,
    Cell(i64),
    Mask(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineWalkState {
    tau: usize,
    amps: BTreeMap<(CellLabel, u64), Amplitude>,
    params: ScattererParams,
    window: SpinWindow,
}

/// Particle in cell 0 moving right, all spins in their initial state.
pub fn init_line(transparency: f64, window: SpinWindow) -> Result<LineWalkState> {
    let params = ScattererParams::new(transparency)?;
    window.check()?;
    let mut amps = BTreeMap::new();
    amps.insert((CellLabel::right(0), 0), Amplitude::new(1.0, 0.0));
    Ok(LineWalkState { tau: 0, amps, params, window })
}

/// One scattering step on every branch.
pub fn step_line(s: &LineWalkState) -> LineWalkState {
    let mut next: BTreeMap<(CellLabel, u64), Amplitude> = BTreeMap::new();
    for (&(label, mask), &a) in &s.amps {
        for (to, crossed, branch) in label.successors() {
            let mask = match (crossed, s.window) {
                (Some(b), SpinWindow::Finite(_)) => match s.window.mask_bit(b) {
                    Some(bit) => mask ^ (1u64 << bit),
                    None => mask,
                },
                _ => mask,
            };
            *next.entry((to, mask)).or_default() += branch.amplitude(&s.params) * a;
        }
    }
    next.retain(|_, a| a.norm() >= PRUNE_BELOW);
    LineWalkState { tau: s.tau + 1, amps: next, params: s.params, window: s.window }
}

impl LineWalkState {
    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn params(&self) -> &ScattererParams {
        &self.params
    }

    pub fn window(&self) -> SpinWindow {
        self.window
    }

    /// `(label, spin mask) -> amplitude`. Masks are always 0 outside `Finite` mode.
    pub fn amplitudes(&self) -> &BTreeMap<(CellLabel, u64), Amplitude> {
        &self.amps
    }

    pub fn amplitude(&self, label: CellLabel, mask: u64) -> Amplitude {
        self.amps.get(&(label, mask)).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    /// Labels with non-zero amplitude, sorted.
    pub fn occupied_labels(&self) -> Vec<CellLabel> {
        let mut labels: Vec<CellLabel> = self.amps.keys().map(|(l, _)| *l).collect();
        labels.dedup();
        labels
    }

    /// Parity and light-cone violations, if any.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let tau = self.tau as i64;
        for (label, _) in self.amps.keys() {
            let even = (label.cell + tau).rem_euclid(2) == 0;
            match (label.dir, even) {
                (Direction::Left, true) => out.push(format!("left mover at {label} with i+tau even")),
                (Direction::Right, false) => out.push(format!("right mover at {label} with i+tau odd")),
                _ => {}
            }
            if label.cell.abs() > tau {
                out.push(format!("{label} outside |i| <= {tau}"));
            }
        }
        out
    }

    fn record(&self, label: CellLabel, mask: u64) -> Record {
        match self.window {
            SpinWindow::None => Record::Unrecorded,
            SpinWindow::All => Record::Cell(label.cell),
            SpinWindow::Finite(_) => Record::Mask(mask),
        }
    }

    /// Total weight to the left (`i <= 0`) and right (`i >= 1`) of the first-hit boundary.
    pub fn side_weights(&self) -> (f64, f64) {
        let mut left = 0.0;
        let mut right = 0.0;
        for (&(label, _), a) in &self.amps {
            if label.cell <= 0 {
                left += a.norm_sqr();
            } else {
                right += a.norm_sqr();
            }
        }
        (left, right)
    }

    /// Weight on cells strictly inside a finite window (between its outermost spins).
    pub fn window_residual(&self) -> f64 {
        let Some(h) = self.window.half_width() else { return 0.0 };
        self.amps
            .iter()
            .filter(|((l, _), _)| l.cell > -h && l.cell <= h)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// `P_i = sum over direction and spin record of |amplitude|^2`, ordered by cell.
pub fn position_probabilities(s: &LineWalkState) -> ProbabilityVector<i64> {
    let mut by_cell: BTreeMap<i64, f64> = BTreeMap::new();
    for (&(label, _), a) in &s.amps {
        *by_cell.entry(label.cell).or_default() += a.norm_sqr();
    }
    ProbabilityVector::new(by_cell.into_iter().collect())
        .expect("unitary evolution keeps the distribution normalized")
}

/// Particle state with the spins traced out, over the occupied `(cell, dir)` labels.
pub fn reduced_density_matrix_line(s: &LineWalkState) -> DensityMatrix<CellLabel> {
    let labels = s.occupied_labels();
    let index: BTreeMap<CellLabel, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let mut groups: BTreeMap<Record, Vec<(usize, Amplitude)>> = BTreeMap::new();
    for (&(label, mask), &a) in &s.amps {
        groups.entry(s.record(label, mask)).or_default().push((index[&label], a));
    }
    let mut rho = CMatrix::zeros(labels.len());
    for members in groups.values() {
        for &(i, ai) in members {
            for &(j, aj) in members {
                rho[(i, j)] += ai * aj.conj();
            }
        }
    }
    DensityMatrix::new(rho, labels)
}

/// Entropy of the current state under the window's reduction rule.
pub fn line_entropy(s: &LineWalkState) -> Result<f64> {
    match s.window {
        SpinWindow::All => {
            let p: Vec<f64> = position_probabilities(s).values().collect();
            shannon_entropy(&p)
        }
        SpinWindow::None | SpinWindow::Finite(_) => von_neumann_entropy(&reduced_density_matrix_line(s)),
    }
}

/// States for `tau = 0..=steps`.
pub fn line_trajectory(transparency: f64, window: SpinWindow, steps: usize) -> Result<Vec<LineWalkState>> {
    let mut state = init_line(transparency, window)?;
    let mut out = Vec::with_capacity(steps + 1);
    for _ in 0..steps {
        let next = step_line(&state);
        out.push(state);
        state = next;
    }
    out.push(state);
    Ok(out)
}

/// Entropy series `S(0..=steps)` of the line walk.
pub fn run_line(transparency: f64, window: SpinWindow, steps: usize) -> Result<EntropySeries> {
    let mut state = init_line(transparency, window)?;
    let mut values = Vec::with_capacity(steps + 1);
    values.push(line_entropy(&state)?);
    for _ in 0..steps {
        state = step_line(&state);
        values.push(line_entropy(&state)?);
    }
    let meta = RunMeta::new("line", steps).with_transparency(transparency).with_window(window);
    Ok(EntropySeries::new(values, meta))
}
