//! The three walk models, each behind [`EntropyModel`] and looked up by name
//! through a [`ModelRegistry`].

pub mod lattice;
pub mod line;
pub mod params;
pub mod tree;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Result, WalkError};
use crate::series::EntropySeries;

use line::SpinWindow;
use tree::{TreeParams, TreeSolver};

/// Union of the knobs the models read. Each model ignores what it does not use.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub transparency: f64,
    pub beta: f64,
    pub outputs: usize,
    pub window: SpinWindow,
    pub steps: usize,
    pub tree_solver: TreeSolver,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            transparency: 0.5,
            beta: 0.5,
            outputs: 2,
            window: SpinWindow::All,
            steps: 10,
            tree_solver: TreeSolver::Hierarchical,
        }
    }
}

/// A model that turns parameters into an entropy time series.
pub trait EntropyModel: Send + Sync {
    /// Registry key, also the CLI subcommand.
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn run(&self, params: &ModelParams) -> Result<EntropySeries>;
}

pub struct LineModel;

impl EntropyModel for LineModel {
    fn name(&self) -> &'static str {
        "line"
    }

    fn description(&self) -> &'static str {
        "1D scatterer chain with pi-rotating spins on the boundaries"
    }

    fn run(&self, p: &ModelParams) -> Result<EntropySeries> {
        line::run_line(p.transparency, p.window, p.steps)
    }
}

pub struct TreeModel;

impl EntropyModel for TreeModel {
    fn name(&self) -> &'static str {
        "tree"
    }

    fn description(&self) -> &'static str {
        "splitter tree without interference, one spin per edge"
    }

    fn run(&self, p: &ModelParams) -> Result<EntropySeries> {
        let params = TreeParams::splitter(p.outputs, p.transparency, p.beta)?;
        let mut series = tree::run_tree_with(&params, p.steps, p.tree_solver)?;
        series.meta.transparency = Some(p.transparency);
        Ok(series)
    }
}

pub struct LatticeModel;

impl EntropyModel for LatticeModel {
    fn name(&self) -> &'static str {
        "lattice"
    }

    fn description(&self) -> &'static str {
        "splitter lattice with interference and fresh spins every step"
    }

    fn run(&self, p: &ModelParams) -> Result<EntropySeries> {
        lattice::run_lattice(p.transparency, p.beta, p.steps)
    }
}

pub struct ModelRegistry {
    models: BTreeMap<&'static str, Box<dyn EntropyModel>>,
}

impl ModelRegistry {
    pub fn empty() -> Self {
        Self { models: BTreeMap::new() }
    }

    /// Registry holding `line`, `tree` and `lattice`.
    pub fn with_builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(LineModel));
        r.register(Box::new(TreeModel));
        r.register(Box::new(LatticeModel));
        r
    }

    /// Adds a model, replacing any previous one with the same name.
    pub fn register(&mut self, model: Box<dyn EntropyModel>) -> Option<Box<dyn EntropyModel>> {
        self.models.insert(model.name(), model)
    }

    pub fn get(&self, name: &str) -> Result<&dyn EntropyModel> {
        self.models.get(name).map(|m| m.as_ref()).ok_or_else(|| WalkError::UnknownModel(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.models.keys().copied()
    }

    pub fn run(&self, name: &str, params: &ModelParams) -> Result<EntropySeries> {
        self.get(name)?.run(params)
    }
}

impl Default for ModelRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}

impl fmt::Debug for ModelRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.models.keys()).finish()
    }
}
