//! Quantum random walks entangled with spin reservoirs.
//!
//! Three models are provided, each producing the von Neumann entropy of the
//! particle's reduced state as a function of discrete time:
//!
//! * [`models::line`]: a chain of scatterers with π-rotating spins that can be
//!   revisited, where the entropy grows on average but drops at some steps;
//! * [`models::tree`]: a backscatter-free splitter tree, no interference, each
//!   spin touched once, where the entropy never decreases;
//! * [`models::lattice`]: a splitter lattice with interference but fresh spins
//!   at every step, where the entropy grows strictly.
//!
//! Models are registered by name in a [`ModelRegistry`]; [`analysis`] turns
//! their series into drop lists, scans and fits.

pub mod analysis;
pub mod error;
pub mod models;
pub mod numerics;
pub mod series;

pub use error::{Result, WalkError};
pub use models::{EntropyModel, ModelParams, ModelRegistry};
pub use series::{EntropySeries, RunMeta};
