//! Command-line front end: argument and config-file parsing, CSV and SVG
//! writers, and dispatch to the models in `walk-core`.
//!
//! Exit status is 0 on success, 2 for invalid input and 3 for numerical or
//! I/O failures.

pub mod app;
pub mod args;
pub mod config;
pub mod csv;
pub mod error;
pub mod svg;

pub use app::{execute, parse_args, run_main, ModelKind, Output, Parsed, Request, RunConfig, ScanRequest};
pub use error::CliError;
