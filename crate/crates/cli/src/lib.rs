//! Command-line front end for `frolov-core`: counting, point listing,
//! deterministic and randomized integration, and verification against the
//! golden node-count table.

pub mod args;
pub mod commands;
pub mod format;
pub mod golden;
pub mod integrands;
pub mod parallel;

pub use commands::{run, run_from_env};
