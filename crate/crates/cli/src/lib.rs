//! Command-line front end for `relkin-core`: one-shot evaluations and
//! residual sweeps with machine-readable reports.

pub mod checks;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod parse;
pub mod report;
pub mod sampling;
