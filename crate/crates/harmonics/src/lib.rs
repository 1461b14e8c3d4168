//! File formats, residual reports and the command-line front-end for
//! `harmonics-core`.
//!
//! The binary is a thin wrapper around [`cli::run`]; every command is a
//! function in [`jobs`] that returns its data product and a
//! [`report::ResidualReport`].

pub mod cli;
pub mod config;
pub mod error;
pub mod formats;
pub mod jobs;
pub mod report;
pub mod verify;

pub use error::{CliError, Result};
