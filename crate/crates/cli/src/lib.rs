//! Command-line front end for `fneq-core`.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or domain error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod pspec;

use std::fmt;

pub use cli::Cli;
pub use commands::{parse_sample_csv, run, SampleRow};

/// A failed command together with its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<fneq_core::Error> for CliError {
    fn from(err: fneq_core::Error) -> Self {
        match err {
            fneq_core::Error::Internal(_) => Self::failure(err.to_string()),
            _ => Self::usage(err.to_string()),
        }
    }
}

/// What a successful command prints, and its exit code (0 or 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}
