//! File formats, sampling, reproduction runs and reports for the
//! `hermitia` command line tool.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod reproduce;
pub mod report;
pub mod sample;
pub mod scan;

pub use config::{Mode, OutputFormat, RunConfig};
pub use error::{HermitiaError, ParseError, Result};
