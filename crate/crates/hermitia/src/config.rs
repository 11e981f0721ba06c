use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hermitia_core::Tolerance;
use serde::Serialize;

use crate::error::{HermitiaError, Result};

/// Environment variable that changes the default arithmetic mode.
pub const MODE_ENV: &str = "HERMITIA_MODE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Arbitrary precision rationals; zero means exactly zero.
    #[default]
    Exact,
    /// Double precision with a tolerance.
    Float,
}

impl FromStr for Mode {
    type Err = HermitiaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(HermitiaError::Config(format!(
                "mode must be `exact` or `float`, found `{other}`"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub tolerance: Tolerance,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    /// Include wall times in reports. Off by default so that a fixed seed
    /// gives byte-identical output.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Exact,
            tolerance: Tolerance::DEFAULT,
            seed: 0,
            output: None,
            format: OutputFormat::Json,
            timings: false,
        }
    }
}

impl RunConfig {
    /// Validated configuration. An explicit `mode` wins over `env_mode`,
    /// which wins over the exact default.
    pub fn new(
        mode: Option<Mode>,
        env_mode: Option<&str>,
        tolerance: f64,
        seed: u64,
        output: Option<PathBuf>,
        format: OutputFormat,
    ) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(HermitiaError::Config(format!(
                "tolerance must be positive, found {tolerance}"
            )));
        }
        let mode = match (mode, env_mode) {
            (Some(m), _) => m,
            (None, Some(v)) if !v.trim().is_empty() => v.parse()?,
            _ => Mode::Exact,
        };
        Ok(RunConfig {
            mode,
            tolerance: Tolerance(tolerance),
            seed,
            output,
            format,
            timings: false,
        })
    }

    /// The tolerance actually applied; exact mode tests for exact zero.
    pub fn effective_tolerance(&self) -> Tolerance {
        match self.mode {
            Mode::Exact => Tolerance(0.0),
            Mode::Float => self.tolerance,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_precedence() {
        let c = RunConfig::new(None, Some("float"), 1e-9, 1, None, OutputFormat::Json).unwrap();
        assert_eq!(c.mode, Mode::Float);
        let c = RunConfig::new(Some(Mode::Exact), Some("float"), 1e-9, 1, None, OutputFormat::Json)
            .unwrap();
        assert_eq!(c.mode, Mode::Exact);
        let c = RunConfig::new(None, None, 1e-9, 1, None, OutputFormat::Json).unwrap();
        assert_eq!(c.mode, Mode::Exact);
        assert!(RunConfig::new(None, Some("fast"), 1e-9, 1, None, OutputFormat::Json).is_err());
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(RunConfig::new(None, None, 0.0, 1, None, OutputFormat::Json).is_err());
        assert!(RunConfig::new(None, None, -1.0, 1, None, OutputFormat::Json).is_err());
        assert!(RunConfig::new(None, None, f64::NAN, 1, None, OutputFormat::Json).is_err());
    }
}
