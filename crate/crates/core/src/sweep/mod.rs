//! Parameter sweeps over the probe detuning δ.
//!
//! A [`SweepConfig`] fixes every model parameter except δ, a δ grid, and an
//! ordered list of named variants that override some of the base values.
//! [`run_sweep`] evaluates every (variant, δ) point and returns rows in
//! (variant, ascending δ) order regardless of how they were scheduled.

mod config;
mod emit;
mod preset;
mod run;

use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::analytic::AnalyticError;
use crate::engine::EngineError;
use crate::params::{ParamError, SystemParams};

pub use config::parse_config;
pub use emit::{emit, emit_to_path, format_sig12, CSV_HEADER};
pub use preset::{preset, Preset};
pub use run::{run_sweep, run_sweep_with, Execution, OutputRow, CROSS_VALIDATION_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("syntax error{}: {message}", .line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Syntax { line: Option<usize>, message: String },
    #[error("invalid `{key}`: {message}")]
    Validation { key: String, message: String },
}

impl ConfigError {
    pub(crate) fn invalid(key: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Validation { key: key.into(), message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PointError {
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("unknown preset `{0}` (expected fig2, fig3 or fig4)")]
    UnknownPreset(String),
    #[error("variant `{variant}` at delta = {delta}: {source}")]
    Point {
        variant: String,
        delta: f64,
        #[source]
        source: PointError,
    },
    #[error(
        "cross-validation failed: worst relative disagreement {rel_error:e} at variant `{variant}`, delta = {delta} \
         (tolerance {tolerance:e})"
    )]
    CrossValidation { variant: String, delta: f64, rel_error: f64, tolerance: f64 },
    #[error("nothing to emit")]
    EmptyRows,
    #[error("i/o error writing {destination}: {source}")]
    Io {
        destination: String,
        #[source]
        source: std::io::Error,
    },
}

impl SweepError {
    /// Process exit code: 1 for invalid input, 2 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Config(_) | SweepError::UnknownPreset(_) | SweepError::EmptyRows | SweepError::Io { .. } => 1,
            SweepError::Point { .. } | SweepError::CrossValidation { .. } => 2,
        }
    }
}

/// Which susceptibility path to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineChoice {
    #[default]
    Analytic,
    Numeric,
    /// Both paths, with row-by-row cross-validation.
    Both,
}

impl FromStr for EngineChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "analytic" => Ok(EngineChoice::Analytic),
            "numeric" => Ok(EngineChoice::Numeric),
            "both" => Ok(EngineChoice::Both),
            other => Err(format!("unknown engine `{other}` (expected analytic, numeric or both)")),
        }
    }
}

impl EngineChoice {
    pub fn uses_analytic(self) -> bool {
        matches!(self, EngineChoice::Analytic | EngineChoice::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    pub format: OutputFormat,
    /// `None` writes to standard output.
    pub path: Option<PathBuf>,
}

/// Uniform δ grid including both end points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl DeltaGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Self {
        Self { min, max, points }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.min.is_finite() {
            return Err(ConfigError::invalid("delta_min", "must be finite"));
        }
        if !self.max.is_finite() {
            return Err(ConfigError::invalid("delta_max", "must be finite"));
        }
        if self.min >= self.max {
            return Err(ConfigError::invalid("delta_max", "delta_min must be < delta_max"));
        }
        if self.points < 2 {
            return Err(ConfigError::invalid("points", "points must be >= 2"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        let span = self.max - self.min;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.max } else { self.min + span * (i as f64 / last) })
            .collect()
    }
}

/// Optional replacements for any model parameter except δ.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Overrides {
    pub gamma1: Option<f64>,
    pub gamma2: Option<f64>,
    pub upper_gamma1: Option<f64>,
    pub upper_gamma2: Option<f64>,
    pub zeeman: Option<f64>,
    pub control_detuning: Option<f64>,
    pub control1: Option<Complex64>,
    pub control2: Option<Complex64>,
    pub alpha_l: Option<f64>,
}

impl Overrides {
    pub fn apply(&self, base: &SystemParams) -> SystemParams {
        SystemParams {
            gamma1: self.gamma1.unwrap_or(base.gamma1),
            gamma2: self.gamma2.unwrap_or(base.gamma2),
            upper_gamma1: self.upper_gamma1.unwrap_or(base.upper_gamma1),
            upper_gamma2: self.upper_gamma2.unwrap_or(base.upper_gamma2),
            zeeman: self.zeeman.unwrap_or(base.zeeman),
            control_detuning: self.control_detuning.unwrap_or(base.control_detuning),
            probe_detuning: base.probe_detuning,
            control1: self.control1.unwrap_or(base.control1),
            control2: self.control2.unwrap_or(base.control2),
            alpha_l: self.alpha_l.unwrap_or(base.alpha_l),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variant {
    pub name: String,
    pub overrides: Overrides,
}

impl Variant {
    pub fn new(name: impl Into<String>, overrides: Overrides) -> Self {
        Self { name: name.into(), overrides }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Base parameters; `probe_detuning` is ignored.
    pub base: SystemParams,
    pub delta_grid: DeltaGrid,
    /// One output series per variant. Empty means a single series named `base`.
    pub variants: Vec<Variant>,
    pub engine: EngineChoice,
    pub output: OutputSpec,
}

fn param_error(prefix: &str, err: ParamError) -> ConfigError {
    ConfigError::invalid(format!("{prefix}{}", err.key()), err.to_string())
}

impl SweepConfig {
    /// Variants to run, substituting a single unmodified `base` series when
    /// none are listed.
    pub fn series(&self) -> Vec<Variant> {
        if self.variants.is_empty() {
            vec![Variant::new("base", Overrides::default())]
        } else {
            self.variants.clone()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.delta_grid.validate()?;
        self.base.validate().map_err(|e| param_error("", e))?;
        let mut seen = std::collections::HashSet::new();
        for (i, variant) in self.variants.iter().enumerate() {
            let prefix = format!("variant[{i}].");
            if variant.name.is_empty() {
                return Err(ConfigError::invalid(format!("{prefix}name"), "must not be empty"));
            }
            if !seen.insert(variant.name.as_str()) {
                return Err(ConfigError::invalid(
                    format!("{prefix}name"),
                    format!("duplicate name `{}`", variant.name),
                ));
            }
            let merged = variant.overrides.apply(&self.base);
            merged.validate().map_err(|e| param_error(&prefix, e))?;
            if self.engine.uses_analytic() && merged.gamma1 != merged.gamma2 {
                return Err(ConfigError::invalid(
                    format!("{prefix}gamma2"),
                    "the analytic engine requires gamma1 == gamma2; use engine = \"numeric\"",
                ));
            }
        }
        if self.variants.is_empty() && self.engine.uses_analytic() && self.base.gamma1 != self.base.gamma2 {
            return Err(ConfigError::invalid(
                "gamma2",
                "the analytic engine requires gamma1 == gamma2; use engine = \"numeric\"",
            ));
        }
        Ok(())
    }
}
