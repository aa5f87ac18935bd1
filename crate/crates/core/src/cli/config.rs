//! Experiment settings: TOML file, command-line overrides, environment.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exact::{Configuration, ExactScalar};
use crate::phase_space::{LatticeBasis, PhasePoint};
use crate::signal::GridSpec;

/// Environment variable overriding the default grid, as `"N,T"`.
pub const GRID_ENV: &str = "HRTLAB_GRID";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n_samples: usize,
    pub period: f64,
}

/// Raw settings as read from a TOML file or flags. Every field is optional;
/// [`ExperimentConfig::resolve`] fills defaults.
///
/// ```toml
/// a = [2.0, 0.0]
/// b = [0.0, 2.0]
/// r = "sqrt(2)"
/// s = "sqrt(3)"
/// threshold = 1e-8
/// eps = 0.05
/// n_max = 100000
/// num_targets = 200
/// seed = 42
/// alphas = [0.8, 1.2]
/// radius = 6
/// membership_radius = 4
/// format = "json"
///
/// [grid]
/// n_samples = 2048
/// period = 32.0
/// ```
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub a: Option<[f64; 2]>,
    pub b: Option<[f64; 2]>,
    pub r: Option<String>,
    pub s: Option<String>,
    pub grid: Option<GridConfig>,
    pub threshold: Option<f64>,
    pub eps: Option<f64>,
    pub n_max: Option<u64>,
    pub num_targets: Option<usize>,
    pub seed: Option<u64>,
    pub alphas: Option<Vec<f64>>,
    pub radius: Option<u32>,
    pub membership_radius: Option<u32>,
    pub format: Option<OutputFormat>,
}

/// A configuration problem with its location: a file position or the flag
/// that carried the bad value.
#[derive(Debug, Clone, PartialEq)]
pub struct LocatedError {
    pub source: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl LocatedError {
    fn new(source: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            source: source.into(),
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for LocatedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        if let Some(col) = self.column {
            write!(f, ":{col}")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for LocatedError {}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, col)
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str, source: &str) -> Result<Self, LocatedError> {
        let parsed: Self = toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| line_col(text, s.start))
                .map_or((None, None), |(l, c)| (Some(l), Some(c)));
            LocatedError {
                source: source.to_string(),
                line,
                column,
                message: e.message().to_string(),
            }
        })?;
        // Scalars are validated here so the error points into the file.
        for (key, value) in [("r", &parsed.r), ("s", &parsed.s)] {
            if let Some(v) = value {
                if let Err(e) = v.parse::<ExactScalar>() {
                    let (line, column) = locate_value(text, key)
                        .map(|off| line_col(text, off + e.column.saturating_sub(1)))
                        .map_or((None, None), |(l, c)| (Some(l), Some(c)));
                    return Err(LocatedError {
                        source: source.to_string(),
                        line,
                        column,
                        message: format!("{key} = {:?}: {}", e.input, e.message),
                    });
                }
            }
        }
        Ok(parsed)
    }

    pub fn from_file(path: &Path) -> Result<Self, LocatedError> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| LocatedError::new(&name, e.to_string()))?;
        Self::from_toml_str(&text, &name)
    }

    /// Values set in `other` replace those in `self`.
    pub fn overlay(mut self, other: ExperimentConfig) -> Self {
        macro_rules! take {
            ($($field:ident),*) => { $( if other.$field.is_some() { self.$field = other.$field; } )* };
        }
        take!(a, b, r, s, grid, threshold, eps, n_max, num_targets, seed, alphas, radius, membership_radius, format);
        self
    }

    /// Fills defaults and validates. `env_grid` is the value of
    /// [`GRID_ENV`], if set; an explicit grid takes precedence over it.
    pub fn resolve(&self, env_grid: Option<&str>) -> Result<Experiment, LocatedError> {
        let point = |name: &str, v: [f64; 2]| {
            PhasePoint::new(v[0], v[1]).map_err(|e| LocatedError::new(format!("--{name}"), e.to_string()))
        };
        let a = point("a", self.a.unwrap_or([1.0, 0.0]))?;
        let b = point("b", self.b.unwrap_or([0.0, 1.0]))?;
        let basis = LatticeBasis::new(a, b).map_err(|e| LocatedError::new("--a/--b", e.to_string()))?;
        let scalar = |name: &str, v: &Option<String>| -> Result<Option<ExactScalar>, LocatedError> {
            let Some(text) = v.as_deref() else {
                return Ok(None);
            };
            text.parse().map(Some).map_err(|e: crate::exact::ParseScalarError| LocatedError {
                source: format!("--{name}"),
                line: None,
                column: Some(e.column),
                message: format!("{:?}: {}", e.input, e.message),
            })
        };
        let r = scalar("r", &self.r)?;
        let s = scalar("s", &self.s)?;
        let grid = match (self.grid, env_grid) {
            (Some(g), _) => GridSpec::new(g.n_samples, g.period),
            (None, Some(text)) => GridSpec::parse_pair(text),
            (None, None) => Ok(GridSpec::standard()),
        }
        .map_err(|e| LocatedError::new(if self.grid.is_some() { "--grid" } else { GRID_ENV }, e.to_string()))?;

        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(v)
            } else {
                Err(LocatedError::new(format!("--{name}"), format!("{v} must be positive")))
            }
        };
        let threshold = positive("threshold", self.threshold.unwrap_or(crate::independence::DEFAULT_THRESHOLD))?;
        let eps = positive("eps", self.eps.unwrap_or(0.05))?;
        let num_targets = self.num_targets.unwrap_or(200);
        if num_targets == 0 {
            return Err(LocatedError::new("--targets", "need at least one target"));
        }
        let alphas = self.alphas.clone().unwrap_or_else(|| vec![0.8, 1.2]);
        for &alpha in &alphas {
            positive("alphas", alpha)?;
        }
        Ok(Experiment {
            basis,
            r,
            s,
            grid,
            threshold,
            eps,
            n_max: self.n_max.unwrap_or(100_000),
            num_targets,
            seed: self.seed.unwrap_or(42),
            alphas,
            radius: self.radius.unwrap_or(6),
            membership_radius: self.membership_radius.unwrap_or(4),
            format: self.format,
        })
    }
}

/// Byte offset of the first character inside the quoted value of `key`.
fn locate_value(text: &str, key: &str) -> Option<usize> {
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix(key) {
            if rest.trim_start().starts_with('=') {
                let quote = line.find('"')?;
                return Some(offset + quote + 1);
            }
        }
        offset += line.len();
    }
    None
}

/// Fully resolved settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Experiment {
    pub basis: LatticeBasis,
    pub r: Option<ExactScalar>,
    pub s: Option<ExactScalar>,
    pub grid: GridSpec,
    pub threshold: f64,
    pub eps: f64,
    pub n_max: u64,
    pub num_targets: usize,
    pub seed: u64,
    pub alphas: Vec<f64>,
    pub radius: u32,
    pub membership_radius: u32,
    pub format: Option<OutputFormat>,
}

impl Experiment {
    /// `(r, s)`, or an error naming the first missing flag.
    pub fn scalars(&self) -> Result<(ExactScalar, ExactScalar), LocatedError> {
        match (self.r, self.s) {
            (Some(r), Some(s)) => Ok((r, s)),
            (None, _) => Err(LocatedError::new("--r", "missing value")),
            (_, None) => Err(LocatedError::new("--s", "missing value")),
        }
    }

    pub fn configuration(&self) -> Result<Configuration, LocatedError> {
        let (r, s) = self.scalars()?;
        Configuration::new(self.basis, r, s).map_err(|e| LocatedError::new("--r/--s", e.to_string()))
    }
}
