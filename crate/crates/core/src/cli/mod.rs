//! The `hrtlab` command line.
//!
//! Each subcommand is a library function from an [`Experiment`] to an
//! [`Outcome`], so the binary is a thin wrapper and everything is testable
//! in-process.
//!
//! Settings are merged as flag > `--config` file > `HRTLAB_GRID` > defaults.
//!
//! Exit codes: 0 on success (classified, certified), 2 when a configuration
//! is out of scope or a certificate fails, 1 on input and runtime errors.

pub mod config;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Experiment, ExperimentConfig, GridConfig, LocatedError, OutputFormat, GRID_ENV};
pub use report::{build_report, classify_report, probe_document, ClassifyReport, ProbeDocument, ReportDocument};

use crate::density::density_stats;
use crate::independence::certify_independence;
use crate::signal::{make_gaussian, GridSpec};

#[derive(Debug, Parser)]
#[command(name = "hrtlab", version, about = "Exact and numerical checks for four-point time-frequency shift families", long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide which certified theorem covers a configuration.
    Classify(ClassifyArgs),
    /// Gram-matrix independence certificate for f, π(a)f, π(b)f, π(ν)f.
    Verify(VerifyArgs),
    /// Kronecker density witnesses for the forward semigroup L0 + Nν.
    Density(DensityArgs),
    /// Deep-hole residuals of Gaussian systems on αZ × αZ.
    Probe(ProbeArgs),
    /// Every suite in one deterministic JSON document.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML file with experiment settings; flags override it.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the output to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// First basis vector.
    #[arg(long, num_args = 2, value_names = ["X", "W"], allow_negative_numbers = true)]
    pub a: Option<Vec<f64>>,
    /// Second basis vector.
    #[arg(long, num_args = 2, value_names = ["X", "W"], allow_negative_numbers = true)]
    pub b: Option<Vec<f64>>,
    /// Coefficient of a in ν, e.g. `1/2` or `sqrt(2)`.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Coefficient of b in ν.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// Sample grid as `N,T` (default 2048,32 or $HRTLAB_GRID).
    #[arg(long, value_name = "N,T")]
    pub grid: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ThresholdArgs {
    /// Certification threshold on the smallest Gram eigenvalue.
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct DensityOpts {
    /// Approximation radius.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Largest multiple of ν tried.
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Number of random targets.
    #[arg(long)]
    pub targets: Option<usize>,
    /// Seed for target sampling.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ProbeOpts {
    /// Lattice spacings, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub alphas: Option<Vec<f64>>,
    /// Coefficient radius R of the truncated orbit.
    #[arg(long)]
    pub radius: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub threshold: ThresholdArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub density: DensityOpts,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub probe: ProbeOpts,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub threshold: ThresholdArgs,
    #[command(flatten)]
    pub density: DensityOpts,
    #[command(flatten)]
    pub probe: ProbeOpts,
    /// Coefficient radius for the π(ν)f membership residual.
    #[arg(long)]
    pub membership_radius: Option<u32>,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Result of running a subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        Self {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn pair(v: &Option<Vec<f64>>) -> Option<[f64; 2]> {
    v.as_ref().map(|v| [v[0], v[1]])
}

impl ConfigArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        cfg.a = pair(&self.a).or(cfg.a);
        cfg.b = pair(&self.b).or(cfg.b);
        cfg.r = self.r.clone().or(cfg.r.take());
        cfg.s = self.s.clone().or(cfg.s.take());
    }
}

impl GridArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) -> Result<(), LocatedError> {
        if let Some(text) = &self.grid {
            let g = GridSpec::parse_pair(text).map_err(|e| LocatedError {
                source: "--grid".into(),
                line: None,
                column: None,
                message: e.to_string(),
            })?;
            cfg.grid = Some(GridConfig {
                n_samples: g.n_samples(),
                period: g.period(),
            });
        }
        Ok(())
    }
}

impl ThresholdArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        cfg.threshold = self.threshold.or(cfg.threshold);
    }
}

impl DensityOpts {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        cfg.eps = self.eps.or(cfg.eps);
        cfg.n_max = self.n_max.or(cfg.n_max);
        cfg.num_targets = self.targets.or(cfg.num_targets);
        cfg.seed = self.seed.or(cfg.seed);
    }
}

impl ProbeOpts {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        cfg.alphas = self.alphas.clone().or(cfg.alphas.take());
        cfg.radius = self.radius.or(cfg.radius);
    }
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Classify(a) => &a.common,
            Command::Verify(a) => &a.common,
            Command::Density(a) => &a.common,
            Command::Probe(a) => &a.common,
            Command::Report(a) => &a.common,
        }
    }

    /// Merges the config file (if any) with the flags of this subcommand.
    pub fn experiment(&self, env_grid: Option<&str>) -> Result<Experiment, LocatedError> {
        let common = self.common();
        let mut cfg = match &common.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        cfg.format = common.format.or(cfg.format);
        match self {
            Command::Classify(a) => a.config.apply(&mut cfg),
            Command::Verify(a) => {
                a.config.apply(&mut cfg);
                a.grid.apply(&mut cfg)?;
                a.threshold.apply(&mut cfg);
            }
            Command::Density(a) => {
                a.config.apply(&mut cfg);
                a.density.apply(&mut cfg);
            }
            Command::Probe(a) => {
                a.probe.apply(&mut cfg);
                a.grid.apply(&mut cfg)?;
            }
            Command::Report(a) => {
                a.config.apply(&mut cfg);
                a.grid.apply(&mut cfg)?;
                a.threshold.apply(&mut cfg);
                a.density.apply(&mut cfg);
                a.probe.apply(&mut cfg);
                cfg.membership_radius = a.membership_radius.or(cfg.membership_radius);
            }
        }
        cfg.resolve(env_grid)
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn unsupported(cmd: &str, format: OutputFormat) -> Outcome {
    Outcome::error(format!("{cmd} does not support --format {format:?}").to_lowercase())
}

pub fn cmd_classify(exp: &Experiment) -> Outcome {
    let (r, s) = match exp.scalars() {
        Ok(v) => v,
        Err(e) => return Outcome::error(e),
    };
    let report = classify_report(&exp.basis, r, s);
    let code = report.exit_code();
    match exp.format.unwrap_or(OutputFormat::Text) {
        OutputFormat::Text => Outcome::ok(code, report.to_text()),
        OutputFormat::Json => Outcome::ok(code, to_json(&report)),
        f => unsupported("classify", f),
    }
}

pub fn cmd_verify(exp: &Experiment) -> Outcome {
    let result = exp
        .configuration()
        .map_err(|e| e.to_string())
        .and_then(|c| certify_independence(&make_gaussian(exp.grid), &c, exp.threshold).map_err(|e| e.to_string()));
    let report = match result {
        Ok(r) => r,
        Err(e) => return Outcome::error(e),
    };
    let code = if report.certified_independent { 0 } else { 2 };
    match exp.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => Outcome::ok(code, to_json(&report)),
        OutputFormat::Text => Outcome::ok(code, report::gram_text(&report)),
        f => unsupported("verify", f),
    }
}

pub fn cmd_density(exp: &Experiment) -> Outcome {
    let config = match exp.configuration() {
        Ok(c) => c,
        Err(e) => return Outcome::error(e),
    };
    let stats = density_stats(&config, exp.eps, exp.n_max, exp.num_targets, exp.seed);
    let out = match exp.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => to_json(&stats),
        OutputFormat::Csv => report::density_csv(&stats),
        OutputFormat::Text => report::density_text(&stats),
    };
    Outcome::ok(0, out)
}

pub fn cmd_probe(exp: &Experiment) -> Outcome {
    let doc = match probe_document(&exp.alphas, exp.radius, exp.grid) {
        Ok(d) => d,
        Err(e) => return Outcome::error(e),
    };
    let out = match exp.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Json => to_json(&doc),
        OutputFormat::Csv => doc.to_csv(),
        OutputFormat::Text => doc.to_text(),
    };
    Outcome::ok(0, out)
}

pub fn cmd_report(exp: &Experiment) -> Outcome {
    match exp.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => {}
        f => return unsupported("report", f),
    }
    match build_report(exp) {
        Ok(doc) => Outcome::ok(doc.exit_code(), to_json(&doc)),
        Err(e) => Outcome::error(e),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// `env_grid` stands in for `$HRTLAB_GRID`.
pub fn run_with_env<I, T>(args: I, env_grid: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(0, text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let exp = match cli.command.experiment(env_grid) {
        Ok(exp) => exp,
        Err(e) => return Outcome::error(e),
    };
    let outcome = match &cli.command {
        Command::Classify(_) => cmd_classify(&exp),
        Command::Verify(_) => cmd_verify(&exp),
        Command::Density(_) => cmd_density(&exp),
        Command::Probe(_) => cmd_probe(&exp),
        Command::Report(_) => cmd_report(&exp),
    };
    match (&cli.command.common().output, outcome.stdout.is_empty()) {
        (Some(path), false) => match std::fs::write(path, &outcome.stdout) {
            Ok(()) => Outcome {
                stdout: String::new(),
                ..outcome
            },
            Err(e) => Outcome::error(format!("{}: {e}", path.display())),
        },
        _ => outcome,
    }
}

/// [`run_with_env`] with the real environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_grid = std::env::var(GRID_ENV).ok();
    run_with_env(args, env_grid.as_deref())
}
