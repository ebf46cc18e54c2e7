//! Command-line surface for `symbern`: character tables, exact values,
//! quotient-series coefficients and identity sweeps.

pub mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use symbern_core::{CharacterId, LambdaFamily, Perturbation, Theorem, Weights};

use commands::ComputeKind;
use config::SweepConfig;
use report::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] symbern_core::Error),
}

#[derive(Parser, Debug)]
#[command(name = "symbern", version)]
#[command(about = "Exact generalized Bernoulli values and three-weight symmetry identity checks")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the Dirichlet characters of a modulus
    Chars {
        #[arg(long)]
        modulus: u64,
    },
    /// Compute B_{n,chi}, B_{n,chi}(x) or S_k(n,chi)
    Compute {
        #[arg(value_enum)]
        kind: ComputeKind,
        #[arg(long)]
        modulus: u64,
        /// Character label within the modulus
        #[arg(long = "char", default_value_t = 0)]
        label: usize,
        /// Degree, or the upper summation limit for power-sum
        #[arg(long)]
        n: u64,
        /// Power-sum exponent
        #[arg(long)]
        k: Option<u32>,
        /// Polynomial argument, e.g. 1/3
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Dump egf coefficients of a quotient series
    Lambda {
        /// L23, L13 or L12
        #[arg(long)]
        family: LambdaFamily,
        #[arg(long, default_value_t = 0)]
        index: u8,
        #[arg(long)]
        modulus: u64,
        #[arg(long = "char", default_value_t = 0)]
        label: usize,
        #[arg(long, default_value = "1,1,1")]
        weights: Weights,
        /// y1,y2,y3 (missing entries are 0)
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        ys: Vec<String>,
        /// Highest coefficient index
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Verify theorem instances (small default grid)
    Verify(SweepArgs),
    /// Verify theorem instances over the full acceptance grid by default
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Default)]
pub struct SweepArgs {
    /// TOML config file (or JSON, including a previous report)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Moduli, comma separated
    #[arg(long, value_delimiter = ',')]
    pub modulus: Vec<u64>,
    /// Character labels, comma separated, applied to every modulus
    #[arg(long = "char", value_delimiter = ',')]
    pub labels: Vec<usize>,
    /// Theorems, e.g. T1,T3 or 1,3
    #[arg(long, value_delimiter = ',')]
    pub theorem: Vec<Theorem>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// w1,w2,w3; repeat for several tuples
    #[arg(long)]
    pub weights: Vec<Weights>,
    /// y1,y2,y3; repeat for several tuples
    #[arg(long, allow_hyphen_values = true)]
    pub ys: Vec<String>,
    /// Include imprimitive characters
    #[arg(long)]
    pub allow_imprimitive: bool,
    /// Worker threads
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Test hook: add DELTA to the leading exponent of expression INDEX
    #[arg(long, hide = true, value_name = "INDEX:DELTA", allow_hyphen_values = true)]
    pub perturb: Option<String>,
}

impl SweepArgs {
    pub fn resolve(&self, mut config: SweepConfig) -> Result<SweepConfig, CliError> {
        if let Some(path) = &self.config {
            config.merge_file(path)?;
        }
        if !self.modulus.is_empty() {
            config.moduli = self.modulus.clone();
        }
        if !self.labels.is_empty() {
            config.characters = Some(self.labels.clone());
        }
        if !self.theorem.is_empty() {
            config.theorems = self.theorem.clone();
        }
        if let Some(n) = self.n_min {
            config.n_min = n;
        }
        if let Some(n) = self.n_max {
            config.n_max = n;
        }
        if !self.weights.is_empty() {
            config.weights = self.weights.clone();
        }
        if !self.ys.is_empty() {
            config.ys = self.ys.iter().map(|t| t.split(',').map(|y| y.trim().to_string()).collect()).collect();
        }
        if self.allow_imprimitive {
            config.allow_imprimitive = true;
        }
        if let Some(p) = &self.perturb {
            config.perturb = Some(parse_perturbation(p)?);
        }
        config.validate()?;
        Ok(config)
    }
}

fn parse_perturbation(s: &str) -> Result<Perturbation, CliError> {
    let bad = || CliError::Usage(format!("--perturb expects INDEX:DELTA, got {s:?}"));
    let (e, d) = s.split_once(':').ok_or_else(bad)?;
    Ok(Perturbation { expression: e.trim().parse().map_err(|_| bad())?, delta: d.trim().parse().map_err(|_| bad())? })
}

/// Runs a parsed command. Returns the rendered report and whether every
/// check passed.
pub fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Chars { modulus } => commands::cmd_chars(*modulus, format),
        Command::Compute { kind, modulus, label, n, k, x } => {
            let id = CharacterId { modulus: *modulus, label: *label };
            commands::cmd_compute(*kind, id, *n, *k, x.as_deref(), format)
        }
        Command::Lambda { family, index, modulus, label, weights, ys, order } => {
            let id = CharacterId { modulus: *modulus, label: *label };
            commands::cmd_lambda(*family, *index, *weights, ys, id, *order, format)
        }
        Command::Verify(args) => {
            let config = args.resolve(SweepConfig::verify_defaults())?;
            commands::cmd_verify("verify", &config, args.jobs, format)
        }
        Command::Sweep(args) => {
            let config = args.resolve(SweepConfig::sweep_defaults())?;
            commands::cmd_verify("sweep", &config, args.jobs, format)
        }
    }
}
