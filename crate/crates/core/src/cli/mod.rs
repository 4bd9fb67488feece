//! Command-line front end. Every subcommand produces a [`Report`]; the exit
//! code is 0 when all verdicts pass, 1 when a verdict fails or does not
//! apply, 2 on usage or parse errors and 3 when a theorem is contradicted.

mod commands;
pub mod parse;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::majorize::GridConfig;
use crate::report::Report;
use crate::sigma::DEFAULT_BOUND;
use crate::theorems::Sampling;
use parse::{parse_config, ParseError, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

pub const SEED_ENV: &str = "PHASEMAJ_SEED";

#[derive(Parser, Debug)]
#[command(name = "phasemaj", version, about = "Majorization checks for Fock-state Wigner functions")]
pub struct Cli {
    /// key = value file presetting grid defaults (cells, refine_rounds,
    /// tolerance, z_max, points, samples).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Master seed; falls back to $PHASEMAJ_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the command's data table (profile samples,
    /// rearrangements) as CSV to this file.
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GridArgs {
    /// Initial number of grid cells.
    #[arg(long)]
    pub cells: Option<usize>,
    /// Refinement rounds (cells double each round).
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Truncation point; chosen from the tail bound when omitted.
    #[arg(long = "z-max")]
    pub z_max: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Radial profile of a mixture: exact coefficients and samples.
    Profile {
        /// Mixture "n:p/q,…" or "vacuum".
        #[arg(long, visible_alias = "mixture")]
        mix: String,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long = "z-end")]
        z_end: Option<f64>,
    },
    /// Continuous majorization verdict `a ≻ b`.
    Majorize {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Also compare Wigner entropies.
        #[arg(long)]
        entropy: bool,
    },
    /// Phase-space Wigner entropy of a nonnegative mixture.
    Entropy {
        #[arg(long, visible_alias = "mixture")]
        mix: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Output weights of σ(m, n), or the uniform-mixture identity for M.
    Sigma {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        mixture: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Discrete convolution theorem: one instance, Monte Carlo, or vertices.
    Theorem1 {
        #[arg(long)]
        n: usize,
        /// Ratio in (0, 1) as "p/q".
        #[arg(long)]
        a: String,
        /// Comma-separated rationals λ₁ … λ_N.
        #[arg(long, conflicts_with_all = ["samples", "vertices"])]
        lambdas: Option<String>,
        #[arg(long, conflicts_with = "vertices")]
        samples: Option<usize>,
        /// λ distribution for Monte Carlo runs.
        #[arg(long, value_enum, default_value_t = Sampling::ScaleMixture)]
        sampling: Sampling,
        /// Enumerate all 2^N cone vertices (N ≤ 12).
        #[arg(long)]
        vertices: bool,
        /// With --vertices, also print entries as polynomials in a.
        #[arg(long, requires = "vertices")]
        symbolic: bool,
    },
    /// Continuous convolution theorem through its discretization.
    Theorem2 {
        #[arg(long, visible_alias = "mix")]
        mixture: String,
        /// Levels "z_end:N,…" with N doubling.
        #[arg(long)]
        schedule: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

/// Settings gathered from flags, the config file and the environment.
#[derive(Clone, Debug)]
pub struct Settings {
    pub seed: u64,
    pub config: BTreeMap<String, String>,
}

impl Settings {
    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.config.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config value {key} = {v:?} is invalid"))),
        }
    }

    /// `base`, overridden by the config file, overridden by flags.
    pub fn grid(&self, base: GridConfig, flags: &GridArgs) -> Result<GridConfig, CliError> {
        let cfg = GridConfig {
            cells: flags.cells.or(self.get("cells")?).unwrap_or(base.cells),
            refine_rounds: flags.rounds.or(self.get("refine_rounds")?).unwrap_or(base.refine_rounds),
            tolerance: flags.tol.or(self.get("tolerance")?).unwrap_or(base.tolerance),
            z_max: flags.z_max.or(self.get("z_max")?).or(base.z_max),
        };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

/// Result of one subcommand.
pub struct Outcome {
    pub report: Report,
    pub exit: i32,
    /// Data table for `--format csv` / `--data`.
    pub csv: Option<String>,
}

fn resolve_settings(cli: &Cli) -> Result<Settings, CliError> {
    let config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => BTreeMap::new(),
    };
    let seed = match cli.seed {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_ENV}={v:?} is not a u64")))?,
            Err(_) => 0,
        },
    };
    Ok(Settings { seed, config })
}

fn write_to(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn execute<W: Write>(cli: &Cli, out: &mut W) -> Result<i32, CliError> {
    let settings = resolve_settings(cli)?;
    let jobs = match cli.jobs {
        Some(j) => Some(j),
        None => settings.get("jobs")?,
    };
    let outcome = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {j} workers: {e}")))?
            .install(|| commands::dispatch(&cli.command, &settings))?,
        None => commands::dispatch(&cli.command, &settings)?,
    };
    if let (Some(path), Some(csv)) = (&cli.data, &outcome.csv) {
        write_to(path, csv)?;
    }
    let text = match cli.format {
        Format::Json => outcome.report.to_json() + "\n",
        Format::Csv => outcome.csv.clone().unwrap_or_else(|| verdict_csv(&outcome.report)),
    };
    match &cli.out {
        Some(path) => write_to(path, &text)?,
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(outcome.exit)
}

fn verdict_csv(report: &Report) -> String {
    let mut out = String::from("name,pass\n");
    for v in &report.verdicts {
        out.push_str(&format!("{},{}\n", v.name, v.pass));
    }
    out
}

/// Parses `args` (including the program name) and runs the subcommand,
/// writing the report to `out` unless `--out` is given. Returns the exit
/// code.
pub fn run<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
