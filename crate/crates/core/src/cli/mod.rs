//! Command-line front end.
//!
//! Flags override values from `--config`, a flat `key=value` file using the flag names as
//! keys. Reports go to `--out`, else to `$BORWEIN_OUT_DIR/<command>.<ext>`, else to standard
//! output. Exit codes: 0 when every check passes, 1 when a mathematical disagreement is
//! found, 2 for usage and configuration errors.

mod commands;
mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use output::{Cell, Format, Sink};

use crate::borwein::BorweinParams;
use crate::error::{Error, Result};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "BORWEIN_OUT_DIR";

pub const DEFAULT_MAX_DEGREE: u64 = 1_000_000;
pub const DEFAULT_TRIALS: usize = 100;
const DEFAULT_N_MAX: u64 = 4;

#[derive(Debug, Parser)]
#[command(name = "borwein", version, about = "Exact progression sums of Borwein-type polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// List the nonzero coefficients a_i of one polynomial.
    Expand,
    /// Split one polynomial into its p signed residue-class components.
    Decompose,
    /// Progression sums S_{d,b} (d defaults to 2pn).
    Sum,
    /// Check the main bound for every residue, with independent cross-checks.
    Verify,
    /// Randomized sieve trials and the character-sum identities.
    SieveTest,
    /// Bound-comparison table over a parameter grid.
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Expand => "expand",
            Command::Decompose => "decompose",
            Command::Sum => "sum",
            Command::Verify => "verify",
            Command::SieveTest => "sieve-test",
            Command::Sweep => "sweep",
        }
    }
}

#[derive(Clone, Debug, Default, Args)]
pub struct Options {
    /// Odd primes, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub p: Vec<u64>,
    /// Exponents s, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub s: Vec<u64>,
    /// A single n, or the start of the range when --n-max is also given.
    #[arg(long, global = true)]
    pub n: Option<u64>,
    /// Last n of the range.
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<u64>,
    /// Modulus for `sum` (default 2pn); `verify` accepts pn or 2pn.
    #[arg(long, global = true)]
    pub d: Option<u64>,
    /// A single residue instead of all of them.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub b: Option<i64>,
    /// Prime for the Zaharescu column of `sweep`.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Working precision for complex evaluation.
    #[arg(long, global = true)]
    pub bits: Option<u32>,
    /// Seed for randomized trials.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of randomized sieve trials.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Refuse dense expansions above this degree.
    #[arg(long = "max-degree", global = true)]
    pub max_degree: Option<u64>,
    /// Flat key=value file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// A fully resolved run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub grid: Vec<BorweinParams>,
    pub d: Option<u64>,
    pub b: Option<i64>,
    pub q: Option<u64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub bits: Option<u32>,
    pub seed: u64,
    pub trials: usize,
    pub max_degree: u64,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_list(key: &str, v: &str) -> Result<Vec<u64>> {
    v.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("{key}: cannot parse {t:?}"))))
        .collect()
}

fn parse_one<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| usage(format!("{key}: cannot parse {v:?}")))
}

/// Reads a flat `key=value` file; `#` starts a comment line.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        map.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(map)
}

/// Fills unset options from a config map.
fn apply_config(opts: &mut Options, map: &BTreeMap<String, String>) -> Result<()> {
    for (k, v) in map {
        match k.as_str() {
            "p" if opts.p.is_empty() => opts.p = parse_list(k, v)?,
            "s" if opts.s.is_empty() => opts.s = parse_list(k, v)?,
            "n" if opts.n.is_none() => opts.n = Some(parse_one(k, v)?),
            "n-max" if opts.n_max.is_none() => opts.n_max = Some(parse_one(k, v)?),
            "d" if opts.d.is_none() => opts.d = Some(parse_one(k, v)?),
            "b" if opts.b.is_none() => opts.b = Some(parse_one(k, v)?),
            "q" if opts.q.is_none() => opts.q = Some(parse_one(k, v)?),
            "format" if opts.format.is_none() => {
                opts.format = Some(Format::parse(v).ok_or_else(|| usage(format!("format: unknown {v:?}")))?)
            }
            "out" if opts.out.is_none() => opts.out = Some(PathBuf::from(v)),
            "bits" if opts.bits.is_none() => opts.bits = Some(parse_one(k, v)?),
            "seed" if opts.seed.is_none() => opts.seed = Some(parse_one(k, v)?),
            "trials" if opts.trials.is_none() => opts.trials = Some(parse_one(k, v)?),
            "max-degree" if opts.max_degree.is_none() => opts.max_degree = Some(parse_one(k, v)?),
            "p" | "s" | "n" | "n-max" | "d" | "b" | "q" | "format" | "out" | "bits" | "seed"
            | "trials" | "max-degree" => {}
            other => return Err(usage(format!("unknown config key {other:?}"))),
        }
    }
    Ok(())
}

impl RunConfig {
    /// Resolves flags and the optional config file; validates every grid point.
    pub fn resolve(command: Command, mut opts: Options) -> Result<RunConfig> {
        if let Some(path) = opts.config.clone() {
            apply_config(&mut opts, &read_config_file(&path)?)?;
        }
        let p_list = if opts.p.is_empty() { vec![3] } else { opts.p.clone() };
        let s_list = if opts.s.is_empty() { vec![1] } else { opts.s.clone() };
        let n_range: Vec<u64> = match (opts.n, opts.n_max) {
            (Some(n), None) => vec![n],
            (Some(lo), Some(hi)) => (lo..=hi).collect(),
            (None, Some(hi)) => (1..=hi).collect(),
            (None, None) => match command {
                Command::Verify | Command::Sweep => (1..=DEFAULT_N_MAX).collect(),
                _ => vec![1],
            },
        };
        let mut grid = Vec::new();
        for &p in &p_list {
            for &s in &s_list {
                for &n in &n_range {
                    grid.push(BorweinParams::new(p, s, n)?);
                }
            }
        }
        grid.sort_by_key(|g| (g.p(), g.s(), g.n()));
        grid.dedup();
        if matches!(command, Command::Expand | Command::Decompose) && grid.len() != 1 {
            return Err(usage(format!(
                "{} takes exactly one (p, s, n), got {}",
                command.name(),
                grid.len()
            )));
        }
        if opts.d == Some(0) {
            return Err(usage("d must be positive"));
        }
        if let Some(bits) = opts.bits {
            if bits < 64 {
                return Err(usage(format!("bits must be at least 64, got {bits}")));
            }
        }
        Ok(RunConfig {
            command,
            grid,
            d: opts.d,
            b: opts.b,
            q: opts.q,
            format: opts.format.unwrap_or(Format::Csv),
            out: opts.out,
            bits: opts.bits,
            seed: opts.seed.unwrap_or(0),
            trials: opts.trials.unwrap_or(DEFAULT_TRIALS),
            max_degree: opts.max_degree.unwrap_or(DEFAULT_MAX_DEGREE),
        })
    }

    /// Where the report goes: `--out`, else the directory named by [`OUT_DIR_ENV`], else
    /// standard output (`None`).
    pub fn output_path(&self) -> Option<PathBuf> {
        self.out.clone().or_else(|| {
            std::env::var_os(OUT_DIR_ENV).map(|dir| {
                PathBuf::from(dir).join(format!("{}.{}", self.command.name(), self.format.extension()))
            })
        })
    }
}

/// Result of a run that completed: how many rows were written and how many failed a check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub rows: usize,
    pub failures: usize,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.failures == 0 {
            0
        } else {
            1
        }
    }
}

/// Runs a resolved configuration, writing the report to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    match config.command {
        Command::Expand => commands::expand(config, out),
        Command::Decompose => commands::decompose(config, out),
        Command::Sum => commands::sum(config, out),
        Command::Verify => commands::verify(config, out),
        Command::SieveTest => commands::sieve_test(config, out),
        Command::Sweep => commands::sweep(config, out),
    }
}

fn run_to_destination(config: &RunConfig) -> Result<Outcome> {
    match config.output_path() {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            let mut w = BufWriter::new(File::create(&path)?);
            let outcome = run(config, &mut w)?;
            w.flush()?;
            Ok(outcome)
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            let outcome = run(config, &mut w)?;
            w.flush()?;
            Ok(outcome)
        }
    }
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = RunConfig::resolve(cli.command, cli.opts).and_then(|cfg| run_to_destination(&cfg));
    match result {
        Ok(outcome) => {
            if outcome.failures > 0 {
                eprintln!("{} check(s) failed", outcome.failures);
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
