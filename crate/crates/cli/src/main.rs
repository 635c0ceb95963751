//! `anyonlab`: band structure, wavefunctions and exchange phases of the
//! three-body inverse-square lattice.

mod commands;
mod config;
mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use commands::{Outcome, WavefunctionArgs};
use config::{Overrides, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("numerical check failed: {0}")]
    Numerical(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Numerical(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "anyonlab", version, about = "Band structure of the three-body Calogero lattice with -1/4 < g < 0")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// `key = value` file with the same keys as the flags below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Pair coupling, in (-1/4, 0). Default -0.16.
    #[arg(long, global = true, allow_hyphen_values = true)]
    g: Option<f64>,
    /// Three-body coupling for the wolfes model, in (-1/4, 0).
    #[arg(long, global = true, allow_hyphen_values = true)]
    f: Option<f64>,
    /// Oscillator frequency. Default 1.
    #[arg(long, global = true)]
    omega: Option<f64>,
    /// Lattice period in x. Default pi/3.
    #[arg(long, global = true)]
    a: Option<f64>,
    /// Comma-separated band (or sub-band) indices. Default 0,1,2,3.
    #[arg(long, global = true)]
    bands: Option<String>,
    /// Points on the k grid over [0, pi/a]. Default 33.
    #[arg(long = "k-points", global = true)]
    k_points: Option<usize>,
    /// Sample points for wavefunctions and Bloch checks. Default 128.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Oracle start offset from a singularity, as a fraction of a. Default 1e-6.
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// csv or json. Default csv.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn overrides(&self) -> Result<Overrides, CliError> {
        Ok(Overrides {
            g: self.g,
            f: self.f,
            omega: self.omega,
            a: self.a,
            bands: self.bands.as_deref().map(config::parse_bands).transpose()?,
            k_points: self.k_points,
            grid: self.grid,
            eps: self.eps,
            format: self.format.clone(),
            out: self.out.clone(),
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analytic dispersion with the oracle cross-check on the k grid.
    Bands,
    /// Bloch wavefunction of one band at one k.
    Wavefunction {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        k: f64,
        /// Number of cells sampled.
        #[arg(long, default_value_t = 2)]
        cells: usize,
        /// Radial quantum number; adds the planar wavefunction columns.
        #[arg(long)]
        l: Option<usize>,
        /// Hyperradius for the planar columns. Default 1.
        #[arg(long)]
        r: Option<f64>,
    },
    /// Exchange phase of particles 2 and 3, analytic and measured.
    Exchange {
        /// Comma-separated wave numbers. Default 0, 1/4, 1/2, 3/4, 1 of pi/a.
        #[arg(long = "k-list")]
        k_list: Option<String>,
        /// Band used for the measured phase.
        #[arg(long, default_value_t = 0)]
        band: usize,
    },
    /// Transfer-matrix diagnostics on the k grid.
    Oracle,
    /// Sub-band dispersion of the model with the three-body term.
    Wolfes,
}

fn parse_ks(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Config(format!("k-list: cannot parse {s:?}"))))
        .collect()
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    let threads = match std::env::var("ANYONLAB_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => n.min(available),
            _ => return Err(CliError::Config(format!("ANYONLAB_THREADS: expected a positive integer, got {v:?}"))),
        },
        Err(_) => available,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.common.config {
        Some(path) => Overrides::from_file(path)?,
        None => Overrides::default(),
    };
    let cfg = RunConfig::resolve(file.merge(cli.common.overrides()?))?;
    let pool = thread_pool()?;
    let Outcome { table, failures } = pool.install(|| match &cli.command {
        Command::Bands => commands::bands(&cfg),
        Command::Wavefunction { n, k, cells, l, r } => {
            commands::wavefunction(&cfg, &WavefunctionArgs { n: *n, k: *k, cells: *cells, l: *l, r: *r })
        }
        Command::Exchange { k_list, band } => {
            let ks = match k_list {
                Some(list) => parse_ks(list)?,
                None => commands::default_exchange_ks(cfg.a),
            };
            commands::exchange(&cfg, &ks, *band)
        }
        Command::Oracle => commands::oracle(&cfg),
        Command::Wolfes => commands::wolfes(&cfg),
    })?;

    let text = table.render(cfg.format);
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    if failures.is_empty() {
        return Ok(());
    }
    let mut block = format!("{} check(s) outside tolerance:", failures.len());
    for f in &failures {
        block.push_str("\n  ");
        block.push_str(f);
    }
    Err(CliError::Numerical(block))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("anyonlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
