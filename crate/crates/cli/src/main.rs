//! `aperiodic`: command-line front end to the point-set toolkit.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use aperiodic_core::verify::{run_suite, Budget, Suite};
use aperiodic_core::Error;
use clap::{Parser, Subcommand};
use serde_json::json;

use commands::Outputs;
use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("check failed: {0}")]
    Check(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Check(_) => 3,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                Error::Io(_) => 1,
                Error::IncompleteEnumeration { .. } | Error::InsufficientPoints | Error::ScanTooSmall => 3,
                _ => 2,
            },
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "aperiodic", version, about = "Colored Delone sets: statistics, hull geometry and diffraction")]
struct Cli {
    /// JSON run configuration (or a manifest from an earlier run).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for random sources; overrides the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also write whitespace-separated `.dat` files for gnuplot.
    #[arg(long, global = true)]
    plot_data: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the points of a window as JSON.
    Generate,
    /// Enumerate translational classes of ball clusters.
    Classes,
    /// Estimate a cluster frequency along a van Hove schedule.
    Freq,
    /// Autocorrelation coefficients by the frequency and direct routes.
    Autocorr,
    /// Scan for Bragg peaks.
    Diffract,
    /// Bracket the hull distance between `source` and `other`.
    Metric,
    /// Build the cylinder partition of the hull.
    Partition,
    /// Run an acceptance suite: lattice, fibonacci, controls or all.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// Smaller averaging regions; same tolerances.
        #[arg(long)]
        fast: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    if let Command::Verify { suite, fast } = &cli.command {
        let suite: Suite = suite.parse().map_err(|e: Error| CliError::Config(e.to_string()))?;
        let rows = run_suite(suite, Budget { fast: *fast });
        for r in &rows {
            println!("{r}");
        }
        let failed: Vec<u8> = rows.iter().filter(|r| !r.passed).map(|r| r.id).collect();
        return if failed.is_empty() {
            Ok(())
        } else {
            Err(CliError::Check(format!("criteria {failed:?}")))
        };
    }
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    if cli.plot_data {
        cfg.plot_data = Some(true);
    }
    let mut out = Outputs::new(&cli.out, cfg.plot_data.unwrap_or(false))?;
    let (name, summary) = match cli.command {
        Command::Generate => ("generate", commands::generate(&mut cfg, &mut out)?),
        Command::Classes => ("classes", commands::classes(&mut cfg, &mut out)?),
        Command::Freq => ("freq", commands::freq(&mut cfg, &mut out)?),
        Command::Autocorr => ("autocorr", commands::autocorr(&mut cfg, &mut out)?),
        Command::Diffract => ("diffract", commands::diffract(&mut cfg, &mut out)?),
        Command::Metric => ("metric", commands::metric(&mut cfg, &mut out)?),
        Command::Partition => ("partition", commands::partition(&mut cfg, &mut out)?),
        Command::Verify { .. } => unreachable!("handled above"),
    };
    let mut outputs = out.files.clone();
    outputs.push("manifest.json".into());
    let manifest = json!({
        "tool": "aperiodic",
        "version": env!("CARGO_PKG_VERSION"),
        "command": name,
        "config": cfg,
        "outputs": outputs,
    });
    out.json("manifest.json", &manifest)?;
    println!("{name}: {summary}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("aperiodic: {e}");
            ExitCode::from(e.code())
        }
    }
}
