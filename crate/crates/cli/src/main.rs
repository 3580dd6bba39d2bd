//! `becsc`: bounds, index codes and two-receiver simulations from JSON configs.
//!
//! Exit codes: 0 success, 2 config error, 3 unsupported graph family,
//! 4 verification failure, 5 simulation timeout, 1 I/O failure.

mod commands;
mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use becsc::codes::GraphFamily;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::Outcome;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Unsupported(String),
    Verification(String),
    Timeout(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Timeout(_) => 5,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Unsupported(m) => f.write_str(m),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Timeout(m) => write!(f, "simulation timeout: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<becsc::Error> for CliError {
    fn from(e: becsc::Error) -> Self {
        match e {
            becsc::Error::Unsupported(_) => CliError::Unsupported(e.to_string()),
            becsc::Error::Timeout { .. } => CliError::Timeout(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "becsc", version, about = "Broadcast erasure channel bounds, index codes and simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the outer bound for every receiver ordering.
    Bound(Common),
    /// Maximum weighted acyclic induced subgraph of the side-information graph.
    Mwais(Common),
    /// Build and verify an index code for a special graph.
    Indexcode(IndexArgs),
    /// Monte Carlo run of the two-receiver feedback scheme.
    Simulate2(SimArgs),
    /// Check that a schedule file lets every receiver decode.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Result file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct IndexArgs {
    #[command(flatten)]
    common: Common,
    /// Use this family instead of detecting one; it must match the graph.
    #[arg(long)]
    family: Option<GraphFamily>,
}

#[derive(Args)]
struct SimArgs {
    #[command(flatten)]
    common: Common,
    /// Overrides the config trial count.
    #[arg(long)]
    trials: Option<u64>,
    /// Worker threads for the trials.
    #[arg(long, env = "BECSC_THREADS")]
    threads: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn render(command: &str, seed: u64, raw: &serde_json::Value, out: &Outcome, elapsed: f64, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let record = json!({
                "command": command,
                "seed": seed,
                "inputs": raw,
                "outputs": out.outputs,
                "wall_clock_s": elapsed,
            });
            Ok(serde_json::to_string_pretty(&record).expect("record serializes") + "\n")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(&out.table.header).map_err(io)?;
            for row in &out.table.rows {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (name, common) = match &cli.command {
        Command::Bound(c) => ("bound", c),
        Command::Mwais(c) => ("mwais", c),
        Command::Indexcode(a) => ("indexcode", &a.common),
        Command::Simulate2(a) => ("simulate2", &a.common),
        Command::Verify(c) => ("verify", c),
    };
    let loaded = config::load(&common.config)?;
    let seed = common.seed.or(loaded.config.seed).unwrap_or(0);
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Bound(_) => commands::bound(&loaded, seed),
        Command::Mwais(_) => commands::mwais_cmd(&loaded, seed),
        Command::Indexcode(a) => commands::indexcode(&loaded, seed, a.family),
        Command::Simulate2(a) => commands::simulate2(&loaded, seed, a.trials, a.threads),
        Command::Verify(_) => commands::verify(&loaded, seed),
    }?;
    let elapsed = start.elapsed().as_secs_f64();
    let text = render(name, seed, &loaded.raw, &outcome, elapsed, common.format)?;
    for (path, contents) in &outcome.files {
        write_file(path, contents)?;
    }
    match &common.out {
        Some(path) => write_file(path, &text)?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    match outcome.failure {
        Some(why) => Err(CliError::Verification(why)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("becsc: {e}");
            ExitCode::from(e.code())
        }
    }
}
