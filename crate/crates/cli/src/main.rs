mod crosscheck;
mod member;
mod models;
mod normalize;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ringproof::checker::{OutputFormat, RunConfiguration};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Usage = 2,
    ResourceCap = 3,
}

#[derive(Parser)]
#[command(name = "ringproof", version, about = "Checks equational proofs about rings without unity")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Configuration file (defaults to $RINGPROOF_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify proof scripts.
    Verify(verify::Args),
    /// Print the canonical form of an expression.
    Normalize(normalize::Args),
    /// Decide ideal membership of a target within a degree bound.
    Member(member::Args),
    /// Enumerate finite rings satisfying identities.
    Models(models::Args),
    /// Check every verified theorem against small finite models.
    Crosscheck(crosscheck::Args),
}

/// Shared settings after merging the config file with command-line flags.
pub struct Context {
    pub config: RunConfiguration,
}

impl Context {
    pub fn json(&self) -> bool {
        self.config.format == OutputFormat::Json
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let config = match &cli.config {
        Some(p) => RunConfiguration::load(p),
        None => RunConfiguration::from_env(),
    };
    let mut config = match config {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Usage as u8);
        }
    };
    if cli.json {
        config.format = OutputFormat::Json;
    }
    let mut ctx = Context { config };
    let status = match cli.command {
        Command::Verify(a) => verify::run(a, &mut ctx),
        Command::Normalize(a) => normalize::run(a, &ctx),
        Command::Member(a) => member::run(a, &ctx),
        Command::Models(a) => models::run(a, &ctx),
        Command::Crosscheck(a) => crosscheck::run(a, &ctx),
    };
    ExitCode::from(status as u8)
}
