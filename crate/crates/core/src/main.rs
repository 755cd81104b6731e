use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperdense_sim::harness::{self, CampaignConfig, HarnessError, OutputFormat, Protocol};
use hyperdense_sim::hyperdense::PairSource;

#[derive(Parser)]
#[command(
    name = "hdsim",
    version,
    about = "Hyperdense coding vs superdense coding vs slotted-Aloha"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Slotted-Aloha with M cooperative users.
    Aloha {
        #[command(flatten)]
        run: RunArgs,
        /// Number of users.
        #[arg(long)]
        users: Option<u32>,
        /// Per-user transmit probability (default 1/M).
        #[arg(long = "p")]
        p: Option<f64>,
    },
    /// Superdense coding round trips.
    Superdense {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Hyperdense coding slots.
    Hyperdense {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = CSource::Qubit)]
        c_source: CSource,
    },
    /// All three protocols side by side.
    Compare {
        #[command(flatten)]
        run: RunArgs,
    },
    /// The eight-scenario hyperdense operation table.
    Table {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 1_000_000)]
    slots: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; output does not depend on this.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CSource {
    Qubit,
    Coin,
}

fn config(protocol: Protocol, run: RunArgs) -> CampaignConfig {
    CampaignConfig {
        n_slots: run.slots,
        seed: run.seed,
        format: run.format.into(),
        workers: run.workers,
        ..CampaignConfig::new(protocol)
    }
}

fn execute(cli: Cli) -> Result<String, HarnessError> {
    let cfg = match cli.command {
        Command::Table { format } => return harness::enumerate_table(format.into()),
        Command::Aloha { run, users, p } => CampaignConfig {
            users,
            p,
            ..config(Protocol::Aloha, run)
        },
        Command::Superdense { run } => config(Protocol::Superdense, run),
        Command::Hyperdense { run, c_source } => CampaignConfig {
            c_source: match c_source {
                CSource::Qubit => PairSource::Qubit,
                CSource::Coin => PairSource::Coin,
            },
            ..config(Protocol::Hyperdense, run)
        },
        Command::Compare { run } => config(Protocol::Compare, run),
    };
    harness::run_campaign(&cfg)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
