use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use closure_lab::{run_source, RunOptions};

#[derive(Parser)]
#[command(name = "closure-lab", version, about = "Run closure-operation sessions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a session file.
    Run {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Execute an inline session.
    Check {
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Override the Frobenius bound of every oracle.
    #[arg(long)]
    emax: Option<u32>,
    /// Seed for randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (src, common) = match cli.command {
        Command::Run { file, common } => match std::fs::read_to_string(&file) {
            Ok(s) => (s, common),
            Err(e) => {
                eprintln!("cannot read {}: {e}", file.display());
                return ExitCode::from(2);
            }
        },
        Command::Check { expr, common } => (expr, common),
    };
    let opts = RunOptions {
        emax: common.emax,
        seed: common.seed,
    };
    let report = run_source(&src, &opts);
    let text = match common.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    // A closed pipe downstream is not an error of the session.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(report.exit_code() as u8)
}
