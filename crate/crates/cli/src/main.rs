use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lowdin_kit::{commands, paper_check, sweep, CliError};

#[derive(Parser)]
#[command(name = "lowdin-kit", version, about = "Orthogonalization and Löwdin weights over non-orthogonal bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orthogonalize a basis and report the new basis, T and distortion.
    Orthogonalize {
        #[arg(long)]
        basis: PathBuf,
        /// gram-schmidt, lowdin-sym or lowdin-can
        #[arg(long)]
        method: String,
        /// 1-based processing order for gram-schmidt, e.g. 2,1
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Löwdin weights and delocalization measures of a state.
    Weights {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one parameter and write a CSV of weights and measures.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the reference values and print a PASS/FAIL table.
    PaperCheck,
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Orthogonalize {
            basis,
            method,
            order,
            out,
        } => commands::cmd_orthogonalize(&basis, &method, order.as_deref(), out.as_deref()),
        Command::Weights { state, out } => commands::cmd_weights(&state, out.as_deref()),
        Command::Sweep { spec, out } => sweep::cmd_sweep(&spec, out.as_deref()).map(|_| String::new()),
        Command::PaperCheck => paper_check::cmd_paper_check(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::input("UsageError", e.to_string().lines().next().unwrap_or_default());
            eprintln!("{}", err.to_json_line());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
