use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kahler_cli::commands::{cmd_analyze, cmd_batch, cmd_fixtures, AnalyzeOptions};

/// Lower central series invariants and Kähler obstructions for finite
/// group presentations.
#[derive(Parser)]
#[command(name = "kahler", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single presentation file.
    Analyze {
        file: PathBuf,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Show the citation and the inequality behind each verdict.
        #[arg(long)]
        explain: bool,
        /// Recompute the dimensions through the nilpotent-group oracle and
        /// fail on disagreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Analyze every `.pres` file in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write the bundled example corpus.
    Fixtures { dir: PathBuf },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            file,
            json,
            explain,
            oracle,
        } => match cmd_analyze(
            &file,
            AnalyzeOptions {
                json,
                explain,
                oracle,
            },
        ) {
            Ok(out) => {
                print!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                code(e.exit_code())
            }
        },
        Command::Batch { dir, json } => match cmd_batch(&dir) {
            Ok(outcome) => {
                if json {
                    print!("{}", outcome.to_json());
                } else {
                    print!("{}", outcome.to_text());
                }
                code(outcome.exit_code)
            }
            Err(e) => {
                eprintln!("error: {e}");
                code(e.exit_code())
            }
        },
        Command::Fixtures { dir } => match cmd_fixtures(&dir) {
            Ok(files) => {
                println!("wrote {} files to {}", files.len(), dir.display());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                code(e.exit_code())
            }
        },
    }
}
