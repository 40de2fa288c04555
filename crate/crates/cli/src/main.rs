use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cmfree_cli::commands::{self, Options, Outcome, Theorem, EXIT_INPUT};

#[derive(Parser)]
#[command(
    name = "cmfree",
    version,
    about = "Gorenstein-projective classification over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an algebra: GP modules, dimensions, Gorensteinness, Aus(A)
    Classify {
        file: PathBuf,
        /// print the JSON envelope instead of the text summary
        #[arg(long)]
        json: bool,
        /// include GP certificate summaries in the JSON
        #[arg(long)]
        certificates: bool,
        /// override the field characteristic
        #[arg(long = "char")]
        characteristic: Option<u32>,
        /// depth cap for syzygy searches and dimensions
        #[arg(long)]
        cap: Option<usize>,
        /// record wall-clock time in the envelope
        #[arg(long)]
        timing: bool,
    },
    /// Run one verification suite
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        json: bool,
        #[arg(long = "char")]
        characteristic: Option<u32>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        timing: bool,
    },
    /// Build Aus(A) and write it as a structure-constants spec file
    Aus {
        file: PathBuf,
        #[arg(long)]
        emit: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long = "char")]
        characteristic: Option<u32>,
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn emit(outcome: &Outcome, json: bool) -> ExitCode {
    if json {
        print!("{}", outcome.json);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.exit_code() as u8)
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            file,
            json,
            certificates,
            characteristic,
            cap,
            timing,
        } => {
            let opts = Options {
                characteristic,
                cap,
                certificates,
                timing,
            };
            let text = match read(&file) {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            match commands::classify(&text, &opts) {
                Ok((outcome, _)) => emit(&outcome, json),
                Err(e) => input_error(e),
            }
        }
        Command::Verify {
            file,
            theorem,
            json,
            characteristic,
            cap,
            timing,
        } => {
            let opts = Options {
                characteristic,
                cap,
                certificates: false,
                timing,
            };
            let text = match read(&file) {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            match commands::verify(&text, theorem, &opts) {
                Ok((outcome, _)) => emit(&outcome, json),
                Err(e) => input_error(e),
            }
        }
        Command::Aus {
            file,
            emit: out,
            json,
            characteristic,
            cap,
        } => {
            let opts = Options {
                characteristic,
                cap,
                ..Options::default()
            };
            let text = match read(&file) {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            match commands::aus(&text, &opts) {
                Ok((outcome, spec)) => {
                    if let Err(e) = std::fs::write(&out, spec) {
                        return input_error(format!("cannot write {}: {e}", out.display()));
                    }
                    emit(&outcome, json)
                }
                Err(e) => input_error(e),
            }
        }
    }
}
