//! `cooccur`: corpus co-occurrence analytics from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 corpus or config error,
//! 3 output IO error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::PipelineArgs;

#[derive(Parser)]
#[command(name = "cooccur", version, about = "Corpus co-occurrence analytics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline for every phase and the whole corpus
    Analyze(PipelineArgs),
    /// Compare two phases and write a diff report
    Diff {
        #[arg(long)]
        phase_a: String,
        #[arg(long)]
        phase_b: String,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
    /// Rank an author,weight CSV against a teacher and print the table
    Rank {
        weights_csv_path: PathBuf,
        #[arg(long, default_value = "0")]
        teacher: String,
    },
    /// Print each document's tokens as JSON lines
    Tokenize(PipelineArgs),
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn output(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }

    pub fn from_input(e: cooccur::Error) -> Self {
        Failure::input(e.to_string())
    }

    pub fn from_output(e: cooccur::Error) -> Self {
        Failure::output(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!(
                "error: {}",
                msg.lines()
                    .next()
                    .unwrap_or("invalid arguments")
                    .trim_start_matches("error: ")
            );
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Diff {
            phase_a,
            phase_b,
            pipeline,
        } => commands::diff(pipeline, &phase_a, &phase_b),
        Command::Rank {
            weights_csv_path,
            teacher,
        } => commands::rank(&weights_csv_path, &teacher),
        Command::Tokenize(args) => commands::tokenize(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
