//! `autocond` command line: run, sweep, check, parse and gen.
//!
//! Exit codes: 0 success, 1 check failure or runtime error, 2 usage error.

mod args;
mod check;
mod data;
mod instance;
mod run;
mod sweep;

use std::fmt;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failed(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<autocond::Error> for CliError {
    fn from(e: autocond::Error) -> Self {
        match e {
            autocond::Error::InvalidArgument(_) | autocond::Error::Config(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Run(a) => run::run(&a).map(|_| true),
        Command::Sweep(a) => sweep::sweep(&a).map(|_| true),
        Command::Check(a) => check::check(&a),
        Command::Parse(a) => data::parse(&a).map(|_| true),
        Command::Gen(a) => data::gen(&a).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILURE),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Failed(_) => EXIT_FAILURE,
            })
        }
    }
}
