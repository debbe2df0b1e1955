mod args;
mod cmd;
mod io;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Timeout = 2,
    BenchMismatch = 3,
    OracleMismatch = 4,
    NonIsomorphic = 10,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Exit::Usage as u8),
            };
        }
    };
    let result = match &cli.command {
        Command::Canonize(a) => cmd::canonize::run(&cli, a),
        Command::Isocheck(a) => cmd::isocheck::run(&cli, a),
        Command::Dedupe(a) => cmd::dedupe::run(&cli, a),
        Command::Bench(a) => cmd::bench::run(&cli, a),
        Command::Gen(a) => cmd::gen::run(&cli, a),
        Command::OracleCheck(a) => cmd::oracle_check::run(&cli, a),
    };
    let exit = match result {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<mlex::Error>() {
                Some(mlex::Error::Timeout { .. }) => Exit::Timeout,
                _ => Exit::Usage,
            }
        }
    };
    ExitCode::from(exit as u8)
}
