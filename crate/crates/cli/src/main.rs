//! `ggverify`: command-line front end for the identity checks.
//!
//! Exit codes: 0 pass, 1 identity mismatch, 2 usage error, 3 internal
//! arithmetic error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::{cmd_count, cmd_hilbert, cmd_series, cmd_verify, Outcome};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // help and version exit 0, usage errors exit 2
        Err(e) => e.exit(),
    };
    let result = match &cli.command {
        Command::Series(a) => cmd_series(a),
        Command::Count(a) => cmd_count(a),
        Command::Hilbert(a) => cmd_hilbert(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(outcome) => outcome.into(),
        Err(e) => {
            eprintln!("ggverify: {e}");
            let code: Outcome = e.outcome();
            code.into()
        }
    }
}
