#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let result = match &cli.command {
        Command::Relate(a) => commands::relate(a, &mut out),
        Command::Widths(a) => commands::widths(a, &mut out),
        Command::Spinboson(a) => commands::spinboson(a, &mut out, &mut err),
        Command::Respond(a) => commands::respond(a, &mut out, &mut err),
        Command::Oracle(a) => commands::oracle(a, &mut out, &mut err),
        Command::Casestudies(a) => commands::casestudies(a, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
