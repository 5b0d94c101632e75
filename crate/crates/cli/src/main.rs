//! Command-line driver for the special-Lagrangian toolkit: attractor
//! flows, neck geometry, smoothing certificates and gluing exponents
//! on the product-torus threefold.

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

mod commands;
mod config;
mod report;

#[derive(Parser)]
#[command(name = "slflow", version, about, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: commands::Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are not errors; anything else is bad input.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match cli.command.run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
