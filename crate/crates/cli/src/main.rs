#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod cli;
mod commands;
mod error;
mod output;
mod params;

use clap::Parser;

use crate::cli::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Thermo(a) => commands::thermo::run(a),
        Command::Compare(a) => commands::compare::run(a),
        Command::Negtemp(a) => commands::negtemp::run(a),
        Command::Validate(a) => commands::validate::run(a),
        Command::Spectrum(a) => commands::spectrum::run(a),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
