mod args;
mod commands;
mod report;
mod setup;

use std::process::ExitCode;

use clap::Parser;
use llvkit::{Gaussian, Rational};

use crate::args::{Cli, Field, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match cli.run.field {
        Field::Rational => commands::run::<Rational>(&cli),
        Field::Gaussian => commands::run::<Gaussian>(&cli),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.run.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match &cli.run.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            println!("{}: {}", path.display(), report.summary());
        }
        None => print!("{body}"),
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
