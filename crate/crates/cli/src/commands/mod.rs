mod hl;
mod kuga;
mod llv;
mod pw;
mod validate;
mod verbitsky;

use std::collections::BTreeMap;

use llvkit::ring::BigradedAlgebra;
use llvkit::Scalar;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Field};
use crate::report::Report;
use crate::setup::{subject, CliError};

pub fn run<T: Scalar>(cli: &Cli) -> Result<Report, CliError> {
    let field = match cli.run.field {
        Field::Rational => "rational",
        Field::Gaussian => "gaussian",
    };
    if let Command::Kuga(args) = &cli.command {
        return kuga::run::<T>(&cli.run, args, field);
    }
    let s = subject::<T>(&cli.run, !matches!(cli.command, Command::Validate))?;
    let mut rep = Report::new(cli.command.name(), s.description.clone(), field);
    match &cli.command {
        Command::Validate => validate::run(&s, &mut rep),
        Command::Llv => llv::run(&s, &mut rep),
        Command::Pw(args) => pw::run(&s, args, &mut rep)?,
        Command::Hl => hl::run(&s, &mut rep),
        Command::Verbitsky => verbitsky::run(&s, &mut rep)?,
        Command::Kuga(_) => unreachable!("handled above"),
    }
    Ok(rep)
}

/// Hodge numbers keyed `"p,q"`.
fn hodge_numbers<T: Scalar>(b: &BigradedAlgebra<T>) -> Value {
    let map: BTreeMap<String, usize> = b
        .hodge_numbers()
        .into_iter()
        .map(|((p, q), d)| (format!("{p},{q}"), d))
        .collect();
    json!(map)
}

/// Nonzero entries of a filtration jump table, keyed by index.
fn jumps(j: &BTreeMap<i64, usize>) -> Value {
    let map: BTreeMap<String, usize> = j.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    json!(map)
}
