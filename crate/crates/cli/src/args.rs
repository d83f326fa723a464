use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "llvkit",
    version,
    about = "Exact checks of Lefschetz structures on model cohomology rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub run: RunConfig,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ring axioms, bigrading, graded dimensions, form signature, Fujiki relation.
    Validate,
    /// Lie algebra generated by the Lefschetz operators and its structure.
    Llv,
    /// Perverse and weight filtrations of a Lagrangian monodromy operator.
    Pw(PwArgs),
    /// Clifford algebra, complex structure and trace polarization.
    Kuga(KugaArgs),
    /// Hard Lefschetz, symplectic sl2's, Weil operator, so(4) and so(4,1).
    Hl,
    /// Subalgebra generated by degree 2 and powers of isotropic classes.
    Verbitsky,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Built-in ring.
    #[arg(long, global = true, value_enum, conflicts_with = "input")]
    pub fixture: Option<Fixture>,

    /// Ring description file (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Second Betti number of the bogomolov fixture.
    #[arg(long, global = true)]
    pub b2: Option<usize>,

    /// Half the complex dimension (top degree 4n) of the bogomolov fixture.
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Complex dimension of the torus fixture.
    #[arg(long, global = true)]
    pub g: Option<usize>,

    /// Quadratic form on degree 2: `diag:a,b,...` or rows `a,b;c,d`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Field::Rational)]
    pub field: Field,

    /// Maximum number of isotropic samples when saturating the ideal.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub budget: usize,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PwArgs {
    /// Isotropic class β, comma-separated degree-2 coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Isotropic class η.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    /// Positive class ρ orthogonal to β and η.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
}

#[derive(Debug, Args)]
pub struct KugaArgs {
    /// Dimension of the quadratic space; without --q the form is diag(1,1,1,-1,...).
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    K3,
    Bogomolov,
    Torus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Rational,
    Gaussian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "structured")]
    Json,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Llv => "llv",
            Command::Pw(_) => "pw",
            Command::Kuga(_) => "kuga",
            Command::Hl => "hl",
            Command::Verbitsky => "verbitsky",
        }
    }
}
