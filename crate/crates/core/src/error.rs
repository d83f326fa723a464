use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("not diagonalizable with given spectrum {0:?}")]
    NotDiagonalizable(Vec<i64>),

    #[error("parse error{}: {message}", if location.is_empty() { String::new() } else { format!(" at {location}") })]
    Parse { location: String, message: String },

    #[error("inconsistent ring description: {0}")]
    Inconsistent(String),

    #[error("ring validation failed: {0}")]
    Validation(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("element has degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: String },

    #[error("not an HL class")]
    NotHardLefschetz,

    #[error("no rational isotropic vectors")]
    NoIsotropicVectors,

    #[error("ideal saturation failed in degree {degree}: expected dimension {expected}, reached {reached}")]
    SaturationFailed {
        degree: usize,
        expected: usize,
        reached: usize,
    },

    #[error("degenerate form: {0}")]
    DegenerateForm(String),

    #[error("degenerate symplectic top power")]
    DegenerateSymplecticPower,

    #[error("Fujiki relation fails: {0}")]
    FujikiFails(String),

    #[error("operator is not nilpotent")]
    NotNilpotent,

    #[error("not semisimple: Killing form degenerate")]
    NotSemisimple,

    #[error("invalid Lagrangian triple: {0}")]
    InvalidTriple(String),

    #[error("β must be isotropic and nonzero")]
    NotIsotropic,

    #[error("requires admissible pair: {0}")]
    Inadmissible(String),

    #[error("size bound exceeded: {0}")]
    TooLarge(String),

    #[error("field has no square root of -1")]
    NeedsGaussian,

    #[error("structural identity violated: {0}")]
    Structural(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
