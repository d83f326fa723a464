pub mod bbf;
pub mod clifford;
pub mod error;
pub mod filtration;
pub mod lefschetz;
pub mod lie;
pub mod linalg;
pub mod llv;
pub mod report;
pub mod ring;
pub mod sample;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Gaussian, Rational, Scalar};
