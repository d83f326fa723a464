//! Model cohomology rings.

mod bigraded;
mod bogomolov;
mod fixtures;
mod format;
mod graded;
mod sym;

pub use bigraded::BigradedAlgebra;
pub use bogomolov::{
    admissible_frame, bogomolov_model, bogomolov_model_with, find_isotropic, rational_sqrt,
    BogomolovModel, Frame,
};
pub use fixtures::{bigraded_torus, is_k3_signature, k3_gram, k3_ring, torus_ring};
pub use format::{
    load_ring, load_ring_unvalidated, parse_ring, parse_ring_unvalidated, ring_to_json, save_ring,
    AnyRing, RingFile,
};
pub use graded::{GradedAlgebra, Sparse, StructureConstant, ValidationReport, Violation};
pub use sym::{binomial, predicted_dim, sym_dim, sym_quotient, Saturation, SymQuotient};
