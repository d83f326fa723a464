//! Exact linear algebra: dense matrices, canonical subspaces, quadratic forms.

mod echelon;
mod forms;
mod matrix;
mod subspace;

pub(crate) use echelon::sparse_axpy;
pub use echelon::Echelon;
pub use forms::{
    diagonalize_symmetric, integer_eigenspaces, symmetric_signature, Diagonalization, Signature,
};
pub use matrix::{dot, rref_rows, Matrix};
pub use subspace::Subspace;

use crate::scalar::Scalar;

/// `i`-th standard basis vector of `T^n`.
pub fn unit_vector<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

pub fn scale_vec<T: Scalar>(v: &[T], c: &T) -> Vec<T> {
    v.iter().map(|x| x.mul_ref(c)).collect()
}

pub fn add_vec<T: Scalar>(v: &[T], w: &[T]) -> Vec<T> {
    v.iter().zip(w).map(|(a, b)| a.add_ref(b)).collect()
}

pub fn sub_vec<T: Scalar>(v: &[T], w: &[T]) -> Vec<T> {
    v.iter().zip(w).map(|(a, b)| a.sub_ref(b)).collect()
}

pub fn is_zero_vec<T: Scalar>(v: &[T]) -> bool {
    v.iter().all(T::is_zero)
}
