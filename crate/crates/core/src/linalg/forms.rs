use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub null: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.null
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.null == 0
    }

    pub fn is_definite(&self) -> bool {
        self.null == 0 && (self.pos == 0 || self.neg == 0)
    }
}

/// Congruence diagonalization `P^T Q P = diag(d)`.
#[derive(Clone, Debug)]
pub struct Diagonalization<T: Scalar> {
    /// Columns are the new (pairwise orthogonal) basis vectors.
    pub basis: Matrix<T>,
    pub diagonal: Vec<T>,
}

pub fn diagonalize_symmetric<T: Scalar>(q: &Matrix<T>) -> Result<Diagonalization<T>> {
    if !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = q.rows();
    let mut a = q.clone();
    let mut p = Matrix::<T>::identity(n);

    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_sym(&mut a, k, j);
                for i in 0..n {
                    let t = p[(i, k)].clone();
                    p[(i, k)] = p[(i, j)].clone();
                    p[(i, j)] = t;
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                // e_k <- e_k + e_j turns the hyperbolic pair into an anisotropic vector
                for i in 0..n {
                    let t = a[(i, k)].add_ref(&a[(i, j)]);
                    a[(i, k)] = t;
                }
                for i in 0..n {
                    let t = a[(k, i)].add_ref(&a[(j, i)]);
                    a[(k, i)] = t;
                }
                for i in 0..n {
                    let t = p[(i, k)].add_ref(&p[(i, j)]);
                    p[(i, k)] = t;
                }
            } else {
                continue;
            }
        }
        let pivot_inv = a[(k, k)].try_inv().expect("nonzero pivot");
        let col: Vec<(usize, T)> = (k + 1..n)
            .filter(|&i| !a[(i, k)].is_zero())
            .map(|i| (i, a[(i, k)].mul_ref(&pivot_inv)))
            .collect();
        for &(i, ref fi) in &col {
            for &(l, _) in &col {
                let d = fi.mul_ref(&a[(k, l)]);
                a[(i, l)] = a[(i, l)].sub_ref(&d);
            }
        }
        for &(i, ref fi) in &col {
            a[(i, k)] = T::zero();
            a[(k, i)] = T::zero();
            for r in 0..n {
                if !p[(r, k)].is_zero() {
                    let d = fi.mul_ref(&p[(r, k)]);
                    p[(r, i)] = p[(r, i)].sub_ref(&d);
                }
            }
        }
    }
    let diagonal = (0..n).map(|i| a[(i, i)].clone()).collect();
    Ok(Diagonalization { basis: p, diagonal })
}

fn swap_sym<T: Scalar>(a: &mut Matrix<T>, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// Inertia of a real symmetric matrix.
pub fn symmetric_signature<T: Scalar>(q: &Matrix<T>) -> Result<Signature> {
    let d = diagonalize_symmetric(q)?;
    let mut sig = Signature {
        pos: 0,
        neg: 0,
        null: 0,
    };
    for x in &d.diagonal {
        match x.real_sign() {
            Some(Ordering::Greater) => sig.pos += 1,
            Some(Ordering::Less) => sig.neg += 1,
            Some(Ordering::Equal) => sig.null += 1,
            None => return Err(Error::DegenerateForm("form is not real".into())),
        }
    }
    Ok(sig)
}

/// Eigenspaces of `m` for the declared integer spectrum.
///
/// Fails unless the eigenspaces for `candidates` fill the whole space.
pub fn integer_eigenspaces<T: Scalar>(
    m: &Matrix<T>,
    candidates: &[i64],
) -> Result<BTreeMap<i64, Subspace<T>>> {
    if !m.is_square() {
        return Err(Error::Dimension(
            "eigenspaces of a non-square matrix".into(),
        ));
    }
    let n = m.rows();
    let mut out = BTreeMap::new();
    let mut total = 0;
    for &lambda in candidates {
        if out.contains_key(&lambda) {
            continue;
        }
        let shifted = m - &Matrix::scalar(n, T::from_int(lambda));
        let space = shifted.kernel();
        total += space.dim();
        out.insert(lambda, space);
    }
    if total != n {
        return Err(Error::NotDiagonalizable(candidates.to_vec()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};
    use proptest::prelude::*;

    type M = Matrix<Rational>;

    #[test]
    fn signature_examples() {
        let q = M::diagonal(&[int(1), int(1), int(1), int(-1), int(-1)]);
        assert_eq!(
            symmetric_signature(&q).unwrap(),
            Signature {
                pos: 3,
                neg: 2,
                null: 0
            }
        );
        assert_eq!(
            symmetric_signature(&M::zeros(2, 2)).unwrap(),
            Signature {
                pos: 0,
                neg: 0,
                null: 2
            }
        );
        let hyp = M::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            symmetric_signature(&hyp).unwrap(),
            Signature {
                pos: 1,
                neg: 1,
                null: 0
            }
        );
    }

    #[test]
    fn nonsymmetric_rejected() {
        let q = M::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(symmetric_signature(&q), Err(Error::NotSymmetric));
    }

    #[test]
    fn diagonalization_is_a_congruence() {
        let q = M::from_ints(&[&[0, 1, 2], &[1, 0, 3], &[2, 3, 0]]);
        let d = diagonalize_symmetric(&q).unwrap();
        let lhs = &(&d.basis.transpose() * &q) * &d.basis;
        assert_eq!(lhs, M::diagonal(&d.diagonal));
        assert!(d.basis.is_invertible());
    }

    #[test]
    fn eigenspace_examples() {
        let m = M::diagonal(&[int(-2), int(0), int(2)]);
        let sp = integer_eigenspaces(&m, &[-2, 0, 2]).unwrap();
        assert!(sp.values().all(|s| s.dim() == 1));
        let id = M::identity(4);
        assert_eq!(integer_eigenspaces(&id, &[1]).unwrap()[&1].dim(), 4);
        let nil = M::from_ints(&[&[0, 1], &[0, 0]]);
        assert!(matches!(
            integer_eigenspaces(&nil, &[0]),
            Err(Error::NotDiagonalizable(_))
        ));
    }

    fn invertible() -> impl Strategy<Value = M> {
        proptest::collection::vec(-2i64..=2, 16)
            .prop_map(|v| M::from_fn(4, 4, |i, j| int(v[i * 4 + j])))
            .prop_filter("invertible", |m| m.is_invertible())
    }

    proptest! {
        #[test]
        fn signature_is_congruence_invariant(p in invertible(), d in proptest::collection::vec(-2i64..=2, 4)) {
            let q = M::diagonal(&d.iter().map(|&x| int(x)).collect::<Vec<_>>());
            let q2 = &(&p.transpose() * &q) * &p;
            prop_assert_eq!(symmetric_signature(&q).unwrap(), symmetric_signature(&q2).unwrap());
        }
    }
}
