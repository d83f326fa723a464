//! Deterministic enumeration of test vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{dot, Matrix};
use crate::scalar::Scalar;

/// Deterministic sequence of integer vectors: sparse ones first (`e_i`,
/// `e_i + c e_j`, `e_i + e_j + c e_k`), then seeded pseudo-random ones.
///
/// Sparse samples keep the echelon form of the ideal sparse with small entries.
pub struct IntVectors {
    b: usize,
    sparse: Vec<Vec<(usize, i64)>>,
    pos: usize,
    rng: ChaCha8Rng,
}

impl IntVectors {
    pub fn new(b: usize, seed: u64) -> Self {
        let mut sparse = Vec::new();
        for i in 0..b {
            sparse.push(vec![(i, 1)]);
        }
        for c in [1, -1, 2, -2] {
            for i in 0..b {
                for j in i + 1..b {
                    sparse.push(vec![(i, 1), (j, c)]);
                }
            }
        }
        for c in [1, -1] {
            for i in 0..b {
                for j in i + 1..b {
                    for k in j + 1..b {
                        sparse.push(vec![(i, 1), (j, 1), (k, c)]);
                    }
                }
            }
        }
        IntVectors {
            b,
            sparse,
            pos: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Only the pseudo-random part of the sequence.
    pub fn dense(b: usize, seed: u64) -> Self {
        IntVectors {
            b,
            sparse: Vec::new(),
            pos: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_vector(&mut self) -> Vec<i64> {
        if let Some(terms) = self.sparse.get(self.pos) {
            self.pos += 1;
            let mut v = vec![0; self.b];
            for &(i, c) in terms {
                v[i] = c;
            }
            return v;
        }
        (0..self.b).map(|_| self.rng.gen_range(-3..=3)).collect()
    }
}

impl Iterator for IntVectors {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        Some(self.next_vector())
    }
}

/// Isotropic vectors `v - q(v)/(2 q(v, e)) e` for the enumerated integer `v`
/// with `q(v, e) ≠ 0`, where `e` is a fixed isotropic vector. Empty when `e`
/// is in the radical of `form`.
pub fn isotropic_vectors<'a, T: Scalar>(
    form: &'a Matrix<T>,
    e: &[T],
    seed: u64,
) -> impl Iterator<Item = Vec<T>> + 'a {
    let qe = form.mul_vec(e);
    let e = e.to_vec();
    // every q(v, e) vanishes when e lies in the radical
    let live = !qe.iter().all(T::is_zero);
    IntVectors::new(form.rows(), seed)
        .take_while(move |_| live)
        .filter_map(move |v| {
            let v: Vec<T> = v.into_iter().map(T::from_int).collect();
            let ve = dot(&v, &qe);
            if ve.is_zero() {
                return None;
            }
            let t = form.bilinear(&v, &v) / (ve * T::from_int(2));
            let w: Vec<T> = v
                .iter()
                .zip(&e)
                .map(|(x, y)| x.sub_ref(&t.mul_ref(y)))
                .collect();
            Some(w)
        })
}
