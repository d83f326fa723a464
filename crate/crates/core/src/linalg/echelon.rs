use crate::linalg::Subspace;
use crate::scalar::Scalar;

/// A reduced row echelon basis grown one vector at a time, with sparse rows.
///
/// Because rows stay fully reduced, the coordinates of a vector in the span
/// are its entries at the pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    width: usize,
    rows: Vec<Vec<(usize, T)>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl<T: Scalar> Echelon<T> {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![None; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot column of each row, in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<(usize, T)>] {
        &self.rows
    }

    pub fn row_dense(&self, r: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.width];
        for (c, x) in &self.rows[r] {
            v[*c] = x.clone();
        }
        v
    }

    /// Residual of a sorted sparse `v` after reduction against the current rows.
    ///
    /// Rows are fully reduced, so subtracting one never creates an entry at
    /// another pivot and a single pass over the pivot entries of `v` suffices.
    fn reduce(&self, v: Vec<(usize, T)>) -> Vec<(usize, T)> {
        let mut out = v.clone();
        for (c, x) in &v {
            if let Some(r) = self.row_of_pivot[*c] {
                out = sparse_axpy(&out, &self.rows[r], x);
            }
        }
        out
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.width);
        self.insert_reduced(to_sparse(v))
    }

    /// Inserts a sparse vector; entries may repeat and come in any order.
    pub fn insert_sparse(&mut self, v: &[(usize, T)]) -> bool {
        self.insert_reduced(normalize(v))
    }

    fn insert_reduced(&mut self, v: Vec<(usize, T)>) -> bool {
        let w = self.reduce(v);
        let Some((p, lead)) = w.first() else {
            return false;
        };
        let p = *p;
        let inv = lead.try_inv().expect("nonzero");
        let new: Vec<(usize, T)> = w.iter().map(|(j, x)| (*j, x.mul_ref(&inv))).collect();
        for row in &mut self.rows {
            let Ok(pos) = row.binary_search_by_key(&p, |(c, _)| *c) else {
                continue;
            };
            let c = row[pos].1.clone();
            *row = sparse_axpy(row, &new, &c);
        }
        self.row_of_pivot[p] = Some(self.rows.len());
        self.rows.push(new);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(to_sparse(v)).is_empty()
    }

    /// Coordinates against [`Echelon::rows`] (insertion order) of a vector in the span.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Sparse coordinates of a sparse vector assumed to lie in the span.
    pub fn coordinates_sparse_unchecked(&self, v: &[(usize, T)]) -> Vec<(usize, T)> {
        v.iter()
            .filter_map(|(j, x)| self.row_of_pivot[*j].map(|r| (r, x.clone())))
            .collect()
    }

    /// The row whose pivot is `col`, if any.
    pub fn row_of_pivot(&self, col: usize) -> Option<usize> {
        self.row_of_pivot[col]
    }

    pub fn to_subspace(&self) -> Subspace<T> {
        Subspace::span(
            self.width,
            (0..self.rank()).map(|r| self.row_dense(r)).collect(),
        )
    }
}

fn to_sparse<T: Scalar>(v: &[T]) -> Vec<(usize, T)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

/// Sorts, merges repeated indices and drops zeros.
fn normalize<T: Scalar>(v: &[(usize, T)]) -> Vec<(usize, T)> {
    let mut v = v.to_vec();
    v.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, T)> = Vec::with_capacity(v.len());
    for (j, x) in v {
        match out.last_mut() {
            Some((k, y)) if *k == j => *y = y.add_ref(&x),
            _ => out.push((j, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `a - c * b` for sorted sparse vectors.
pub(crate) fn sparse_axpy<T: Scalar>(a: &[(usize, T)], b: &[(usize, T)], c: &T) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let kb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ka < kb {
            out.push(a[i].clone());
            i += 1;
        } else if kb < ka {
            out.push((kb, -c.mul_ref(&b[j].1)));
            j += 1;
        } else {
            let x = a[i].1.sub_ref(&c.mul_ref(&b[j].1));
            if !x.is_zero() {
                out.push((ka, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
