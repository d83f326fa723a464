//! Matrix Lie algebras: sparse bracket closure, ad-gradings, Killing forms
//! and the identification of orthogonal algebras by dimension and signature.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{symmetric_signature, Echelon, Matrix};
use crate::ring::binomial;
use crate::scalar::Scalar;

/// A square matrix stored as sorted sparse rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    n: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SparseMatrix {
            n,
            rows: vec![Vec::new(); n],
        }
    }

    pub fn from_dense(m: &Matrix<T>) -> Self {
        assert!(m.is_square());
        let rows = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { n: m.rows(), rows }
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.n, self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row {
                m[(i, *j)] = x.clone();
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<(usize, T)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zeros(self.n);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, x)| (*j, x.mul_ref(c))).collect())
            .collect();
        SparseMatrix { n: self.n, rows }
    }

    /// `self + c·other`
    pub fn add_scaled(&self, other: &Self, c: &T) -> Self {
        let neg = -c.clone();
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| crate::linalg::sparse_axpy(a, b, &neg))
            .collect();
        SparseMatrix { n: self.n, rows }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-T::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut acc: Vec<T> = vec![T::zero(); n];
        let mut touched = vec![false; n];
        let mut cols = Vec::new();
        let mut rows = Vec::with_capacity(n);
        for row in &self.rows {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    acc[*j].add_mul(a, b);
                    if !touched[*j] {
                        touched[*j] = true;
                        cols.push(*j);
                    }
                }
            }
            cols.sort_unstable();
            let mut out = Vec::with_capacity(cols.len());
            for &j in &cols {
                let x = std::mem::replace(&mut acc[j], T::zero());
                touched[j] = false;
                if !x.is_zero() {
                    out.push((j, x));
                }
            }
            cols.clear();
            rows.push(out);
        }
        SparseMatrix { n, rows }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        self.rows
            .iter()
            .map(|row| {
                let mut s = T::zero();
                for (j, x) in row {
                    s.add_mul(x, &v[*j]);
                }
                s
            })
            .collect()
    }

    /// `tr(self · other)`
    pub fn trace_product(&self, other: &Self) -> T {
        let mut s = T::zero();
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                let b = other.get(*k, i);
                if !b.is_zero() {
                    s.add_mul(a, &b);
                }
            }
        }
        s
    }

    /// Row-major flattening `(i·n + j, x)`.
    pub fn flatten(&self) -> Vec<(usize, T)> {
        let n = self.n;
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, x)| (i * n + j, x.clone())))
            .collect()
    }

    pub fn from_flat(n: usize, v: &[(usize, T)]) -> Self {
        let mut rows = vec![Vec::new(); n];
        for (e, x) in v {
            rows[e / n].push((e % n, x.clone()));
        }
        for r in &mut rows {
            r.sort_by_key(|(j, _)| *j);
        }
        SparseMatrix { n, rows }
    }
}

/// A Lie subalgebra of `gl(N)` with a canonical (reduced echelon) basis.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra<T> {
    n: usize,
    span: Echelon<T>,
    basis: Vec<SparseMatrix<T>>,
}

impl<T: Scalar> MatrixLieAlgebra<T> {
    /// The span of `elements`; closure under the bracket is not assumed.
    pub fn span_of(n: usize, elements: &[SparseMatrix<T>]) -> Self {
        let mut span = Echelon::new(n * n);
        for e in elements {
            span.insert_sparse(&e.flatten());
        }
        Self::from_echelon(n, span)
    }

    fn from_echelon(n: usize, span: Echelon<T>) -> Self {
        let basis = span
            .rows()
            .iter()
            .map(|r| SparseMatrix::from_flat(n, r))
            .collect();
        MatrixLieAlgebra { n, span, basis }
    }

    /// Size `N` of the matrices.
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseMatrix<T>] {
        &self.basis
    }

    pub fn contains(&self, x: &SparseMatrix<T>) -> bool {
        let mut v = vec![T::zero(); self.n * self.n];
        for (e, c) in x.flatten() {
            v[e] = c;
        }
        self.span.contains(&v)
    }

    pub fn contains_dense(&self, x: &Matrix<T>) -> bool {
        x.rows() == self.n && self.contains(&SparseMatrix::from_dense(x))
    }

    /// Coordinates of `x` against [`MatrixLieAlgebra::basis`], if `x` lies in the span.
    pub fn coordinates(&self, x: &SparseMatrix<T>) -> Option<Vec<T>> {
        if !self.contains(x) {
            return None;
        }
        let mut c = vec![T::zero(); self.dim()];
        for (r, v) in self.span.coordinates_sparse_unchecked(&x.flatten()) {
            c[r] = v;
        }
        Some(c)
    }

    /// Whether every bracket of basis elements lies in the span.
    pub fn is_closed(&self) -> bool {
        (0..self.dim()).all(|i| {
            (i + 1..self.dim()).all(|j| self.contains(&self.basis[i].commutator(&self.basis[j])))
        })
    }

    /// Matrix of `ad x` on the basis; `x` must lie in the algebra.
    fn ad(&self, x: &SparseMatrix<T>) -> SparseMatrix<T> {
        let d = self.dim();
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); d];
        for (l, b) in self.basis.iter().enumerate() {
            for (k, v) in self
                .span
                .coordinates_sparse_unchecked(&x.commutator(b).flatten())
            {
                rows[k].push((l, v));
            }
        }
        SparseMatrix { n: d, rows }
    }

    /// `B(x, y) = tr(ad x · ad y)` on the basis.
    pub fn killing_form(&self) -> Matrix<T> {
        let ads: Vec<SparseMatrix<T>> = self.basis.iter().map(|b| self.ad(b)).collect();
        let d = self.dim();
        let mut k = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = ads[i].trace_product(&ads[j]);
                k[(i, j)] = v.clone();
                k[(j, i)] = v;
            }
        }
        k
    }

    /// Dimension of `[g, g]`.
    pub fn derived_dim(&self) -> usize {
        let d = self.dim();
        let mut e: Echelon<T> = Echelon::new(self.n * self.n);
        for i in 0..d {
            for j in i + 1..d {
                e.insert_sparse(&self.basis[i].commutator(&self.basis[j]).flatten());
                if e.rank() == d {
                    return d;
                }
            }
        }
        e.rank()
    }
}

/// The smallest bracket-closed subspace containing `generators`.
///
/// Iterated brackets `[g, x]` with generators `g` span the generated algebra,
/// so only brackets with generators are formed.
pub fn lie_closure<T: Scalar>(generators: &[Matrix<T>]) -> Result<MatrixLieAlgebra<T>> {
    let n = generators.first().map_or(0, |g| g.rows());
    if let Some(g) = generators.iter().find(|g| !g.is_square() || g.rows() != n) {
        return Err(Error::Dimension(format!(
            "generator of size {}x{} among {n}x{n}",
            g.rows(),
            g.cols()
        )));
    }
    let gens: Vec<SparseMatrix<T>> = generators.iter().map(SparseMatrix::from_dense).collect();
    lie_closure_sparse(n, &gens)
}

pub fn lie_closure_sparse<T: Scalar>(
    n: usize,
    gens: &[SparseMatrix<T>],
) -> Result<MatrixLieAlgebra<T>> {
    let mut span = Echelon::new(n * n);
    let mut queue = Vec::new();
    for g in gens {
        if span.insert_sparse(&g.flatten()) {
            queue.push(g.clone());
        }
    }
    let mut next = 0;
    while next < queue.len() {
        let x = queue[next].clone();
        next += 1;
        for g in gens {
            let y = g.commutator(&x);
            if !y.is_zero() && span.insert_sparse(&y.flatten()) {
                queue.push(y);
            }
        }
    }
    Ok(MatrixLieAlgebra::from_echelon(n, span))
}

/// Eigenspaces of `ad H` on a Lie algebra, keyed by eigenvalue.
#[derive(Clone, Debug)]
pub struct AdGrading<T> {
    pub pieces: BTreeMap<i64, Vec<SparseMatrix<T>>>,
}

impl<T> AdGrading<T> {
    pub fn dim(&self, eigenvalue: i64) -> usize {
        self.pieces.get(&eigenvalue).map_or(0, Vec::len)
    }

    /// `(dim g₂, dim g₀, dim g₋₂)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dim(2), self.dim(0), self.dim(-2))
    }
}

const GRADING: [i64; 3] = [-2, 0, 2];

/// Splits `g` into `ad H` eigenspaces with eigenvalues `-2, 0, 2`; any other
/// eigenvalue is an error.
pub fn ad_grading<T: Scalar>(g: &MatrixLieAlgebra<T>, h: &Matrix<T>) -> Result<AdGrading<T>> {
    let hs = SparseMatrix::from_dense(h);
    if !g.contains(&hs) {
        return Err(Error::Structural("H does not lie in the algebra".into()));
    }
    match diagonal_integers(h) {
        Some(w) => grading_by_components(g, &w),
        None => grading_by_eigenspaces(g, &hs),
    }
}

fn diagonal_integers<T: Scalar>(h: &Matrix<T>) -> Option<Vec<i64>> {
    let n = h.rows();
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && !h[(i, j)].is_zero() {
                return None;
            }
        }
        w.push((-256..=256).find(|&k| T::from_int(k) == h[(i, i)])?);
    }
    Some(w)
}

/// For diagonal `H = diag(w)`, `ad H` scales the entry `(i, j)` by `w_i - w_j`.
fn grading_by_components<T: Scalar>(g: &MatrixLieAlgebra<T>, w: &[i64]) -> Result<AdGrading<T>> {
    let n = g.ambient();
    let mut spans: BTreeMap<i64, Echelon<T>> = BTreeMap::new();
    for b in g.basis() {
        let mut parts: BTreeMap<i64, Vec<(usize, T)>> = BTreeMap::new();
        for (e, x) in b.flatten() {
            parts.entry(w[e / n] - w[e % n]).or_default().push((e, x));
        }
        for (d, part) in parts {
            if !GRADING.contains(&d) {
                return Err(Error::Structural(format!(
                    "decomposition violated: ad(H)-eigenvalue {d}"
                )));
            }
            let m = SparseMatrix::from_flat(n, &part);
            if !g.contains(&m) {
                return Err(Error::Structural(
                    "algebra is not stable under ad(H)".into(),
                ));
            }
            spans
                .entry(d)
                .or_insert_with(|| Echelon::new(n * n))
                .insert_sparse(&part);
        }
    }
    let pieces = spans
        .into_iter()
        .map(|(d, e)| {
            (
                d,
                e.rows()
                    .iter()
                    .map(|r| SparseMatrix::from_flat(n, r))
                    .collect(),
            )
        })
        .collect();
    Ok(AdGrading { pieces })
}

fn grading_by_eigenspaces<T: Scalar>(
    g: &MatrixLieAlgebra<T>,
    h: &SparseMatrix<T>,
) -> Result<AdGrading<T>> {
    let ad = g.ad(h).to_dense();
    let spaces = crate::linalg::integer_eigenspaces(&ad, &GRADING).map_err(|_| {
        Error::Structural("decomposition violated: ad(H) has eigenvalues outside {-2, 0, 2}".into())
    })?;
    let mut pieces = BTreeMap::new();
    for (d, space) in spaces {
        let elems = space
            .basis()
            .iter()
            .map(|c| {
                c.iter()
                    .zip(g.basis())
                    .filter(|(x, _)| !x.is_zero())
                    .fold(SparseMatrix::zeros(g.ambient()), |acc, (x, b)| {
                        acc.add_scaled(b, x)
                    })
            })
            .collect::<Vec<_>>();
        if !elems.is_empty() {
            pieces.insert(d, elems);
        }
    }
    Ok(AdGrading { pieces })
}

/// Killing-form signature: negative directions are compact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KillingSignature {
    pub compact: usize,
    pub noncompact: usize,
}

/// Comparison of a closure with `so(b₂ - 2, 4)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoReport {
    pub dim: usize,
    pub expected_dim: usize,
    pub killing_signature: KillingSignature,
    pub expected_signature: KillingSignature,
    pub semisimple_part_dim: usize,
    pub verdict: bool,
}

/// The Killing signature of `so(p, q)`.
pub fn so_signature(p: usize, q: usize) -> KillingSignature {
    KillingSignature {
        compact: binomial(p, 2) + binomial(q, 2),
        noncompact: p * q,
    }
}

/// Checks `dim g = (b₂+2)(b₂+1)/2` and that the Killing form has the
/// signature of `so(b₂ - 2, 4)`.
pub fn so_identify<T: Scalar>(g: &MatrixLieAlgebra<T>, b2: usize) -> Result<SoReport> {
    let killing = g.killing_form();
    let sig = symmetric_signature(&killing)?;
    if !sig.is_nondegenerate() {
        return Err(Error::NotSemisimple);
    }
    let expected_dim = (b2 + 2) * (b2 + 1) / 2;
    let killing_signature = KillingSignature {
        compact: sig.neg,
        noncompact: sig.pos,
    };
    let expected_signature = so_signature(b2.saturating_sub(2), 4);
    Ok(SoReport {
        dim: g.dim(),
        expected_dim,
        killing_signature,
        expected_signature,
        semisimple_part_dim: g.derived_dim(),
        verdict: g.dim() == expected_dim && killing_signature == expected_signature,
    })
}
