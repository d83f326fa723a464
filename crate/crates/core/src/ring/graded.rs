use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, Matrix};
use crate::scalar::Scalar;

/// Sparse vector: `(basis index, coefficient)` pairs with nonzero coefficients.
pub type Sparse<T> = Vec<(usize, T)>;

/// A finite-dimensional graded-commutative algebra given by structure constants.
///
/// Basis elements are ordered by degree; degree 0 is spanned by the unit (index 0)
/// and the top degree is one-dimensional. Products landing above the top degree
/// are zero.
#[derive(Clone, PartialEq)]
pub struct GradedAlgebra<T> {
    top_degree: usize,
    offsets: Vec<usize>,
    labels: Vec<String>,
    degrees: Vec<usize>,
    table: Vec<Sparse<T>>,
    integration: Vec<T>,
}

impl<T: Scalar> fmt::Debug for GradedAlgebra<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("top_degree", &self.top_degree)
            .field("dims", &self.dims())
            .finish()
    }
}

/// One structure constant `b_i * b_j = ... + coeff * b_k + ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstant<T> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: T,
}

/// A violated ring axiom, as reported by [`GradedAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Violation {
    UnitNotIdentity { j: usize },
    Commutativity { i: usize, j: usize },
    Associativity { i: usize, j: usize, k: usize },
    DegreeZeroDim(usize),
    TopDegreeDim(usize),
    IntegrationZero,
    DualityDegenerate { degree: usize },
    Bigrading { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnitNotIdentity { j } => {
                write!(f, "unit does not act as identity on basis element {j}")
            }
            Violation::Commutativity { i, j } => {
                write!(f, "graded commutativity fails on pair ({i}, {j})")
            }
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity fails on triple ({i}, {j}, {k})")
            }
            Violation::DegreeZeroDim(d) => write!(f, "degree 0 has dimension {d}"),
            Violation::TopDegreeDim(d) => write!(f, "top degree has dimension {d}"),
            Violation::IntegrationZero => write!(f, "integration functional is zero"),
            Violation::DualityDegenerate { degree } => {
                write!(f, "duality degenerate in degree {degree}")
            }
            Violation::Bigrading { i, j } => {
                write!(f, "product ({i}, {j}) does not respect the bigrading")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            return Ok(());
        }
        let msgs: Vec<String> = self
            .violations
            .iter()
            .take(5)
            .map(|v| v.to_string())
            .collect();
        Err(Error::Validation(msgs.join("; ")))
    }
}

impl<T: Scalar> GradedAlgebra<T> {
    /// Assembles an algebra from dimensions, labels and structure constants.
    ///
    /// Only structural consistency is checked here (index ranges, degrees of
    /// products); the ring axioms are checked by [`GradedAlgebra::validate`].
    pub fn new(
        dims: &[usize],
        labels: Vec<String>,
        constants: impl IntoIterator<Item = StructureConstant<T>>,
        integration: Vec<T>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Inconsistent("empty dimension list".into()));
        }
        let top_degree = dims.len() - 1;
        let mut offsets = vec![0];
        for d in dims {
            offsets.push(offsets.last().unwrap() + d);
        }
        let n = *offsets.last().unwrap();
        if labels.len() != n {
            return Err(Error::Inconsistent(format!(
                "{} labels for {n} basis elements",
                labels.len()
            )));
        }
        if integration.len() != dims[top_degree] {
            return Err(Error::Inconsistent(format!(
                "integration has {} coefficients, top degree has dimension {}",
                integration.len(),
                dims[top_degree]
            )));
        }
        let degrees: Vec<usize> = (0..=top_degree)
            .flat_map(|d| std::iter::repeat(d).take(dims[d]))
            .collect();
        let mut table: Vec<Sparse<T>> = vec![Vec::new(); n * n];
        for c in constants {
            if c.i >= n || c.j >= n || c.k >= n {
                return Err(Error::Inconsistent(format!(
                    "product index ({}, {}, {}) out of range",
                    c.i, c.j, c.k
                )));
            }
            if degrees[c.i] + degrees[c.j] != degrees[c.k] {
                return Err(Error::Inconsistent(format!(
                    "product ({}, {}) -> {} does not respect the grading",
                    c.i, c.j, c.k
                )));
            }
            if c.coeff.is_zero() {
                continue;
            }
            let entry = &mut table[c.i * n + c.j];
            match entry.iter_mut().find(|(k, _)| *k == c.k) {
                Some((_, x)) => *x = x.add_ref(&c.coeff),
                None => entry.push((c.k, c.coeff)),
            }
        }
        for e in &mut table {
            e.retain(|(_, x)| !x.is_zero());
            e.sort_by_key(|(k, _)| *k);
        }
        Ok(GradedAlgebra {
            top_degree,
            offsets,
            labels,
            degrees,
            table,
            integration,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    /// Middle degree `top / 2`.
    pub fn middle_degree(&self) -> usize {
        self.top_degree / 2
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top_degree).map(|d| self.dim_of(d)).collect()
    }

    /// Dimensions of the even-degree pieces only.
    pub fn even_dims(&self) -> Vec<usize> {
        (0..=self.top_degree)
            .step_by(2)
            .map(|d| self.dim_of(d))
            .collect()
    }

    pub fn dim_of(&self, degree: usize) -> usize {
        if degree > self.top_degree {
            0
        } else {
            self.offsets[degree + 1] - self.offsets[degree]
        }
    }

    pub fn degree_range(&self, degree: usize) -> Range<usize> {
        if degree > self.top_degree {
            let n = self.dim();
            n..n
        } else {
            self.offsets[degree]..self.offsets[degree + 1]
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree_of_basis(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn basis_degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn integration(&self) -> &[T] {
        &self.integration
    }

    pub fn with_integration(mut self, integration: Vec<T>) -> Result<Self> {
        if integration.len() != self.dim_of(self.top_degree) {
            return Err(Error::Inconsistent("integration length".into()));
        }
        self.integration = integration;
        Ok(self)
    }

    /// Product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> &Sparse<T> {
        &self.table[i * self.dim() + j]
    }

    pub fn structure_constants(&self) -> impl Iterator<Item = StructureConstant<T>> + '_ {
        let n = self.dim();
        self.table.iter().enumerate().flat_map(move |(ij, entry)| {
            entry.iter().map(move |(k, c)| StructureConstant {
                i: ij / n,
                j: ij % n,
                k: *k,
                coeff: c.clone(),
            })
        })
    }

    pub fn unit(&self) -> Vec<T> {
        self.basis_vector(0)
    }

    pub fn zero(&self) -> Vec<T> {
        vec![T::zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<T> {
        let mut v = self.zero();
        v[i] = T::one();
        v
    }

    /// The element with the given coordinates in the degree-`degree` piece.
    pub fn embed(&self, degree: usize, coords: &[T]) -> Vec<T> {
        let r = self.degree_range(degree);
        assert_eq!(
            coords.len(),
            r.len(),
            "coordinate count differs from graded dimension"
        );
        let mut v = self.zero();
        v[r].clone_from_slice(coords);
        v
    }

    /// Coordinates of the degree-`degree` component.
    pub fn component(&self, x: &[T], degree: usize) -> Vec<T> {
        x[self.degree_range(degree)].to_vec()
    }

    /// The degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, x: &[T]) -> Option<usize> {
        let mut deg = None;
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return None,
                _ => {}
            }
        }
        deg
    }

    /// Cup product, extended bilinearly.
    pub fn multiply(&self, a: &[T], b: &[T]) -> Vec<T> {
        let n = self.dim();
        assert_eq!(a.len(), n);
        assert_eq!(b.len(), n);
        let mut out = self.zero();
        let bs: Vec<usize> = (0..n).filter(|&j| !b[j].is_zero()).collect();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &j in &bs {
                let entry = &self.table[i * n + j];
                if entry.is_empty() {
                    continue;
                }
                let xy = x.mul_ref(&b[j]);
                for (k, c) in entry {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        out
    }

    pub fn power(&self, a: &[T], k: usize) -> Vec<T> {
        let mut out = self.unit();
        for _ in 0..k {
            out = self.multiply(&out, a);
        }
        out
    }

    pub fn integrate(&self, x: &[T]) -> T {
        let r = self.degree_range(self.top_degree);
        let mut acc = T::zero();
        for (c, w) in x[r].iter().zip(&self.integration) {
            acc.add_mul(c, w);
        }
        acc
    }

    /// Matrix of left multiplication by `x` on the whole algebra.
    pub fn left_multiplication(&self, x: &[T]) -> Matrix<T> {
        let n = self.dim();
        let mut m: Matrix<T> = Matrix::zeros(n, n);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, s) in &self.table[i * n + j] {
                    m[(*k, j)].add_mul(c, s);
                }
            }
        }
        m
    }

    /// Matrix of the pairing `(a, b) -> ∫ a b` between degrees `k` and `top - k`.
    pub fn pairing_matrix(&self, degree: usize) -> Matrix<T> {
        let ra = self.degree_range(degree);
        let rb = self.degree_range(self.top_degree - degree);
        let top = self.degree_range(self.top_degree);
        Matrix::from_fn(ra.len(), rb.len(), |i, j| {
            let mut acc = T::zero();
            for (k, c) in self.basis_product(ra.start + i, rb.start + j) {
                acc.add_mul(c, &self.integration[k - top.start]);
            }
            acc
        })
    }

    /// Checks unit, graded commutativity, associativity, the dimension of the
    /// extreme degrees and Poincaré duality. Every violation is listed.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut violations = Vec::new();
        if self.dim_of(0) != 1 {
            violations.push(Violation::DegreeZeroDim(self.dim_of(0)));
        }
        if self.dim_of(self.top_degree) != 1 {
            violations.push(Violation::TopDegreeDim(self.dim_of(self.top_degree)));
        }
        if self.dim_of(0) >= 1 {
            for j in 0..n {
                let want: Sparse<T> = vec![(j, T::one())];
                if self.table[j] != want || self.table[j * n] != want {
                    violations.push(Violation::UnitNotIdentity { j });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let sign_odd = self.degrees[i] % 2 == 1 && self.degrees[j] % 2 == 1;
                let ji: Sparse<T> = self.table[j * n + i]
                    .iter()
                    .map(|(k, c)| (*k, if sign_odd { -c.clone() } else { c.clone() }))
                    .collect();
                if self.table[i * n + j] != ji {
                    violations.push(Violation::Commutativity { i, j });
                }
            }
        }
        for i in 1..n {
            for j in 1..n {
                let ij = &self.table[i * n + j];
                for k in 1..n {
                    // both sides vanish above the top degree
                    if self.degrees[i] + self.degrees[j] + self.degrees[k] > self.top_degree {
                        continue;
                    }
                    let lhs = self.sparse_times_basis(ij, k);
                    let rhs = self.basis_times_sparse(i, &self.table[j * n + k]);
                    if lhs != rhs {
                        violations.push(Violation::Associativity { i, j, k });
                    }
                }
            }
        }
        if self.integration.iter().all(T::is_zero) {
            violations.push(Violation::IntegrationZero);
        } else {
            for d in 0..=self.top_degree {
                let p = self.pairing_matrix(d);
                if p.rows() != p.cols() || p.rank() != p.rows() {
                    violations.push(Violation::DualityDegenerate { degree: d });
                }
            }
        }
        ValidationReport { violations }
    }

    fn sparse_times_basis(&self, x: &Sparse<T>, k: usize) -> Vec<T> {
        let n = self.dim();
        let mut out = self.zero();
        for (m, c) in x {
            for (r, s) in &self.table[m * n + k] {
                out[*r].add_mul(c, s);
            }
        }
        out
    }

    fn basis_times_sparse(&self, i: usize, x: &Sparse<T>) -> Vec<T> {
        let n = self.dim();
        let mut out = self.zero();
        for (m, c) in x {
            for (r, s) in &self.table[i * n + m] {
                out[*r].add_mul(c, s);
            }
        }
        out
    }

    /// Change of scalars along a field embedding.
    pub fn map_scalars<S: Scalar>(&self, f: impl Fn(&T) -> S) -> GradedAlgebra<S> {
        GradedAlgebra {
            top_degree: self.top_degree,
            offsets: self.offsets.clone(),
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            table: self
                .table
                .iter()
                .map(|e| e.iter().map(|(k, c)| (*k, f(c))).collect())
                .collect(),
            integration: self.integration.iter().map(&f).collect(),
        }
    }

    /// The subalgebra generated by the degree-2 piece, degree by degree.
    pub fn degree_two_generated(&self) -> Vec<crate::linalg::Subspace<T>> {
        use crate::linalg::Subspace;
        let mut pieces: Vec<Subspace<T>> = Vec::new();
        let gens: Vec<Vec<T>> = self.degree_range(2).map(|i| self.basis_vector(i)).collect();
        let mut current = vec![self.unit()];
        for d in (0..=self.top_degree).step_by(2) {
            let r = self.degree_range(d);
            let space = Subspace::span(
                r.len(),
                current.iter().map(|v| v[r.clone()].to_vec()).collect(),
            );
            current = space
                .basis()
                .iter()
                .flat_map(|b| {
                    let x = self.embed(d, b);
                    gens.iter().map(move |g| (x.clone(), g)).collect::<Vec<_>>()
                })
                .map(|(x, g)| self.multiply(g, &x))
                .filter(|v| !is_zero_vec(v))
                .collect();
            pieces.push(space);
        }
        pieces
    }
}
