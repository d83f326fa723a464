use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::ring::graded::{GradedAlgebra, ValidationReport, Violation};
use crate::scalar::Scalar;

/// A graded algebra with a `(p, q)` type on every basis element and a
/// distinguished pair `σ` of type (2,0), `σ̄` of type (0,2).
#[derive(Clone, Debug, PartialEq)]
pub struct BigradedAlgebra<T: Scalar> {
    ring: GradedAlgebra<T>,
    bidegrees: Vec<(usize, usize)>,
    sigma: Vec<T>,
    sigma_bar: Vec<T>,
}

impl<T: Scalar> BigradedAlgebra<T> {
    pub fn new(
        ring: GradedAlgebra<T>,
        bidegrees: Vec<(usize, usize)>,
        sigma: Vec<T>,
        sigma_bar: Vec<T>,
    ) -> Result<Self> {
        if bidegrees.len() != ring.dim() {
            return Err(Error::Inconsistent(format!(
                "{} bidegrees for {} basis elements",
                bidegrees.len(),
                ring.dim()
            )));
        }
        for (i, &(p, q)) in bidegrees.iter().enumerate() {
            if p + q != ring.degree_of_basis(i) {
                return Err(Error::Inconsistent(format!(
                    "basis element {i} has type ({p},{q}) but degree {}",
                    ring.degree_of_basis(i)
                )));
            }
        }
        if ring.top_degree() % 4 != 0 {
            return Err(Error::Inconsistent(format!(
                "top degree {} is not divisible by 4",
                ring.top_degree()
            )));
        }
        let alg = BigradedAlgebra {
            ring,
            bidegrees,
            sigma,
            sigma_bar,
        };
        alg.check_type(&alg.sigma, (2, 0), "σ")?;
        alg.check_type(&alg.sigma_bar, (0, 2), "σ̄")?;
        Ok(alg)
    }

    fn check_type(&self, x: &[T], ty: (usize, usize), name: &str) -> Result<()> {
        if x.len() != self.ring.dim() {
            return Err(Error::Dimension(format!(
                "{name} has {} coordinates",
                x.len()
            )));
        }
        if x.iter().all(T::is_zero) {
            return Err(Error::Inconsistent(format!("{name} is zero")));
        }
        match self.bidegree_of(x) {
            Some(t) if t == ty => Ok(()),
            _ => Err(Error::Inconsistent(format!("{name} is not of type {ty:?}"))),
        }
    }

    pub fn ring(&self) -> &GradedAlgebra<T> {
        &self.ring
    }

    pub fn into_ring(self) -> GradedAlgebra<T> {
        self.ring
    }

    /// `n` with top degree `4n`.
    pub fn n(&self) -> usize {
        self.ring.top_degree() / 4
    }

    pub fn bidegrees(&self) -> &[(usize, usize)] {
        &self.bidegrees
    }

    pub fn sigma(&self) -> &[T] {
        &self.sigma
    }

    pub fn sigma_bar(&self) -> &[T] {
        &self.sigma_bar
    }

    /// Replaces `σ`, `σ̄`; the new classes must have the right types.
    pub fn with_sigma(mut self, sigma: Vec<T>, sigma_bar: Vec<T>) -> Result<Self> {
        self.check_type(&sigma, (2, 0), "σ")?;
        self.check_type(&sigma_bar, (0, 2), "σ̄")?;
        self.sigma = sigma;
        self.sigma_bar = sigma_bar;
        Ok(self)
    }

    /// Type of a nonzero element whose support lies in one `(p, q)` piece.
    pub fn bidegree_of(&self, x: &[T]) -> Option<(usize, usize)> {
        let mut ty = None;
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match ty {
                None => ty = Some(self.bidegrees[i]),
                Some(t) if t != self.bidegrees[i] => return None,
                _ => {}
            }
        }
        ty
    }

    /// Basis indices of type `(p, q)`.
    pub fn indices_of(&self, p: usize, q: usize) -> Vec<usize> {
        (0..self.ring.dim())
            .filter(|&i| self.bidegrees[i] == (p, q))
            .collect()
    }

    /// The `(p, q)` piece as a coordinate subspace of the degree-`p+q` piece.
    pub fn piece_in_degree(&self, p: usize, q: usize) -> Subspace<T> {
        let r = self.ring.degree_range(p + q);
        let vectors = self
            .indices_of(p, q)
            .into_iter()
            .map(|i| {
                let mut v = vec![T::zero(); r.len()];
                v[i - r.start] = T::one();
                v
            })
            .collect();
        Subspace::span(r.len(), vectors)
    }

    /// Hodge numbers `dim A^{p,q}`, nonzero entries only.
    pub fn hodge_numbers(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for &t in &self.bidegrees {
            *out.entry(t).or_insert(0) += 1;
        }
        out
    }

    /// Ring axioms plus multiplicativity of the bigrading on all basis pairs.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.ring.validate();
        let n = self.ring.dim();
        for i in 0..n {
            for j in i..n {
                let (p1, q1) = self.bidegrees[i];
                let (p2, q2) = self.bidegrees[j];
                if self
                    .ring
                    .basis_product(i, j)
                    .iter()
                    .any(|(k, _)| self.bidegrees[*k] != (p1 + p2, q1 + q2))
                {
                    report.violations.push(Violation::Bigrading { i, j });
                }
            }
        }
        report
    }

    /// `∫ (σ σ̄)^n`.
    pub fn symplectic_volume(&self) -> T {
        let ss = self.ring.multiply(&self.sigma, &self.sigma_bar);
        self.ring.integrate(&self.ring.power(&ss, self.n()))
    }

    /// Rescales the integration functional so that `∫ (σ σ̄)^n = 1`.
    pub fn normalized(self) -> Result<Self> {
        let vol = self.symplectic_volume();
        let inv = vol.try_inv().ok_or(Error::DegenerateSymplecticPower)?;
        let integration = self
            .ring
            .integration()
            .iter()
            .map(|c| c.mul_ref(&inv))
            .collect();
        Ok(BigradedAlgebra {
            ring: self.ring.with_integration(integration)?,
            ..self
        })
    }

    pub fn map_scalars<S: Scalar>(&self, f: impl Fn(&T) -> S) -> BigradedAlgebra<S> {
        BigradedAlgebra {
            ring: self.ring.map_scalars(&f),
            bidegrees: self.bidegrees.clone(),
            sigma: self.sigma.iter().map(&f).collect(),
            sigma_bar: self.sigma_bar.iter().map(&f).collect(),
        }
    }
}
