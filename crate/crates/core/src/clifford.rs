//! Clifford algebras of rational quadratic spaces.
//!
//! The algebra is presented on an orthogonal basis `e_1..e_m` found by
//! congruence, so blades `e_S` are indexed by bitmasks and the product of two
//! blades is a signed, weighted blade. Vectors are always given in the
//! caller's original coordinates and converted on the way in.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{diagonalize_symmetric, symmetric_signature, Matrix, Signature};
use crate::report::CheckReport;
use crate::ring::rational_sqrt;
use crate::scalar::Scalar;

/// Largest quadratic space accepted (the algebra has `2^m` basis blades).
pub const MAX_DIM: usize = 10;

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct CliffordAlgebra<T: Scalar> {
    id: u64,
    m: usize,
    form: Matrix<T>,
    diagonal: Vec<T>,
    /// Columns are the orthogonal basis in original coordinates.
    basis: Matrix<T>,
    to_orthogonal: Matrix<T>,
    /// `e_S * e_S` as a scalar, per mask.
    squares: Vec<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliffordElement<T: Scalar> {
    algebra: u64,
    coeffs: Vec<T>,
}

impl<T: Scalar> CliffordElement<T> {
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> &T {
        &self.coeffs[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            algebra: self.algebra,
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_algebra(self, other)?;
        Ok(Self {
            algebra: self.algebra,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_algebra(self, other)?;
        Ok(Self {
            algebra: self.algebra,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        })
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, &T)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

fn same_algebra<T: Scalar>(x: &CliffordElement<T>, y: &CliffordElement<T>) -> Result<()> {
    if x.algebra != y.algebra {
        return Err(Error::Dimension(
            "elements of different Clifford algebras".into(),
        ));
    }
    Ok(())
}

/// Sign of `e_a e_b` before contracting repeated generators.
fn reorder_sign(a: usize, b: usize) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        swaps += (a >> (i + 1)).count_ones();
        rest &= rest - 1;
    }
    swaps % 2 == 1
}

/// `conj(e_S) = sign * e_S`; true when the sign is negative.
fn conj_negative(mask: usize) -> bool {
    let k = mask.count_ones() as usize;
    (k * k.saturating_sub(1) / 2 + k) % 2 == 1
}

pub fn clifford<T: Scalar>(q: &Matrix<T>) -> Result<CliffordAlgebra<T>> {
    CliffordAlgebra::new(q)
}

impl<T: Scalar> CliffordAlgebra<T> {
    pub fn new(q: &Matrix<T>) -> Result<Self> {
        if !q.is_square() {
            return Err(Error::Dimension("quadratic form must be square".into()));
        }
        let m = q.rows();
        if m > MAX_DIM {
            return Err(Error::TooLarge(format!(
                "Clifford algebra of dimension 2^{m}, at most 2^{MAX_DIM} supported"
            )));
        }
        let d = diagonalize_symmetric(q)?;
        if d.diagonal.iter().any(|x| x.is_zero()) {
            return Err(Error::DegenerateForm("quadratic form is degenerate".into()));
        }
        let to_orthogonal = d.basis.inverse().expect("congruence basis is invertible");
        let squares = (0..1usize << m)
            .map(|s| {
                let mut c = if reorder_sign(s, s) {
                    -T::one()
                } else {
                    T::one()
                };
                for (i, di) in d.diagonal.iter().enumerate() {
                    if s >> i & 1 == 1 {
                        c = c.mul_ref(di);
                    }
                }
                c
            })
            .collect();
        Ok(Self {
            id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
            m,
            form: q.clone(),
            diagonal: d.diagonal,
            basis: d.basis,
            to_orthogonal,
            squares,
        })
    }

    /// Dimension of the underlying quadratic space.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn form(&self) -> &Matrix<T> {
        &self.form
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diagonal
    }

    pub fn orthogonal_basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn zero(&self) -> CliffordElement<T> {
        CliffordElement {
            algebra: self.id,
            coeffs: vec![T::zero(); self.dim()],
        }
    }

    pub fn scalar(&self, c: T) -> CliffordElement<T> {
        let mut x = self.zero();
        x.coeffs[0] = c;
        x
    }

    pub fn one(&self) -> CliffordElement<T> {
        self.scalar(T::one())
    }

    /// The blade `e_S` of the orthogonal basis.
    pub fn blade(&self, mask: usize) -> CliffordElement<T> {
        let mut x = self.zero();
        x.coeffs[mask] = T::one();
        x
    }

    pub fn from_coeffs(&self, coeffs: Vec<T>) -> Result<CliffordElement<T>> {
        if coeffs.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "expected {} coefficients, got {}",
                self.dim(),
                coeffs.len()
            )));
        }
        Ok(CliffordElement {
            algebra: self.id,
            coeffs,
        })
    }

    /// A vector given in the original coordinates of the quadratic space.
    pub fn vector(&self, v: &[T]) -> Result<CliffordElement<T>> {
        if v.len() != self.m {
            return Err(Error::Dimension(format!(
                "vector of length {}, space has dimension {}",
                v.len(),
                self.m
            )));
        }
        let c = self.to_orthogonal.mul_vec(v);
        let mut x = self.zero();
        for (i, ci) in c.into_iter().enumerate() {
            x.coeffs[1 << i] = ci;
        }
        Ok(x)
    }

    /// `(coefficient, mask)` with `e_a e_b = coefficient * e_mask`.
    pub fn blade_product(&self, a: usize, b: usize) -> (T, usize) {
        let mut c = if reorder_sign(a, b) {
            -T::one()
        } else {
            T::one()
        };
        let common = a & b;
        for (i, di) in self.diagonal.iter().enumerate() {
            if common >> i & 1 == 1 {
                c = c.mul_ref(di);
            }
        }
        (c, a ^ b)
    }

    fn owns(&self, x: &CliffordElement<T>) -> Result<()> {
        if x.algebra != self.id {
            return Err(Error::Dimension(
                "element belongs to a different Clifford algebra".into(),
            ));
        }
        Ok(())
    }

    pub fn multiply(
        &self,
        x: &CliffordElement<T>,
        y: &CliffordElement<T>,
    ) -> Result<CliffordElement<T>> {
        self.owns(x)?;
        self.owns(y)?;
        let mut out = self.zero();
        let ys: Vec<(usize, &T)> = y.nonzero().collect();
        for (a, xa) in x.nonzero() {
            for &(b, yb) in &ys {
                let (c, s) = self.blade_product(a, b);
                out.coeffs[s].add_mul(&c, &xa.mul_ref(yb));
            }
        }
        Ok(out)
    }

    /// Parity involution: `e_S -> (-1)^|S| e_S`.
    pub fn parity(&self, x: &CliffordElement<T>) -> CliffordElement<T> {
        self.sign_map(x, |s| s.count_ones() % 2 == 1)
    }

    /// Reversal anti-automorphism.
    pub fn reversal(&self, x: &CliffordElement<T>) -> CliffordElement<T> {
        self.sign_map(x, |s| {
            let k = s.count_ones() as usize;
            (k * k.saturating_sub(1) / 2) % 2 == 1
        })
    }

    /// `conj = parity ∘ reversal`.
    pub fn conjugate(&self, x: &CliffordElement<T>) -> CliffordElement<T> {
        self.sign_map(x, conj_negative)
    }

    fn sign_map(
        &self,
        x: &CliffordElement<T>,
        negative: impl Fn(usize) -> bool,
    ) -> CliffordElement<T> {
        CliffordElement {
            algebra: x.algebra,
            coeffs: x
                .coeffs
                .iter()
                .enumerate()
                .map(|(s, c)| if negative(s) { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    /// Normalized trace of left multiplication, `Tr(1) = 1`.
    ///
    /// Left multiplication by `e_S`, `S` nonempty, moves every blade, so only
    /// the scalar part survives.
    pub fn trace(&self, x: &CliffordElement<T>) -> T {
        x.coeffs[0].clone()
    }

    /// Matrix of `y -> x y` on the blade basis.
    pub fn left_multiplication(&self, x: &CliffordElement<T>) -> Result<Matrix<T>> {
        self.owns(x)?;
        let n = self.dim();
        let mut out = Matrix::<T>::zeros(n, n);
        for (a, xa) in x.nonzero() {
            for b in 0..n {
                let (c, s) = self.blade_product(a, b);
                out[(s, b)].add_mul(&c, xa);
            }
        }
        Ok(out)
    }

    /// `μ = (γ/|γ|)(γ'/|γ'|)` for an orthogonal pair of positive vectors with square norms.
    pub fn complex_structure(&self, gamma: &[T], gamma_prime: &[T]) -> Result<CliffordElement<T>> {
        let q = &self.form;
        if gamma.len() != self.m || gamma_prime.len() != self.m {
            return Err(Error::Dimension(
                "vectors do not match the quadratic space".into(),
            ));
        }
        if !q.bilinear(gamma, gamma_prime).is_zero() {
            return Err(Error::Inadmissible("γ and γ' are not orthogonal".into()));
        }
        let root = |v: &[T]| -> Result<T> {
            let n = q.bilinear(v, v);
            if n.real_sign() != Some(Ordering::Greater) {
                return Err(Error::Inadmissible("norms must be positive".into()));
            }
            rational_sqrt(&n.real_part())
                .map(T::from_rational)
                .ok_or_else(|| {
                    Error::Inadmissible(format!(
                        "norm {} is not a rational square",
                        n.to_exact_string()
                    ))
                })
        };
        let (r1, r2) = (root(gamma)?, root(gamma_prime)?);
        let g1 = self.vector(gamma)?;
        let g2 = self.vector(gamma_prime)?;
        let scale = (r1.mul_ref(&r2)).try_inv().expect("positive norms");
        let mu = self.multiply(&g1, &g2)?.scale(&scale);
        let sq = self.multiply(&mu, &mu)?;
        if sq != self.scalar(-T::one()) {
            return Err(Error::Structural("μ² ≠ -1".into()));
        }
        Ok(mu)
    }

    /// `Tr(x conj(e_T))` for every blade `e_T`.
    fn trace_pairing_row(&self, x: &CliffordElement<T>) -> Vec<T> {
        x.coeffs
            .iter()
            .enumerate()
            .map(|(t, c)| {
                let v = c.mul_ref(&self.squares[t]);
                if conj_negative(t) {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }

    /// `σ_a(x, y) = Tr(x a conj(y))` evaluated directly.
    pub fn sigma(
        &self,
        a: &CliffordElement<T>,
        x: &CliffordElement<T>,
        y: &CliffordElement<T>,
    ) -> Result<T> {
        let xa = self.multiply(x, a)?;
        Ok(self.trace(&self.multiply(&xa, &self.conjugate(y))?))
    }

    /// `σ_a` with its sign verdict against the complex structure given by `a` itself.
    pub fn polarization_form(&self, a: &CliffordElement<T>) -> Result<Polarization<T>> {
        self.polarization_form_with(a, a)
    }

    /// `σ_a` with the positivity probe `(x, y) -> σ_a(x, j y)`.
    ///
    /// `j` must square to a negative scalar; `+σ_a` is a polarization when the
    /// probe is positive definite, `-σ_a` when it is negative definite.
    pub fn polarization_form_with(
        &self,
        a: &CliffordElement<T>,
        j: &CliffordElement<T>,
    ) -> Result<Polarization<T>> {
        self.owns(a)?;
        self.owns(j)?;
        let n = self.dim();
        let mut gram = Matrix::<T>::zeros(n, n);
        let mut probe = Matrix::<T>::zeros(n, n);
        for s in 0..n {
            let sa = self.multiply(&self.blade(s), a)?;
            for (t, v) in self.trace_pairing_row(&sa).into_iter().enumerate() {
                gram[(s, t)] = v;
            }
        }
        // σ_a(e_S, a e_T) = Σ_U gram[S][U] (a e_T)_U
        for t in 0..n {
            let at = self.multiply(j, &self.blade(t))?;
            for s in 0..n {
                let mut acc = T::zero();
                for (u, c) in at.nonzero() {
                    acc.add_mul(&gram[(s, u)], c);
                }
                probe[(s, t)] = acc;
            }
        }

        let mut report = CheckReport::new();
        let transpose = gram.transpose();
        let symmetry = if gram == transpose {
            FormSymmetry::Symmetric
        } else if gram == -&transpose {
            FormSymmetry::Antisymmetric
        } else {
            FormSymmetry::Neither
        };
        let j2 = self.multiply(j, j)?;
        let j2_scalar = j2.coeffs[1..].iter().all(|c| c.is_zero());
        report.require(
            j2_scalar && j2.coeffs[0].real_sign() == Some(Ordering::Less),
            || "complex structure does not square to a negative scalar".to_string(),
        );
        report.require(probe.is_symmetric(), || {
            "probe form σ_a(x, j y) is not symmetric".to_string()
        });
        let (probe_signature, verdict) = if probe.is_symmetric() {
            let sig = symmetric_signature(&probe)?;
            let verdict = match (sig.pos, sig.neg, sig.null) {
                (_, 0, 0) => SignVerdict::Positive,
                (0, _, 0) => SignVerdict::Negative,
                _ => SignVerdict::Indefinite,
            };
            (Some(sig), verdict)
        } else {
            (None, SignVerdict::Indefinite)
        };
        Ok(Polarization {
            gram,
            probe,
            symmetry,
            probe_signature,
            verdict,
            report,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormSymmetry {
    Symmetric,
    Antisymmetric,
    Neither,
}

/// Which of `±σ_a` is positive on the probe form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SignVerdict {
    Positive,
    Negative,
    Indefinite,
}

impl SignVerdict {
    pub fn is_definite(self) -> bool {
        self != SignVerdict::Indefinite
    }
}

#[derive(Clone, Debug)]
pub struct Polarization<T: Scalar> {
    /// Gram matrix of `σ_a` on the blade basis.
    pub gram: Matrix<T>,
    /// Gram matrix of `(x, y) -> σ_a(x, j y)`.
    pub probe: Matrix<T>,
    pub symmetry: FormSymmetry,
    pub probe_signature: Option<Signature>,
    pub verdict: SignVerdict,
    pub report: CheckReport,
}

/// Setup for the trace polarization: a positive orthogonal pair and, when the
/// form has a third positive direction, the complement algebra `C(h⊥)`.
#[derive(Clone, Debug)]
pub struct KugaPlane<T: Scalar> {
    pub gamma: Vec<T>,
    pub gamma_prime: Vec<T>,
    pub h: Option<Vec<T>>,
    /// Form on `h⊥` in the basis `complement` (columns, original coordinates).
    pub complement: Matrix<T>,
    pub restricted: Matrix<T>,
    /// `γ, γ'` in the coordinates of `complement`.
    pub gamma_restricted: Vec<T>,
    pub gamma_prime_restricted: Vec<T>,
}

/// Picks the first two positive orthogonal directions with square norms.
pub fn kuga_plane<T: Scalar>(q: &Matrix<T>) -> Result<KugaPlane<T>> {
    let d = diagonalize_symmetric(q)?;
    if d.diagonal.iter().any(|x| x.is_zero()) {
        return Err(Error::DegenerateForm("quadratic form is degenerate".into()));
    }
    let positive: Vec<usize> = (0..q.rows())
        .filter(|&i| d.diagonal[i].real_sign() == Some(Ordering::Greater))
        .collect();
    if positive.len() < 2 {
        return Err(Error::Inadmissible("form has no positive two-plane".into()));
    }
    let squares: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&i| rational_sqrt(&d.diagonal[i].real_part()).is_some())
        .collect();
    if squares.len() < 2 {
        return Err(Error::Inadmissible(
            "no orthogonal positive pair with rational square norms".into(),
        ));
    }
    let (i1, i2) = (squares[0], squares[1]);
    let h = positive.iter().copied().find(|&i| i != i1 && i != i2);
    let keep: Vec<usize> = (0..q.rows()).filter(|&i| Some(i) != h).collect();
    let complement = Matrix::from_columns(
        q.rows(),
        &keep.iter().map(|&i| d.basis.column(i)).collect::<Vec<_>>(),
    );
    let restricted = Matrix::diagonal(
        &keep
            .iter()
            .map(|&i| d.diagonal[i].clone())
            .collect::<Vec<_>>(),
    );
    let unit = |i: usize| -> Vec<T> {
        keep.iter()
            .map(|&j| if j == i { T::one() } else { T::zero() })
            .collect()
    };
    Ok(KugaPlane {
        gamma: d.basis.column(i1),
        gamma_prime: d.basis.column(i2),
        h: h.map(|i| d.basis.column(i)),
        complement,
        restricted,
        gamma_restricted: unit(i1),
        gamma_prime_restricted: unit(i2),
    })
}
