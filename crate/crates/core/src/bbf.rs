//! Beauville–Bogomolov–Fujiki forms from ring data and the Fujiki relation.

use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{symmetric_signature, Matrix};
use crate::ring::{BigradedAlgebra, BogomolovModel, GradedAlgebra};
use crate::sample::IntVectors;
use crate::scalar::{Gaussian, Rational, Scalar};

/// A form together with its Fujiki constant: `c · q(α)^n = ∫ α^{2n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FujikiData<T: Scalar> {
    pub form: Matrix<T>,
    pub c: T,
    pub n: usize,
    /// Number of classes on which the identity was checked.
    pub checked: usize,
}

fn half_top<T: Scalar>(r: &GradedAlgebra<T>) -> Result<usize> {
    let top = r.top_degree();
    if top % 4 != 0 || top == 0 {
        return Err(Error::Inconsistent(format!(
            "top degree {top} is not a positive multiple of 4"
        )));
    }
    Ok(top / 4)
}

/// The BBF form of `r` with respect to `σ`, `σ̄`, on the degree-2 basis:
///
/// `q(α) = (n/2) ∫(σσ̄)^{n-1} α² + (1-n) ∫σ^{n-1}σ̄^n α · ∫σ^n σ̄^{n-1} α`
///
/// with `∫` rescaled so that `∫ (σσ̄)^n = 1`.
pub fn bbf_form_with<T: Scalar>(
    r: &GradedAlgebra<T>,
    sigma: &[T],
    sigma_bar: &[T],
) -> Result<Matrix<T>> {
    let n = half_top(r)?;
    let ss = r.multiply(sigma, sigma_bar);
    let vol = r.integrate(&r.power(&ss, n));
    let inv = vol.try_inv().ok_or(Error::DegenerateSymplecticPower)?;
    let integrate = |x: &[T]| r.integrate(x).mul_ref(&inv);

    let a = r.power(&ss, n - 1);
    let u = r.multiply(&r.power(sigma, n - 1), &r.power(sigma_bar, n));
    let w = r.multiply(&r.power(sigma, n), &r.power(sigma_bar, n - 1));
    let basis: Vec<Vec<T>> = r.degree_range(2).map(|i| r.basis_vector(i)).collect();
    let f: Vec<T> = basis
        .iter()
        .map(|e| integrate(&r.multiply(&u, e)))
        .collect();
    let g: Vec<T> = basis
        .iter()
        .map(|e| integrate(&r.multiply(&w, e)))
        .collect();

    let half_n = T::from_int(n as i64) / T::from_int(2);
    let half_rest = T::from_int(1 - n as i64) / T::from_int(2);
    let b = basis.len();
    let mut q = Matrix::zeros(b, b);
    for i in 0..b {
        let ae = r.multiply(&a, &basis[i]);
        for j in i..b {
            let h = integrate(&r.multiply(&ae, &basis[j]));
            let cross = f[i].mul_ref(&g[j]).add_ref(&f[j].mul_ref(&g[i]));
            let v = half_n.mul_ref(&h).add_ref(&half_rest.mul_ref(&cross));
            q[(i, j)] = v.clone();
            q[(j, i)] = v;
        }
    }
    Ok(q)
}

/// [`bbf_form_with`] for the distinguished pair of a bigraded ring.
pub fn bbf_form<T: Scalar>(b: &BigradedAlgebra<T>) -> Result<Matrix<T>> {
    bbf_form_with(b.ring(), b.sigma(), b.sigma_bar())
}

/// The BBF form of a Bogomolov model in the original coordinates, using
/// `σ = e₁ + i e₂`. The result is rational.
pub fn model_bbf_form(model: &BogomolovModel) -> Result<Matrix<Rational>> {
    let g = model
        .ring
        .map_scalars(|x| Gaussian::from_rational(x.clone()));
    let i = Gaussian::imaginary_unit().expect("Gaussian rationals contain i");
    let e1: Vec<Gaussian> = model
        .frame
        .e1
        .iter()
        .map(|x| Gaussian::from_rational(x.clone()))
        .collect();
    let e2: Vec<Gaussian> = model
        .frame
        .e2
        .iter()
        .map(|x| Gaussian::from_rational(x.clone()))
        .collect();
    let s: Vec<Gaussian> = e1.iter().zip(&e2).map(|(a, b)| a + &i * b).collect();
    let sb: Vec<Gaussian> = e1.iter().zip(&e2).map(|(a, b)| a - &i * b).collect();
    let q = bbf_form_with(&g, &g.embed(2, &s), &g.embed(2, &sb))?;
    if q.entries().iter().any(|x| !x.is_real()) {
        return Err(Error::Structural(
            "BBF form of a real model has non-real entries".into(),
        ));
    }
    Ok(q.map(|x| x.real_part()))
}

/// The positive rational `λ` with `a = λ·b`, if there is one.
pub fn positive_ratio(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Option<Rational> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return None;
    }
    let (idx, pivot) = b.entries().iter().enumerate().find(|(_, x)| !x.is_zero())?;
    let lambda = &a.entries()[idx] / pivot;
    let ok = lambda > Rational::zero()
        && a.entries()
            .iter()
            .zip(b.entries())
            .all(|(x, y)| *x == &lambda * y);
    ok.then_some(lambda)
}

/// `q(α) = αᵀ Q α` for degree-2 coordinates.
fn evaluate<T: Scalar>(form: &Matrix<T>, alpha: &[T]) -> T {
    form.bilinear(alpha, alpha)
}

/// Classes used by [`fujiki_check`]: `e_i` and `e_i + e_j` to fit, then 100 more.
const FUJIKI_EXTRA: usize = 100;

/// Fits `c` with `c · q(α)^n = ∫ α^{2n}` on a spanning set of degree-2 classes
/// and verifies it on [`FUJIKI_EXTRA`] further classes.
pub fn fujiki_check<T: Scalar>(r: &GradedAlgebra<T>, form: &Matrix<T>) -> Result<FujikiData<T>> {
    let n = half_top(r)?;
    let b = r.dim_of(2);
    if form.rows() != b || form.cols() != b {
        return Err(Error::Dimension(format!(
            "form is {}x{}, degree 2 has dimension {b}",
            form.rows(),
            form.cols()
        )));
    }
    let fit_count = b + b * (b - 1) / 2;
    let fitting = IntVectors::new(b, 0).take(fit_count);
    let mut c: Option<T> = None;
    let mut checked = 0;
    for v in fitting.chain(IntVectors::dense(b, 0xf011).take(FUJIKI_EXTRA)) {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let alpha: Vec<T> = v.iter().map(|&x| T::from_int(x)).collect();
        let lhs = pow(&evaluate(form, &alpha), n);
        let rhs = r.integrate(&r.power(&r.embed(2, &alpha), 2 * n));
        checked += 1;
        match &c {
            Some(c) => {
                if c.mul_ref(&lhs) != rhs {
                    return Err(Error::FujikiFails(format!(
                        "class {v:?}: c·q^{n} = {} but ∫α^{} = {}",
                        c.mul_ref(&lhs).to_exact_string(),
                        2 * n,
                        rhs.to_exact_string()
                    )));
                }
            }
            None if lhs.is_zero() => {
                if !rhs.is_zero() {
                    return Err(Error::FujikiFails(format!(
                        "class {v:?} is isotropic but ∫α^{} ≠ 0",
                        2 * n
                    )));
                }
            }
            None => c = Some(rhs / lhs),
        }
    }
    let c = c.ok_or_else(|| Error::FujikiFails("form vanishes on every test class".into()))?;
    Ok(FujikiData {
        form: form.clone(),
        c,
        n,
        checked,
    })
}

fn pow<T: Scalar>(x: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, _| acc.mul_ref(x))
}

/// `(pos, neg)` of a nondegenerate form.
pub fn form_signature<T: Scalar>(form: &Matrix<T>) -> Result<(usize, usize)> {
    let s = symmetric_signature(form)?;
    if !s.is_nondegenerate() {
        return Err(Error::DegenerateForm(format!("{} null directions", s.null)));
    }
    Ok((s.pos, s.neg))
}

/// Signature summary used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FormSignature {
    pub pos: usize,
    pub neg: usize,
}
