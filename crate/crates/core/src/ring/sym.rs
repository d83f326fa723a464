//! Quotients of symmetric algebras by powers of isotropic linear forms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::ring::graded::{GradedAlgebra, StructureConstant};
use crate::sample::IntVectors;
use num::{BigInt, Integer, One, ToPrimitive, Zero};

use crate::scalar::{Rational, Scalar};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// `dim Sym^j` of a `b`-dimensional space.
pub fn sym_dim(b: usize, j: usize) -> usize {
    if b == 0 {
        return (j == 0) as usize;
    }
    binomial(j + b - 1, b - 1)
}

/// Predicted dimension of the degree-`j` piece of `Sym(H)/<α^{n+1} : q(α) = 0>`.
pub fn predicted_dim(b: usize, n: usize, j: usize) -> usize {
    if j <= n {
        sym_dim(b, j)
    } else if j <= 2 * n {
        sym_dim(b, 2 * n - j)
    } else {
        0
    }
}

/// Monomials in `vars` variables, degree by degree, in lexicographic order.
pub(crate) struct Monomials {
    vars: usize,
    by_degree: Vec<Vec<Vec<u8>>>,
    index: Vec<HashMap<Vec<u8>, usize>>,
    up: Vec<Vec<usize>>,
}

impl Monomials {
    pub(crate) fn new(vars: usize, max_degree: usize) -> Self {
        let mut by_degree = Vec::new();
        for j in 0..=max_degree {
            let mut out = Vec::new();
            let mut cur = vec![0u8; vars];
            gen_monomials(vars, j, 0, &mut cur, &mut out);
            by_degree.push(out);
        }
        let index: Vec<HashMap<Vec<u8>, usize>> = by_degree
            .iter()
            .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        let mut up = Vec::new();
        for j in 0..max_degree {
            let mut t = Vec::with_capacity(by_degree[j].len() * vars);
            for m in &by_degree[j] {
                for v in 0..vars {
                    let mut e = m.clone();
                    e[v] += 1;
                    t.push(index[j + 1][&e]);
                }
            }
            up.push(t);
        }
        Monomials {
            vars,
            by_degree,
            index,
            up,
        }
    }

    pub(crate) fn dim(&self, j: usize) -> usize {
        self.by_degree[j].len()
    }

    pub(crate) fn exponents(&self, j: usize, m: usize) -> &[u8] {
        &self.by_degree[j][m]
    }

    pub(crate) fn times_var(&self, j: usize, m: usize, v: usize) -> usize {
        self.up[j][m * self.vars + v]
    }

    pub(crate) fn product(&self, j1: usize, a: usize, j2: usize, b: usize) -> usize {
        let e: Vec<u8> = self.by_degree[j1][a]
            .iter()
            .zip(&self.by_degree[j2][b])
            .map(|(x, y)| x + y)
            .collect();
        self.index[j1 + j2][&e]
    }

    /// `α^k` as a vector over degree-`k` monomials.
    pub(crate) fn linear_power<T: Scalar>(&self, alpha: &[T], k: usize) -> Vec<T> {
        let mut p = vec![T::one()];
        for j in 0..k {
            p = self.times_linear(j, &p, alpha);
        }
        p
    }

    pub(crate) fn times_linear<T: Scalar>(&self, j: usize, p: &[T], alpha: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim(j + 1)];
        for (m, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (v, a) in alpha.iter().enumerate() {
                if !a.is_zero() {
                    out[self.times_var(j, m, v)].add_mul(c, a);
                }
            }
        }
        out
    }

    pub(crate) fn label(&self, j: usize, m: usize, names: &[String]) -> String {
        let parts: Vec<String> = self.by_degree[j][m]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                if e == 1 {
                    names[v].clone()
                } else {
                    format!("{}^{e}", names[v])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn gen_monomials(vars: usize, left: usize, pos: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if pos + 1 == vars {
        cur[pos] = left as u8;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    if vars == 0 {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e as u8;
        gen_monomials(vars, left - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// A Sym-quotient ring together with the exponent vector of every basis element.
#[derive(Clone, Debug)]
pub struct SymQuotient<T: Scalar> {
    pub ring: GradedAlgebra<T>,
    pub exponents: Vec<Vec<u8>>,
}

/// Sampling controls for ideal saturation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Saturation {
    /// Maximum number of isotropic samples in the generating degree.
    pub budget: usize,
    pub seed: u64,
}

impl Default for Saturation {
    fn default() -> Self {
        Saturation {
            budget: 20_000,
            seed: 0x5eed,
        }
    }
}

/// Apolar top functional on `Sym^{2n}`: `x^e ↦ ∂^e (yᵀ q y)^n`.
///
/// Every `α^{n+1}` with `q(α) = 0` pairs to zero against all of `Sym^{n-1}`,
/// so the ideal sits inside the annihilator of this functional.
fn dual_power(form: &Matrix<Rational>, n: usize) -> HashMap<Vec<u8>, Rational> {
    let b = form.rows();
    let mut quad: HashMap<Vec<u8>, Rational> = HashMap::new();
    for i in 0..b {
        for j in 0..b {
            if form[(i, j)].is_zero() {
                continue;
            }
            let mut e = vec![0u8; b];
            e[i] += 1;
            e[j] += 1;
            *quad.entry(e).or_insert_with(Rational::zero) += &form[(i, j)];
        }
    }
    let mut f: HashMap<Vec<u8>, Rational> = HashMap::from([(vec![0u8; b], Rational::one())]);
    for _ in 0..n {
        let mut next: HashMap<Vec<u8>, Rational> = HashMap::new();
        for (e, c) in &f {
            for (g, d) in &quad {
                let k: Vec<u8> = e.iter().zip(g).map(|(x, y)| x + y).collect();
                *next.entry(k).or_insert_with(Rational::zero) += c * d;
            }
        }
        next.retain(|_, c| !c.is_zero());
        f = next;
    }
    f.into_iter()
        .map(|(e, c)| {
            let fact: BigInt = e
                .iter()
                .map(|&k| (1..=k as u64).map(BigInt::from).product::<BigInt>())
                .product();
            (e, c * Rational::from_integer(fact))
        })
        .collect()
}

/// The annihilator of [`dual_power`] in degree `n + 1`, in reduced echelon form.
///
/// Standard monomials are chosen greedily from the last one backwards, which
/// makes `m - Σ c_s s` exactly the reduced row of pivot `m`.
fn annihilator(
    mons: &Monomials,
    phi: &HashMap<Vec<u8>, Rational>,
    n: usize,
) -> Result<Echelon<Rational>> {
    let (j, k) = (n + 1, n - 1);
    let width = mons.dim(k);
    let rows: Vec<Vec<Rational>> = (0..mons.dim(j))
        .map(|m| {
            (0..width)
                .map(|t| {
                    let e: Vec<u8> = mons
                        .exponents(j, m)
                        .iter()
                        .zip(mons.exponents(k, t))
                        .map(|(x, y)| x + y)
                        .collect();
                    phi.get(&e).cloned().unwrap_or_else(Rational::zero)
                })
                .collect()
        })
        .collect();
    let mut span = Echelon::new(width);
    let mut standard = Vec::new();
    for m in (0..mons.dim(j)).rev() {
        if span.rank() == width {
            break;
        }
        if span.insert(&rows[m]) {
            standard.push(m);
        }
    }
    if span.rank() != width {
        return Err(Error::Structural(
            "pairing with the dual form power is degenerate".into(),
        ));
    }
    standard.reverse();
    let basis = Matrix::from_rows(standard.iter().map(|&m| rows[m].clone()).collect());
    let solve = basis
        .transpose()
        .inverse()
        .ok_or_else(|| Error::Structural("standard monomials are dependent".into()))?;
    let mut ideal = Echelon::new(mons.dim(j));
    for (m, row) in rows.iter().enumerate() {
        if standard.binary_search(&m).is_ok() {
            continue;
        }
        let c = solve.mul_vec(row);
        let mut v = vec![(m, Rational::one())];
        v.extend(
            standard
                .iter()
                .zip(c)
                .filter(|(_, x)| !x.is_zero())
                .map(|(&s, x)| (s, -x)),
        );
        ideal.insert_sparse(&v);
    }
    Ok(ideal)
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_p(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let mut r = (x as u64 & PRIME) + (x >> 61) as u64;
    while r >= PRIME {
        r -= PRIME;
    }
    r
}

fn add_p(a: u64, b: u64) -> u64 {
    let t = a + b;
    if t >= PRIME {
        t - PRIME
    } else {
        t
    }
}

fn inv_p(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_p(acc, base);
        }
        base = mul_p(base, base);
        e >>= 1;
    }
    acc
}

fn to_p(x: &Rational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let red = |z: &BigInt| {
        (((z % &p) + &p) % &p)
            .to_u64()
            .expect("reduced below the prime")
    };
    let d = red(x.denom());
    (d != 0).then(|| mul_p(red(x.numer()), inv_p(d)))
}

/// Row echelon form over `F_p`; its rank bounds the rational rank from below.
struct ModEchelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        for (p, row) in &self.rows {
            let c = v[*p];
            if c == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x = add_p(*x, PRIME - mul_p(c, *y));
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_p(v[p]);
        for x in v.iter_mut() {
            *x = mul_p(*x, inv);
        }
        self.rows.push((p, v));
        true
    }
}

/// `Sym(H)/<α^{n+1} : q(α) = 0>` with `H` the space carrying `form`.
///
/// `isotropic` is one nonzero isotropic vector `e`; further isotropic vectors
/// are `2q(v, e) v - q(v) e` for pseudo-random integer `v`. Their `(n+1)`-st
/// powers are sampled until they span, modulo a large prime, a space of the
/// predicted codimension; each is checked exactly to lie in the annihilator of
/// the dual form power, which has that dimension, so the spans agree over Q.
/// Higher degrees are products with the variables. Degree 2 of the result is
/// spanned by the variables in order; integration is 1 on the standard top
/// monomial.
pub fn sym_quotient(
    form: &Matrix<Rational>,
    n: usize,
    isotropic: &[Rational],
    names: &[String],
    sat: Saturation,
) -> Result<SymQuotient<Rational>> {
    let b = form.rows();
    if n == 0 {
        return Err(Error::Dimension("n must be positive".into()));
    }
    if b < 3 {
        // the null cone of a binary form is two lines, not an irreducible quadric
        return Err(Error::Dimension(
            "quadratic space of dimension at least 3 required".into(),
        ));
    }
    if names.len() != b || isotropic.len() != b {
        return Err(Error::Dimension(
            "variable count differs from form size".into(),
        ));
    }
    if !form.bilinear(isotropic, isotropic).is_zero() || isotropic.iter().all(Zero::is_zero) {
        return Err(Error::NotIsotropic);
    }
    let mons = Monomials::new(b, 2 * n);
    // an integral multiple of e keeps the sampled powers integral
    let scale = isotropic
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let isotropic: Vec<Rational> = isotropic
        .iter()
        .map(|x| x * Rational::from_integer(scale.clone()))
        .collect();
    let qe = form.mul_vec(&isotropic);

    let mut ideals: Vec<Option<Echelon<Rational>>> = (0..=2 * n).map(|_| None).collect();
    let j0 = n + 1;
    let target = annihilator(&mons, &dual_power(form, n), n)?;
    let expected = mons.dim(j0) - predicted_dim(b, n, j0);
    if target.rank() != expected {
        return Err(Error::Structural(format!(
            "annihilator has dimension {} in degree {}, expected {expected}",
            target.rank(),
            2 * j0
        )));
    }
    let mut certificate = ModEchelon { rows: Vec::new() };
    let mut candidates = IntVectors::dense(b, sat.seed);
    let mut tries = 0;
    while tries < sat.budget && certificate.rows.len() < expected {
        tries += 1;
        let v: Vec<Rational> = candidates
            .next_vector()
            .into_iter()
            .map(Rational::from_int)
            .collect();
        let qve = crate::linalg::dot(&v, &qe);
        if qve.is_zero() {
            continue;
        }
        let qv = form.bilinear(&v, &v);
        let two_qve = &qve + &qve;
        let alpha: Vec<Rational> = v
            .iter()
            .zip(&isotropic)
            .map(|(x, e)| x * &two_qve - &qv * e)
            .collect();
        if !form.bilinear(&alpha, &alpha).is_zero() {
            return Err(Error::Structural("sampled vector is not isotropic".into()));
        }
        // the first few powers are also checked exactly against the annihilator
        if tries <= b && !target.contains(&mons.linear_power(&alpha, j0)) {
            return Err(Error::Structural(
                "an isotropic power lies outside the annihilator".into(),
            ));
        }
        let reduced: Vec<u64> = alpha.iter().map(|x| to_p(x).expect("integral")).collect();
        let mut power = vec![1u64];
        for j in 0..j0 {
            let mut next = vec![0u64; mons.dim(j + 1)];
            for (m, c) in power.iter().enumerate().filter(|(_, c)| **c != 0) {
                for (var, a) in reduced.iter().enumerate().filter(|(_, a)| **a != 0) {
                    let slot = &mut next[mons.times_var(j, m, var)];
                    *slot = add_p(*slot, mul_p(*c, *a));
                }
            }
            power = next;
        }
        certificate.insert(power);
    }
    if certificate.rows.len() != expected {
        return Err(Error::SaturationFailed {
            degree: 2 * j0,
            expected,
            reached: certificate.rows.len(),
        });
    }
    ideals[j0] = Some(target);
    for j in j0..2 * n {
        let prev = ideals[j].as_ref().unwrap();
        let expected = mons.dim(j + 1) - predicted_dim(b, n, j + 1);
        let mut next = Echelon::new(mons.dim(j + 1));
        // products stay inside the annihilator, so reaching its dimension is enough
        'fill: for row in prev.rows() {
            for v in 0..b {
                let shifted: Vec<(usize, Rational)> = row
                    .iter()
                    .map(|(m, c)| (mons.times_var(j, *m, v), c.clone()))
                    .collect();
                next.insert_sparse(&shifted);
                if next.rank() == expected {
                    break 'fill;
                }
            }
        }
        if next.rank() != expected {
            return Err(Error::SaturationFailed {
                degree: 2 * (j + 1),
                expected,
                reached: next.rank(),
            });
        }
        ideals[j + 1] = Some(next);
    }

    // standard monomials: non-pivot columns of each ideal piece
    let mut global: Vec<Vec<Option<usize>>> = Vec::new();
    let mut exponents = Vec::new();
    let mut labels = Vec::new();
    let mut dims = Vec::new();
    for j in 0..=2 * n {
        let mut map = vec![None; mons.dim(j)];
        let mut count = 0;
        for (m, slot) in map.iter_mut().enumerate() {
            let is_pivot = ideals[j]
                .as_ref()
                .is_some_and(|e| e.row_of_pivot(m).is_some());
            if !is_pivot {
                *slot = Some(exponents.len());
                exponents.push(mons.exponents(j, m).to_vec());
                labels.push(mons.label(j, m, names));
                count += 1;
            }
        }
        dims.push(count);
        if j < 2 * n {
            dims.push(0);
        }
        global.push(map);
    }
    if dims[4 * n] != 1 {
        return Err(Error::Structural(format!(
            "top degree of the quotient has dimension {}",
            dims[4 * n]
        )));
    }

    let reduce = |j: usize, m: usize| -> Vec<(usize, Rational)> {
        if let Some(g) = global[j][m] {
            return vec![(g, Rational::one())];
        }
        let ech = ideals[j].as_ref().unwrap();
        let r = ech.row_of_pivot(m).unwrap();
        ech.rows()[r]
            .iter()
            .filter(|(c, _)| *c != m)
            .map(|(c, x)| {
                (
                    global[j][*c].expect("reduced row has standard support"),
                    -x.clone(),
                )
            })
            .collect()
    };

    let std_by_degree: Vec<Vec<usize>> = (0..=2 * n)
        .map(|j| {
            (0..mons.dim(j))
                .filter(|&m| global[j][m].is_some())
                .collect()
        })
        .collect();
    let mut constants = Vec::new();
    for j1 in 0..=2 * n {
        for j2 in 0..=2 * n - j1 {
            for &a in &std_by_degree[j1] {
                for &bm in &std_by_degree[j2] {
                    let prod = mons.product(j1, a, j2, bm);
                    let (i, k) = (global[j1][a].unwrap(), global[j2][bm].unwrap());
                    for (g, c) in reduce(j1 + j2, prod) {
                        constants.push(StructureConstant {
                            i,
                            j: k,
                            k: g,
                            coeff: c,
                        });
                    }
                }
            }
        }
    }
    let ring = GradedAlgebra::new(&dims, labels, constants, vec![Rational::one()])?;
    Ok(SymQuotient { ring, exponents })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(sym_dim(5, 2), 15);
        assert_eq!(sym_dim(22, 2), 253);
        assert_eq!(
            (0..=4).map(|j| predicted_dim(5, 2, j)).collect::<Vec<_>>(),
            vec![1, 5, 15, 5, 1]
        );
    }

    #[test]
    fn monomial_counts() {
        let m = Monomials::new(3, 3);
        for j in 0..=3 {
            assert_eq!(m.dim(j), sym_dim(3, j));
        }
        // (x + y)^2 = x^2 + 2xy + y^2
        let p = m.linear_power(&[int(1), int(1), int(0)], 2);
        let total: Rational = p.iter().sum();
        assert_eq!(total, int(4));
    }

    #[test]
    fn ternary_quotient() {
        // x^2 + y^2 - z^2, n = 1: degree 2 is all of Sym^1, degree 4 one-dimensional
        let q = Matrix::diagonal(&[int(1), int(1), int(-1)]);
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let sq = sym_quotient(
            &q,
            1,
            &[int(1), int(0), int(1)],
            &names,
            Saturation::default(),
        )
        .unwrap();
        assert_eq!(sq.ring.dims(), vec![1, 0, 3, 0, 1]);
        assert!(sq.ring.validate().passed(), "{:?}", sq.ring.validate());
    }

    #[test]
    fn annihilator_is_the_span_of_isotropic_powers() {
        // exact span of α^3 over many isotropic α, with no prime involved
        let q = Matrix::diagonal(&[int(1), int(1), int(1), int(-1), int(-1)]);
        let mons = Monomials::new(5, 4);
        let target = annihilator(&mons, &dual_power(&q, 2), 2).unwrap();
        let e = [int(1), int(0), int(0), int(1), int(0)];
        let qe = q.mul_vec(&e);
        let mut span = Echelon::new(mons.dim(3));
        for v in IntVectors::new(5, 3).take(400) {
            let v: Vec<Rational> = v.into_iter().map(Rational::from_int).collect();
            let qve = crate::linalg::dot(&v, &qe);
            if qve.is_zero() {
                continue;
            }
            let t = q.bilinear(&v, &v) / (int(2) * qve);
            let alpha: Vec<Rational> = v.iter().zip(&e).map(|(x, y)| x - &t * y).collect();
            span.insert(&mons.linear_power(&alpha, 3));
        }
        assert_eq!(span.rank(), 35 - 5);
        assert_eq!(span.to_subspace(), target.to_subspace());
    }

    #[test]
    fn prime_field() {
        assert_eq!(mul_p(PRIME - 1, PRIME - 1), 1);
        assert_eq!(mul_p(inv_p(12345), 12345), 1);
        assert_eq!(
            to_p(&Rational::new(1.into(), 2.into())).map(|h| mul_p(h, 2)),
            Some(1)
        );
        assert_eq!(to_p(&int(-1)), Some(PRIME - 1));
    }

    #[test]
    fn binary_form_rejected() {
        let q = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let names = vec!["x".to_string(), "y".to_string()];
        assert!(sym_quotient(&q, 1, &[int(1), int(0)], &names, Saturation::default()).is_err());
    }

    #[test]
    fn tiny_budget_fails_saturation() {
        let q = Matrix::diagonal(&[int(1), int(1), int(-1)]);
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let sat = Saturation { budget: 2, seed: 1 };
        assert!(matches!(
            sym_quotient(&q, 1, &[int(1), int(0), int(1)], &names, sat),
            Err(Error::SaturationFailed { .. })
        ));
    }
}
