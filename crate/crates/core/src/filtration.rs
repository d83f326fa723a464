//! Perverse and monodromy weight filtrations, and their comparison.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bbf::bbf_form;
use crate::error::{Error, Result};
use crate::lefschetz::{complete_sl2_of_class, cup_operator, hl_test, DegreeOperator};
use crate::linalg::{diagonalize_symmetric, Echelon, Matrix, Subspace};
use crate::report::CheckReport;
use crate::ring::{rational_sqrt, BigradedAlgebra, GradedAlgebra};
use crate::scalar::{Rational, Scalar};

/// An increasing filtration `F_m` of `T^ambient`.
///
/// Stored on a window `lo..=hi`; `F_m = 0` below and `F_m` = everything above.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration<T> {
    ambient: usize,
    lo: i64,
    steps: Vec<Subspace<T>>,
}

impl<T: Scalar> Filtration<T> {
    /// `F_m = f(m)` on `lo..=hi`, trimmed to the steps where it changes.
    pub fn from_fn(
        ambient: usize,
        lo: i64,
        hi: i64,
        mut f: impl FnMut(i64) -> Subspace<T>,
    ) -> Self {
        let mut lo = lo;
        let mut steps: Vec<Subspace<T>> = (lo..=hi).map(&mut f).collect();
        while steps.first().is_some_and(|s| s.is_zero()) {
            steps.remove(0);
            lo += 1;
        }
        while steps.len() >= 2 && steps[steps.len() - 2].is_full() {
            steps.pop();
        }
        Filtration { ambient, lo, steps }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// First index with `F_m ≠ 0`.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Last index stored; `F_m` is full from here on when the filtration is exhaustive.
    pub fn hi(&self) -> i64 {
        self.lo + self.steps.len() as i64 - 1
    }

    pub fn get(&self, m: i64) -> Subspace<T> {
        if m < self.lo {
            Subspace::zero(self.ambient)
        } else if m > self.hi() {
            self.steps
                .last()
                .cloned()
                .unwrap_or_else(|| Subspace::zero(self.ambient))
        } else {
            self.steps[(m - self.lo) as usize].clone()
        }
    }

    pub fn dim(&self, m: i64) -> usize {
        self.get(m).dim()
    }

    /// `dim gr_m` for every `m` with a nonzero graded piece.
    pub fn jumps(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        let mut prev = 0;
        for (i, s) in self.steps.iter().enumerate() {
            if s.dim() > prev {
                out.insert(self.lo + i as i64, s.dim() - prev);
            }
            prev = s.dim();
        }
        out
    }

    pub fn is_increasing(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].is_subspace_of(&w[1]))
    }

    /// `F'_j = F_{floor(j / factor)}`.
    pub fn stretch(&self, factor: i64) -> Self {
        assert!(factor > 0);
        Filtration::from_fn(self.ambient, self.lo * factor, self.hi() * factor, |j| {
            self.get(j.div_euclid(factor))
        })
    }

    pub fn is_exhaustive(&self) -> bool {
        self.ambient == 0 || self.steps.last().is_some_and(|s| s.is_full())
    }
}

/// `ker M` inside the source of `m`, with the empty map giving everything.
fn kernel<T: Scalar>(m: &Matrix<T>, ambient: usize) -> Subspace<T> {
    if m.rows() == 0 {
        Subspace::full(ambient)
    } else {
        m.kernel()
    }
}

/// Blocks of `L` between consecutive degrees: `blocks[d] : H^d -> H^{d+2}`.
fn blocks<T: Scalar>(r: &GradedAlgebra<T>, l: &DegreeOperator<T>) -> Vec<Matrix<T>> {
    (0..=r.top_degree()).map(|d| l.block(r, d)).collect()
}

/// `L^j : H^d -> H^{d+2j}`, an empty matrix when the target is beyond the top.
fn power_block<T: Scalar>(
    r: &GradedAlgebra<T>,
    blocks: &[Matrix<T>],
    d: usize,
    j: usize,
) -> Matrix<T> {
    let top = r.top_degree();
    if d + 2 * j > top {
        return Matrix::zeros(0, r.dim_of(d));
    }
    let mut m = Matrix::identity(r.dim_of(d));
    for step in 0..j {
        m = &blocks[d + 2 * step] * &m;
    }
    m
}

fn half_top<T: Scalar>(r: &GradedAlgebra<T>) -> Result<usize> {
    let top = r.top_degree();
    if top % 4 != 0 {
        return Err(Error::Dimension(format!(
            "top degree {top} is not of the form 4n"
        )));
    }
    Ok(top / 4)
}

/// `P_m H^k = Σ_{i=1}^{2n+1} ker L_β^{2n+m+i-k} ∩ im L_β^{i-1} ∩ H^k`.
///
/// `q` is the quadratic form on degree 2 and `beta` is given in degree-2 coordinates.
pub fn perverse_filtration<T: Scalar>(
    r: &GradedAlgebra<T>,
    q: &Matrix<T>,
    beta: &[T],
    k: usize,
) -> Result<Filtration<T>> {
    if beta.len() != r.dim_of(2) || q.rows() != beta.len() {
        return Err(Error::Dimension("β must be a degree-2 class".into()));
    }
    if beta.iter().all(T::is_zero) || !q.bilinear(beta, beta).is_zero() {
        return Err(Error::NotIsotropic);
    }
    let l = cup_operator(r, &r.embed(2, beta))?;
    perverse_filtration_of(r, &l, k)
}

/// The perverse formula for an arbitrary degree-2 operator, no isotropy check.
pub fn perverse_filtration_of<T: Scalar>(
    r: &GradedAlgebra<T>,
    l: &DegreeOperator<T>,
    k: usize,
) -> Result<Filtration<T>> {
    let n = half_top(r)? as i64;
    if k > r.top_degree() {
        return Err(Error::Dimension(format!("degree {k} above the top degree")));
    }
    let blocks = blocks(r, l);
    let dk = r.dim_of(k);
    let images: Vec<Subspace<T>> = (1..=2 * n + 1)
        .map(|i| {
            let steps = (i - 1) as usize;
            if 2 * steps > k {
                Subspace::zero(dk)
            } else {
                power_block(r, &blocks, k - 2 * steps, steps).column_space()
            }
        })
        .collect();
    let mut kernels: BTreeMap<i64, Subspace<T>> = BTreeMap::new();
    let ki = k as i64;
    let f = |m: i64| -> Subspace<T> {
        let mut acc = Subspace::zero(dk);
        for i in 1..=2 * n + 1 {
            let j = 2 * n + m + i - ki;
            if j <= 0 {
                continue;
            }
            let ker = kernels
                .entry(j)
                .or_insert_with(|| kernel(&power_block(r, &blocks, k, j as usize), dk))
                .clone();
            let term = ker
                .intersection(&images[(i - 1) as usize])
                .expect("same ambient");
            acc = acc.sum(&term).expect("same ambient");
        }
        acc
    };
    Ok(Filtration::from_fn(dk, ki - 4 * n - 1, ki, f))
}

/// Compares `P^{σ̄}_m H^k` with the Hodge flag `⊕_{p ≤ m + offset} H^{p, k-p}`.
#[derive(Clone, Debug, Serialize)]
pub struct PerverseHodge {
    /// Per degree: the offset at which the flags agree, if any.
    pub offsets: BTreeMap<usize, Option<i64>>,
    /// The common offset when every degree agrees at the same one.
    pub offset: Option<i64>,
    pub report: CheckReport,
}

pub fn perverse_hodge_check<T: Scalar>(b: &BigradedAlgebra<T>) -> Result<PerverseHodge> {
    let r = b.ring();
    let n = half_top(r)? as i64;
    let q = bbf_form(b)?;
    let sb = b.sigma_bar();
    let sb2 = r.component(sb, 2);
    let mut report = CheckReport::new();
    report.require(q.bilinear(&sb2, &sb2).is_zero(), || {
        "σ̄ is not isotropic".to_string()
    });
    let l = cup_operator(r, sb)?;
    let mut offsets = BTreeMap::new();
    for k in 0..=r.top_degree() {
        if r.dim_of(k) == 0 {
            continue;
        }
        let p = perverse_filtration_of(r, &l, k)?;
        report.require(p.is_increasing() && p.is_exhaustive(), || {
            format!("perverse filtration on degree {k} is not a filtration")
        });
        let range = r.degree_range(k);
        let hodge = |top_p: i64| -> Subspace<T> {
            let vecs = range
                .clone()
                .filter(|&i| (b.bidegrees()[i].0 as i64) <= top_p)
                .map(|i| crate::linalg::unit_vector(range.len(), i - range.start))
                .collect();
            Subspace::span(range.len(), vecs)
        };
        let found = (-2 * n - 2..=2 * n + 2).find(|&off| {
            (p.lo() - 1..=p.hi() + 1).all(|m| p.get(m) == hodge(m + off))
                && hodge(p.lo() - 1 + off).is_zero()
        });
        report.require(found.is_some(), || {
            format!("no offset matches the Hodge flag in degree {k}")
        });
        offsets.insert(k, found);
    }
    let distinct: Vec<i64> = offsets.values().flatten().copied().collect();
    let offset = distinct
        .first()
        .copied()
        .filter(|o| distinct.iter().all(|x| x == o) && distinct.len() == offsets.len());
    report.require(offset.is_some(), || {
        format!("offsets differ between degrees: {offsets:?}")
    });
    Ok(PerverseHodge {
        offsets,
        offset,
        report,
    })
}

/// Smallest `d` with `N^d = 0`.
pub fn nilpotent_index<T: Scalar>(n: &Matrix<T>) -> Result<usize> {
    if !n.is_square() {
        return Err(Error::Dimension("nilpotent operator must be square".into()));
    }
    let dim = n.rows();
    let mut p = Matrix::identity(dim);
    for d in 1..=dim.max(1) {
        p = &p * n;
        if p.is_zero() {
            return Ok(d);
        }
    }
    Err(Error::NotNilpotent)
}

/// Solves `op(X) = rhs` for a matrix `X`, where `op` is linear into a list of matrices.
fn solve_matrix_equation<T: Scalar>(
    dim: usize,
    op: impl Fn(&Matrix<T>) -> Vec<Matrix<T>>,
    rhs: &[Matrix<T>],
) -> Option<Matrix<T>> {
    let unknowns = dim * dim;
    let eqs = rhs.len() * unknowns;
    // sparse rows of the augmented system, the last column holding the right-hand side
    let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); eqs];
    for u in 0..unknowns {
        let mut e = Matrix::zeros(dim, dim);
        e[(u / dim, u % dim)] = T::one();
        for (b, img) in op(&e).iter().enumerate() {
            for (idx, x) in img.entries().iter().enumerate() {
                if !x.is_zero() {
                    rows[b * unknowns + idx].push((u, x.clone()));
                }
            }
        }
    }
    let mut system = Echelon::new(unknowns + 1);
    for (i, mut row) in rows.into_iter().enumerate() {
        let c = &rhs[i / unknowns].entries()[i % unknowns];
        if !c.is_zero() {
            row.push((unknowns, c.clone()));
        }
        system.insert_sparse(&row);
    }
    if system.pivots().contains(&unknowns) {
        return None;
    }
    let mut x = Matrix::zeros(dim, dim);
    for (row, &p) in system.rows().iter().zip(system.pivots()) {
        if let Some((_, c)) = row.iter().find(|(j, _)| *j == unknowns) {
            x[(p / dim, p % dim)] = c.clone();
        }
    }
    Some(x)
}

/// Semisimple `h` with `[h, N] = 2N` from an sl2-completion of `N`.
pub fn jacobson_morozov<T: Scalar>(n: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let dim = n.rows();
    let two_n = n.scale(&T::from_int(2));
    let x = solve_matrix_equation(
        dim,
        |x| vec![n.commutator(x).commutator(n)],
        std::slice::from_ref(&two_n),
    )
    .ok_or_else(|| Error::Structural("no neutral element for N".into()))?;
    let h = n.commutator(&x);
    let f = solve_matrix_equation(
        dim,
        |f| {
            vec![
                n.commutator(f),
                &h.commutator(f) + &f.scale(&T::from_int(2)),
            ]
        },
        &[h.clone(), Matrix::zeros(dim, dim)],
    )
    .ok_or_else(|| Error::Structural("no sl2 completion for N".into()))?;
    if h.commutator(n) != two_n || n.commutator(&f) != h {
        return Err(Error::Structural("sl2 completion of N failed".into()));
    }
    Ok((h, f))
}

/// `W_j = Σ_{i ≥ max(0,-j)} ker N^{i+j+1} ∩ im N^i`, centered at 0.
fn weight_by_kernels<T: Scalar>(n: &Matrix<T>, index: usize) -> Vec<(i64, Subspace<T>)> {
    let dim = n.rows();
    let d = index as i64;
    let powers: Vec<Matrix<T>> = (0..=2 * index + 1).map(|k| n.pow(k)).collect();
    let ker = |e: i64| -> Subspace<T> {
        if e <= 0 {
            Subspace::zero(dim)
        } else if e as usize >= powers.len() {
            Subspace::full(dim)
        } else {
            powers[e as usize].kernel()
        }
    };
    (-d..=d)
        .map(|j| {
            let mut acc = Subspace::zero(dim);
            for i in 0.max(-j)..=d {
                let im = powers[i as usize].column_space();
                acc = acc
                    .sum(&ker(i + j + 1).intersection(&im).expect("same ambient"))
                    .expect("same ambient");
            }
            (j, acc)
        })
        .collect()
}

/// Checks `N W_j ⊆ W_{j-2}` and `N^j : gr_{c+j} ≅ gr_{c-j}`.
pub fn weight_axioms<T: Scalar>(n: &Matrix<T>, w: &Filtration<T>, center: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let (lo, hi) = (w.lo().min(center) - 1, w.hi().max(center) + 1);
    for j in lo..=hi {
        report.require(
            w.get(j).image_under(n).is_subspace_of(&w.get(j - 2)),
            || format!("N W_{j} is not in W_{}", j - 2),
        );
    }
    let span = (hi - center).max(center - lo);
    for j in 0..=span {
        let up = w.dim(center + j) - w.dim(center + j - 1);
        let down = w.dim(center - j) - w.dim(center - j - 1);
        report.require(up == down, || {
            format!(
                "gr_{} and gr_{} have different dimensions",
                center + j,
                center - j
            )
        });
        let image = w.get(center + j).image_under(&n.pow(j as usize));
        let covered = image.sum(&w.get(center - j - 1)).expect("same ambient");
        report.require(w.get(center - j).is_subspace_of(&covered), || {
            format!(
                "N^{j} does not map gr_{} onto gr_{}",
                center + j,
                center - j
            )
        });
    }
    report.require(w.is_increasing() && w.is_exhaustive(), || {
        "weight filtration is not an exhaustive increasing filtration".to_string()
    });
    report
}

/// The monodromy weight filtration of a nilpotent `N`, centered at `center`.
///
/// Computed from an sl2-completion of `N` and independently from kernels and
/// images of powers of `N`; the two must agree and satisfy the defining axioms.
pub fn weight_filtration<T: Scalar>(n: &Matrix<T>, center: i64) -> Result<Filtration<T>> {
    let index = nilpotent_index(n)?;
    let dim = n.rows();
    let d = index as i64 - 1;
    let by_kernels = weight_by_kernels(n, d as usize);
    let kernels = Filtration::from_fn(dim, center - d, center + d, |m| {
        by_kernels[(m - center + d) as usize].1.clone()
    });

    let (h, _) = jacobson_morozov(n)?;
    let spectrum: Vec<i64> = (-d..=d).collect();
    let eig = crate::linalg::integer_eigenspaces(&h, &spectrum)?;
    let sl2 = Filtration::from_fn(dim, center - d, center + d, |m| {
        let mut acc = Subspace::zero(dim);
        for (&lambda, space) in &eig {
            if lambda >= -(m - center) {
                acc = acc.sum(space).expect("same ambient");
            }
        }
        acc
    });
    if sl2 != kernels {
        return Err(Error::Structural(
            "weight filtration routes disagree".into(),
        ));
    }
    let report = weight_axioms(n, &sl2, center);
    if !report.passed() {
        return Err(Error::Structural(report.failures.join("; ")));
    }
    Ok(sl2)
}

/// `(β, η, ρ)` with `β, η` isotropic, `ρ` positive and orthogonal to both.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianTriple<T> {
    pub beta: Vec<T>,
    pub eta: Vec<T>,
    pub rho: Vec<T>,
}

impl<T: Scalar> LagrangianTriple<T> {
    pub fn validate(&self, q: &Matrix<T>) -> Result<()> {
        let b = q.rows();
        if [&self.beta, &self.eta, &self.rho]
            .iter()
            .any(|v| v.len() != b)
        {
            return Err(Error::Dimension(
                "triple classes must live in degree 2".into(),
            ));
        }
        let bad = |msg: &str| Err(Error::InvalidTriple(msg.into()));
        if self.beta.iter().all(T::is_zero) || !q.bilinear(&self.beta, &self.beta).is_zero() {
            return Err(Error::NotIsotropic);
        }
        if !q.bilinear(&self.eta, &self.eta).is_zero() {
            return bad("q(η) ≠ 0");
        }
        if q.bilinear(&self.rho, &self.rho).real_sign() != Some(std::cmp::Ordering::Greater) {
            return bad("q(ρ) is not positive");
        }
        if !q.bilinear(&self.eta, &self.rho).is_zero()
            || !q.bilinear(&self.beta, &self.rho).is_zero()
        {
            return bad("ρ is not orthogonal to β and η");
        }
        Ok(())
    }
}

/// A triple read off a diagonalization of `q`: `β = f_1 + t f_a`, `η = f_2 + t' f_b`
/// with `f_1, f_2` positive, `f_a, f_b` negative, and `ρ` a third positive direction.
pub fn diagonal_lagrangian_triple(q: &Matrix<Rational>) -> Result<LagrangianTriple<Rational>> {
    let d = diagonalize_symmetric(q)?;
    let sign = |i: usize| d.diagonal[i].cmp(&Rational::from_int(0));
    let pos: Vec<usize> = (0..q.rows())
        .filter(|&i| sign(i) == std::cmp::Ordering::Greater)
        .collect();
    let mut neg: Vec<usize> = (0..q.rows())
        .filter(|&i| sign(i) == std::cmp::Ordering::Less)
        .collect();
    let none =
        || Error::InvalidTriple("no rational Lagrangian triple in the diagonal frame".into());
    if pos.len() < 3 {
        return Err(none());
    }
    let mut isotropic = Vec::new();
    for &p in &pos {
        if isotropic.len() == 2 {
            break;
        }
        let found = neg
            .iter()
            .position(|&m| rational_sqrt(&(-(&d.diagonal[p] / &d.diagonal[m]))).is_some());
        if let Some(k) = found {
            let m = neg.remove(k);
            let t = rational_sqrt(&(-(&d.diagonal[p] / &d.diagonal[m]))).expect("square");
            let v: Vec<Rational> = (0..q.rows())
                .map(|r| &d.basis[(r, p)] + &t * &d.basis[(r, m)])
                .collect();
            isotropic.push((p, v));
        }
    }
    if isotropic.len() < 2 {
        return Err(none());
    }
    let rho_index = pos
        .iter()
        .copied()
        .find(|p| isotropic.iter().all(|(i, _)| i != p))
        .ok_or_else(none)?;
    Ok(LagrangianTriple {
        beta: isotropic[0].1.clone(),
        eta: isotropic[1].1.clone(),
        rho: d.basis.column(rho_index),
    })
}

/// `N = [L_β, Λ_ρ]` on the whole ring.
pub fn lagrangian_monodromy<T: Scalar>(
    r: &GradedAlgebra<T>,
    q: &Matrix<T>,
    t: &LagrangianTriple<T>,
) -> Result<DegreeOperator<T>> {
    t.validate(q)?;
    if !hl_test(r, &r.embed(2, &t.rho)) {
        return Err(Error::NotHardLefschetz);
    }
    let l_beta = cup_operator(r, &r.embed(2, &t.beta))?;
    let rho = complete_sl2_of_class(r, &t.rho)?;
    let n = l_beta.commutator(&rho.lam);
    nilpotent_index(&n.matrix)?;
    Ok(n)
}

/// Whether `q(Nx, conj(Nx)) > 0`.
pub fn nilpotent_orbit_check<T: Scalar>(n: &Matrix<T>, x: &[T], q: &Matrix<T>) -> Result<bool> {
    let nx = n.mul_vec(x);
    let bar: Vec<T> = nx.iter().map(|c| c.conj()).collect();
    let v = q.bilinear(&nx, &bar);
    match v.real_sign() {
        Some(s) => Ok(s == std::cmp::Ordering::Greater),
        None => Err(Error::Structural("q(Nx, conj Nx) is not real".into())),
    }
}

/// Per-index dimensions of `P_m` and `W_{2m + shift}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PwTable {
    pub rows: Vec<(i64, usize, usize)>,
}

/// `P_m = W_{2m + shift}` for every `m`.
///
/// Perverse indices step by one where weights step by two, hence the factor.
pub fn pw_compare<T: Scalar>(p: &Filtration<T>, w: &Filtration<T>, shift: i64) -> (bool, PwTable) {
    let lo = p.lo().min((w.lo() - shift).div_euclid(2)) - 1;
    let hi = p.hi().max((w.hi() - shift).div_euclid(2) + 1) + 1;
    let mut ok = p.ambient() == w.ambient();
    let mut rows = Vec::new();
    for m in lo..=hi {
        let (pm, wm) = (p.get(m), w.get(2 * m + shift));
        ok &= pm == wm;
        rows.push((m, pm.dim(), wm.dim()));
    }
    // odd weight steps must not carry anything either
    for j in w.lo() - 1..=w.hi() + 1 {
        if (j - shift).rem_euclid(2) == 1 {
            ok &= w.get(j) == w.get(j - 1);
        }
    }
    (ok, PwTable { rows })
}

/// Smallest shift in `window` with `P_m = W_{2m + shift}`.
pub fn find_pw_shift<T: Scalar>(
    p: &Filtration<T>,
    w: &Filtration<T>,
    window: std::ops::RangeInclusive<i64>,
) -> Option<i64> {
    window.into_iter().find(|&s| pw_compare(p, w, s).0)
}

/// P versus W for one degree.
#[derive(Clone, Debug, Serialize)]
pub struct PwDegree {
    pub degree: usize,
    pub index: usize,
    pub perverse_jumps: BTreeMap<i64, usize>,
    pub weight_jumps: BTreeMap<i64, usize>,
    pub shift: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PwReport {
    pub degrees: Vec<PwDegree>,
    /// Index of `N` on degree 2.
    pub index_degree_two: usize,
    pub index_total: usize,
    /// The shift when it is the same for every degree.
    pub uniform_shift: Option<i64>,
    pub report: CheckReport,
}

/// Weak P = W: perverse filtration of `β` against the weight filtration of `[L_β, Λ_ρ]`, degree by degree.
///
/// The weight filtration of `N` on `H^k` is centered at `k`; a single shift
/// must then work in every degree.
pub fn weak_pw<T: Scalar>(
    r: &GradedAlgebra<T>,
    q: &Matrix<T>,
    t: &LagrangianTriple<T>,
) -> Result<PwReport> {
    let n = half_top(r)? as i64;
    let big_n = lagrangian_monodromy(r, q, t)?;
    let mut report = CheckReport::new();
    let mut degrees = Vec::new();
    for k in 0..=r.top_degree() {
        if r.dim_of(k) == 0 {
            continue;
        }
        let nk = big_n.block(r, k);
        let p = perverse_filtration(r, q, &t.beta, k)?;
        let w = weight_filtration(&nk, k as i64)?;
        let shift = find_pw_shift(&p, &w, -2 * n - 2..=2 * n + 2);
        report.require(shift.is_some(), || {
            format!("P and W disagree in degree {k} at every shift")
        });
        degrees.push(PwDegree {
            degree: k,
            index: nilpotent_index(&nk)?,
            perverse_jumps: p.jumps(),
            weight_jumps: w.jumps(),
            shift,
        });
    }
    let shifts: Vec<Option<i64>> = degrees.iter().map(|d| d.shift).collect();
    let uniform_shift = shifts
        .first()
        .copied()
        .flatten()
        .filter(|s| shifts.iter().all(|x| *x == Some(*s)));
    report.require(uniform_shift.is_some(), || {
        format!("shift is not uniform across degrees: {shifts:?}")
    });
    Ok(PwReport {
        degrees,
        index_degree_two: nilpotent_index(&big_n.block(r, 2))?,
        index_total: nilpotent_index(&big_n.matrix)?,
        uniform_shift,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::weight_operator;
    use crate::linalg::unit_vector;
    use crate::llv::llv_algebra;
    use crate::ring::{bogomolov_model, BogomolovModel};
    use crate::sample::IntVectors;
    use crate::scalar::{Gaussian, Rational};
    use num::Zero;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    fn model(n: usize) -> BogomolovModel {
        let q = Matrix::diagonal(&ints(&[1, 1, 1, -1, -1]));
        bogomolov_model(&q, n).unwrap()
    }

    fn triple() -> LagrangianTriple<Rational> {
        LagrangianTriple {
            beta: ints(&[1, 0, 0, 1, 0]),
            eta: ints(&[0, 1, 0, 0, 1]),
            rho: ints(&[0, 0, 1, 0, 0]),
        }
    }

    /// Nilpotent matrix with Jordan blocks `sizes`, where `N v_t = v_{t+1}` inside a block.
    fn jordan(sizes: &[usize]) -> Matrix<Rational> {
        let dim = sizes.iter().sum();
        let mut n = Matrix::zeros(dim, dim);
        let mut start = 0;
        for &s in sizes {
            for t in 0..s.saturating_sub(1) {
                n[(start + t + 1, start + t)] = r(1);
            }
            start += s;
        }
        n
    }

    /// Weight of each Jordan basis vector, centered at 0.
    fn jordan_weights(sizes: &[usize]) -> Vec<i64> {
        sizes
            .iter()
            .flat_map(|&s| (0..s).map(move |t| s as i64 - 1 - 2 * t as i64))
            .collect()
    }

    /// A product of `2 dim` elementary row operations and a permutation.
    fn random_unimodular(dim: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
        let mut perm: Vec<usize> = (0..dim).collect();
        perm.shuffle(rng);
        let mut p = Matrix::from_fn(dim, dim, |i, j| r((perm[i] == j) as i64));
        for _ in 0..2 * dim {
            let (a, b) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
            if a == b {
                continue;
            }
            let c = r(if rng.gen_bool(0.5) { 1 } else { -1 });
            for col in 0..dim {
                let t = &p[(a, col)] + &c * &p[(b, col)];
                p[(a, col)] = t;
            }
        }
        p
    }

    #[test]
    fn weight_filtration_examples() {
        let zero = Matrix::<Rational>::zeros(3, 3);
        let w = weight_filtration(&zero, 5).unwrap();
        assert_eq!(w.jumps(), BTreeMap::from([(5, 3)]));

        let w = weight_filtration(&jordan(&[3]), 0).unwrap();
        assert_eq!(w.jumps(), BTreeMap::from([(-2, 1), (0, 1), (2, 1)]));

        let w = weight_filtration(&jordan(&[2, 1]), 0).unwrap();
        assert_eq!(w.jumps(), BTreeMap::from([(-1, 1), (0, 1), (1, 1)]));

        let not_nilpotent = Matrix::<Rational>::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            weight_filtration(&not_nilpotent, 0),
            Err(Error::NotNilpotent)
        );
    }

    #[test]
    fn nilpotent_indices() {
        assert_eq!(nilpotent_index(&Matrix::<Rational>::zeros(4, 4)), Ok(1));
        assert_eq!(nilpotent_index(&jordan(&[3])), Ok(3));
        assert_eq!(nilpotent_index(&jordan(&[2, 4, 1])), Ok(4));
        assert_eq!(
            nilpotent_index(&Matrix::<Rational>::identity(2)),
            Err(Error::NotNilpotent)
        );
    }

    #[test]
    fn weight_filtration_matches_jordan_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x3eed);
        for _ in 0..200 {
            let dim = rng.gen_range(1..=8);
            let mut sizes = Vec::new();
            let mut left = dim;
            while left > 0 {
                let s = rng.gen_range(1..=left.min(4));
                sizes.push(s);
                left -= s;
            }
            let p = random_unimodular(dim, &mut rng);
            let pinv = p.inverse().unwrap();
            let n = &(&p * &jordan(&sizes)) * &pinv;
            let center = rng.gen_range(-3..=3);
            let w = weight_filtration(&n, center).unwrap();
            let weights = jordan_weights(&sizes);
            for j in -5..=5 {
                let expected = Subspace::span(
                    dim,
                    (0..dim)
                        .filter(|&t| weights[t] <= j)
                        .map(|t| p.column(t))
                        .collect(),
                );
                assert_eq!(w.get(center + j), expected, "sizes {sizes:?}, j {j}");
            }
            assert!(weight_axioms(&n, &w, center).passed());
        }
    }

    #[test]
    fn weight_axioms_reject_a_wrong_filtration() {
        let n = jordan(&[3]);
        let w = weight_filtration(&n, 0).unwrap();
        assert!(!weight_axioms(&n, &w, 1).passed());
        let wrong = Filtration::from_fn(3, 0, 0, |_| Subspace::full(3));
        assert!(!weight_axioms(&n, &wrong, 0).passed());
    }

    #[test]
    fn sl2_completion() {
        let n = jordan(&[3, 2]);
        let (h, f) = jacobson_morozov(&n).unwrap();
        assert_eq!(h.commutator(&n), n.scale(&r(2)));
        assert_eq!(h.commutator(&f), f.scale(&r(-2)));
        assert_eq!(n.commutator(&f), h);
    }

    #[test]
    fn perverse_filtration_basics() {
        let m = model(2);
        let beta = triple().beta;
        assert_eq!(
            perverse_filtration(&m.ring, &m.form, &ints(&[0; 5]), 2),
            Err(Error::NotIsotropic)
        );
        assert_eq!(
            perverse_filtration(&m.ring, &m.form, &ints(&[1, 0, 0, 0, 0]), 2),
            Err(Error::NotIsotropic)
        );
        for k in (0..=8).step_by(2) {
            let p = perverse_filtration(&m.ring, &m.form, &beta, k).unwrap();
            assert!(p.is_increasing() && p.is_exhaustive());
            assert_eq!(p.ambient(), m.ring.dim_of(k));
        }
        let p0 = perverse_filtration(&m.ring, &m.form, &beta, 0).unwrap();
        assert_eq!(p0.jumps().len(), 1);
    }

    #[test]
    fn perverse_dims_do_not_depend_on_the_isotropic_class() {
        let m = model(2);
        let isotropic: Vec<Vec<Rational>> = IntVectors::new(5, 21)
            .map(|v| ints(&v))
            .filter(|v| v.iter().any(|x| !x.is_zero()) && m.form.bilinear(v, v).is_zero())
            .take(10)
            .collect();
        assert_eq!(isotropic.len(), 10);
        for k in (0..=8).step_by(2) {
            let reference = perverse_filtration(&m.ring, &m.form, &isotropic[0], k)
                .unwrap()
                .jumps();
            for mu in &isotropic[1..] {
                assert_eq!(
                    perverse_filtration(&m.ring, &m.form, mu, k)
                        .unwrap()
                        .jumps(),
                    reference
                );
            }
        }
    }

    #[test]
    fn perverse_filtration_of_sigma_bar_is_hodge() {
        for n in [1, 2] {
            let m = model(n);
            let check = perverse_hodge_check(&m.bigraded).unwrap();
            assert!(check.report.passed(), "{:?}", check.report);
            assert_eq!(check.offset, Some(n as i64));
        }
        // graded pieces in the middle degree are the Hodge numbers
        let m = model(2);
        let l = cup_operator(m.bigraded.ring(), m.bigraded.sigma_bar()).unwrap();
        let p = perverse_filtration_of(m.bigraded.ring(), &l, 4).unwrap();
        let hodge = m.bigraded.hodge_numbers();
        for (mm, d) in p.jumps() {
            let pp = (mm + 2) as usize;
            assert_eq!(Some(&d), hodge.get(&(pp, 4 - pp)));
        }
    }

    #[test]
    fn lagrangian_monodromy_on_model() {
        let m = model(2);
        let n = lagrangian_monodromy(&m.ring, &m.form, &triple()).unwrap();
        assert_eq!(n.shift, 0);
        assert!(DegreeOperator::new(&m.ring, 0, n.matrix.clone()).is_ok());
        assert_eq!(nilpotent_index(&n.block(&m.ring, 2)), Ok(3));
        assert_eq!(nilpotent_index(&n.matrix), Ok(5));
        assert!(n
            .matrix
            .commutator(&weight_operator(&m.ring).matrix)
            .is_zero());
        assert!(llv_algebra(&m.ring)
            .unwrap()
            .algebra
            .contains_dense(&n.matrix));

        let mut bad = triple();
        bad.beta = ints(&[1, 0, 0, 0, 0]);
        assert_eq!(
            lagrangian_monodromy(&m.ring, &m.form, &bad).unwrap_err(),
            Error::NotIsotropic
        );
        let mut bad = triple();
        bad.rho = ints(&[0, 0, 0, 1, 0]);
        assert!(matches!(
            lagrangian_monodromy(&m.ring, &m.form, &bad),
            Err(Error::InvalidTriple(_))
        ));
        let mut bad = triple();
        bad.rho = ints(&[1, 0, 1, 0, 0]);
        assert!(matches!(
            lagrangian_monodromy(&m.ring, &m.form, &bad),
            Err(Error::InvalidTriple(_))
        ));
    }

    #[test]
    fn default_triple() {
        let q = Matrix::diagonal(&ints(&[1, 1, 1, -1, -1]));
        assert_eq!(diagonal_lagrangian_triple(&q).unwrap(), triple());
        let q = Matrix::diagonal(&ints(&[1, 4, 2, -1, -1]));
        let t = diagonal_lagrangian_triple(&q).unwrap();
        assert!(t.validate(&q).is_ok());
        assert_eq!(t.eta, ints(&[0, 1, 0, 0, 2]));
        assert!(diagonal_lagrangian_triple(&Matrix::diagonal(&ints(&[1, 1, -1, -1]))).is_err());
        assert!(diagonal_lagrangian_triple(&Matrix::diagonal(&ints(&[1, 1, 1, -2, -2]))).is_err());
    }

    #[test]
    fn nilpotent_orbits() {
        let q =
            Matrix::diagonal(&ints(&[1, 1, 1, -1, -1])).map(|x| Gaussian::from_rational(x.clone()));
        let zero = Matrix::<Gaussian>::zeros(5, 5);
        let x: Vec<Gaussian> = (0..5)
            .map(|i| Gaussian::new(r((i == 0) as i64), r((i == 1) as i64)))
            .collect();
        assert_eq!(nilpotent_orbit_check(&zero, &x, &q), Ok(false));

        let m = model(2);
        let n = lagrangian_monodromy(&m.ring, &m.form, &triple()).unwrap();
        let n2 = n
            .block(&m.ring, 2)
            .map(|v| Gaussian::from_rational(v.clone()));
        let verdict = nilpotent_orbit_check(&n2, &x, &q).unwrap();
        let scaled: Vec<Gaussian> = x.iter().map(|c| c * Gaussian::new(r(2), r(-3))).collect();
        assert_eq!(nilpotent_orbit_check(&n2, &scaled, &q).unwrap(), verdict);
        // regression value for x = e1 + i e2
        let nx = n2.mul_vec(&x);
        let bar: Vec<Gaussian> = nx.iter().map(|c| c.conj()).collect();
        assert_eq!(q.bilinear(&nx, &bar), Gaussian::from_rational(r(4)));
        assert!(verdict);
    }

    #[test]
    fn pw_comparison() {
        let n = jordan(&[3]);
        let w = weight_filtration(&n, 0).unwrap();
        let p = Filtration::from_fn(3, -1, 1, |m| w.get(2 * m));
        assert!(pw_compare(&p, &w, 0).0);
        assert!(pw_compare(&p, &p.stretch(2), 0).0);
        assert!(!pw_compare(&p, &w, 2).0);
        assert_eq!(find_pw_shift(&p, &w, -4..=4), Some(0));
        let other = Filtration::from_fn(3, 0, 0, |_| Subspace::full(3));
        let (ok, table) = pw_compare(&other, &w, 0);
        assert!(!ok);
        assert!(table.rows.iter().any(|&(_, a, b)| a != b));
        let _ = unit_vector::<Rational>(1, 0);
    }

    #[test]
    fn weak_pw_on_models() {
        for n in [1, 2] {
            let m = model(n);
            let rep = weak_pw(&m.ring, &m.form, &triple()).unwrap();
            assert!(rep.report.passed(), "{:?}", rep.report);
            assert_eq!(rep.uniform_shift, Some(2 * n as i64));
            assert_eq!(rep.index_degree_two, 3);
        }
    }
}
