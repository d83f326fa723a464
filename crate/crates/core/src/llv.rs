//! The total Lie algebra of Lefschetz operators and its structure checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lefschetz::{
    complete_sl2, complete_sl2_of_class, cup_operator, hl_test, sigma_bar_triple, sigma_triple,
    symplectic_hl_check, Sl2Triple,
};
use crate::lie::{lie_closure, MatrixLieAlgebra, SparseMatrix};
use crate::linalg::{add_vec, scale_vec, sub_vec, Matrix, Subspace};
use crate::report::CheckReport;
use crate::ring::{predicted_dim, BigradedAlgebra, GradedAlgebra};
use crate::sample::IntVectors;
use crate::scalar::Scalar;

/// Degree-2 HL classes spanning degree 2: each basis vector, or the basis
/// vector shifted by a multiple of a fixed HL class when it is not HL itself.
pub fn hl_spanning_classes<T: Scalar>(r: &GradedAlgebra<T>) -> Result<Vec<Vec<T>>> {
    let b = r.dim_of(2);
    let is_hl = |v: &[T]| hl_test(r, &r.embed(2, v));
    let to_t = |v: Vec<i64>| v.into_iter().map(T::from_int).collect::<Vec<T>>();
    // dense anchors make every Λ dense, so wider sparse candidates come before dense ones
    let anchor = IntVectors::new(b, 0)
        .take(4 * b)
        .chain(wide_sparse(b))
        .chain(IntVectors::dense(b, 0).take(256))
        .map(to_t)
        .find(|v| is_hl(v))
        .ok_or(Error::NotHardLefschetz)?;
    let mut classes = Vec::with_capacity(b + 1);
    let mut shifted = false;
    for i in 0..b {
        let e = crate::linalg::unit_vector::<T>(b, i);
        if is_hl(&e) {
            classes.push(e);
            continue;
        }
        let c = [1, -1, 2, -2]
            .into_iter()
            .map(|c| add_vec(&e, &scale_vec(&anchor, &T::from_int(c))))
            .find(|v| is_hl(v))
            .ok_or(Error::NotHardLefschetz)?;
        classes.push(c);
        shifted = true;
    }
    if shifted {
        classes.push(anchor);
    }
    Ok(classes)
}

/// Random 0/1 vectors with 4 to 8 nonzero entries.
fn wide_sparse(b: usize) -> impl Iterator<Item = Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    (4..=8.min(b)).flat_map(move |k| {
        (0..64)
            .map(|_| {
                let mut v = vec![0; b];
                for i in rand::seq::index::sample(&mut rng, b, k) {
                    v[i] = 1;
                }
                v
            })
            .collect::<Vec<_>>()
    })
}

/// The closure of `L_a`, `Λ_a` over [`hl_spanning_classes`].
#[derive(Clone, Debug)]
pub struct Llv<T: Scalar> {
    pub algebra: MatrixLieAlgebra<T>,
    pub classes: Vec<Vec<T>>,
    pub triples: Vec<Sl2Triple<T>>,
}

pub fn llv_algebra<T: Scalar>(r: &GradedAlgebra<T>) -> Result<Llv<T>> {
    let classes = hl_spanning_classes(r)?;
    let triples = classes
        .iter()
        .map(|a| complete_sl2_of_class(r, a))
        .collect::<Result<Vec<_>>>()?;
    let gens: Vec<Matrix<T>> = triples
        .iter()
        .flat_map(|t| [t.l.matrix.clone(), t.lam.matrix.clone()])
        .collect();
    Ok(Llv {
        algebra: lie_closure(&gens)?,
        classes,
        triples,
    })
}

/// `[Λ_a, Λ_b] = 0` for HL classes `a`, `b` (degree-2 coordinates).
pub fn dual_lefschetz_commute<T: Scalar>(r: &GradedAlgebra<T>, a: &[T], b: &[T]) -> Result<bool> {
    let ta = complete_sl2_of_class(r, a)?;
    let tb = complete_sl2_of_class(r, b)?;
    Ok(ta.lam.matrix.commutator(&tb.lam.matrix).is_zero())
}

/// `[L_γ, Λ_γ']` for `γ = σ + σ̄`, `γ' = -i(σ - σ̄)`, asserted equal to
/// `i(H_σ - H_σ̄)`, which acts on type `(p, q)` as `i(p - q)`.
pub fn weil_operator<T: Scalar>(b: &BigradedAlgebra<T>) -> Result<Matrix<T>> {
    let i = T::imaginary_unit().ok_or(Error::NeedsGaussian)?;
    let hl = symplectic_hl_check(b);
    if !hl.passed() {
        return Err(Error::Structural(format!(
            "symplectic Hard Lefschetz fails: {}",
            hl.failures.join("; ")
        )));
    }
    let r = b.ring();
    let gamma = add_vec(b.sigma(), b.sigma_bar());
    let gamma_prime = scale_vec(&sub_vec(b.sigma(), b.sigma_bar()), &-i.clone());
    let l = cup_operator(r, &gamma)?;
    let t = complete_sl2(r, &gamma_prime)?;
    let w = l.matrix.commutator(&t.lam.matrix);
    let expected = Matrix::diagonal(
        &b.bidegrees()
            .iter()
            .map(|&(p, q)| i.mul_ref(&T::from_int(p as i64 - q as i64)))
            .collect::<Vec<_>>(),
    );
    if w != expected {
        return Err(Error::Structural("[L_γ, Λ_γ'] ≠ i(H_σ - H_σ̄)".into()));
    }
    Ok(w)
}

/// Whether `d(xy) = d(x)y + x d(y)` on all basis pairs.
pub fn derivation_check<T: Scalar>(d: &Matrix<T>, r: &GradedAlgebra<T>) -> bool {
    let n = r.dim();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    let images: Vec<Vec<T>> = (0..n).map(|i| d.column(i)).collect();
    for i in 0..n {
        for j in i..n {
            let (x, y) = (r.basis_vector(i), r.basis_vector(j));
            let lhs = d.mul_vec(&r.multiply(&x, &y));
            let rhs = add_vec(&r.multiply(&images[i], &y), &r.multiply(&x, &images[j]));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Whether `d` is an infinitesimal isometry of `form` on degree 2:
/// `form(dx, y) + form(x, dy) = 0`.
pub fn preserves_form<T: Scalar>(d: &Matrix<T>, r: &GradedAlgebra<T>, form: &Matrix<T>) -> bool {
    let range = r.degree_range(2);
    let block = d.submatrix(range.clone(), range);
    let lhs = &block.transpose() * form;
    (&lhs + &(form * &block)).is_zero()
}

fn check_w<T: Scalar>(form: &Matrix<T>, w: &[Vec<T>]) -> Result<Vec<T>> {
    if w.len() != 3 {
        return Err(Error::Structural(format!(
            "expected three classes, got {}",
            w.len()
        )));
    }
    let mut norms = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            if !form.bilinear(&w[i], &w[j]).is_zero() {
                return Err(Error::Structural(format!(
                    "classes {i} and {j} are not orthogonal"
                )));
            }
        }
        let q = form.bilinear(&w[i], &w[i]);
        if q.real_sign() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::Structural(format!("class {i} is not positive")));
        }
        norms.push(q);
    }
    Ok(norms)
}

/// The first `count` positive directions of a congruence diagonalization of `form`.
pub fn positive_orthogonal_classes<T: Scalar>(
    form: &Matrix<T>,
    count: usize,
) -> Result<Vec<Vec<T>>> {
    let d = crate::linalg::diagonalize_symmetric(form)?;
    let out: Vec<Vec<T>> = (0..form.rows())
        .filter(|&i| d.diagonal[i].real_sign() == Some(std::cmp::Ordering::Greater))
        .take(count)
        .map(|i| d.basis.column(i))
        .collect();
    if out.len() < count {
        return Err(Error::Inadmissible(format!(
            "form has fewer than {count} positive directions"
        )));
    }
    Ok(out)
}

/// The algebra generated by the three sl2's of a positive orthogonal triple,
/// with the commutator relations between `L_i`, `Λ_i`, `H` and
/// `K_ij = [L_i, Λ_j]`.
///
/// For classes of unequal norms `q_i` the relations hold in the weighted form
/// `q_j K_ij = -q_i K_ji` and `q_j [K_ij, Λ_j] = 2 q_i Λ_i`.
pub fn so41_subalgebra<T: Scalar>(
    r: &GradedAlgebra<T>,
    form: &Matrix<T>,
    w: &[Vec<T>],
) -> Result<(MatrixLieAlgebra<T>, CheckReport)> {
    let q = check_w(form, w)?;
    let t = w
        .iter()
        .map(|a| complete_sl2_of_class(r, a))
        .collect::<Result<Vec<_>>>()?;
    let l: Vec<&Matrix<T>> = t.iter().map(|x| &x.l.matrix).collect();
    let lam: Vec<&Matrix<T>> = t.iter().map(|x| &x.lam.matrix).collect();
    let h = &t[0].h.matrix;
    let gens: Vec<Matrix<T>> = l.iter().chain(&lam).map(|m| (*m).clone()).collect();
    let algebra = lie_closure(&gens)?;

    let two = T::from_int(2);
    let k = |i: usize, j: usize| l[i].commutator(lam[j]);
    let mut report = CheckReport::new();
    report.require(algebra.dim() == 10, || {
        format!("dimension {} ≠ 10", algebra.dim())
    });
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let kij = k(i, j);
            let kind = |s: &str| format!("{s} fails for (i, j) = ({}, {})", i + 1, j + 1);
            report.require(lam[i].commutator(lam[j]).is_zero(), || {
                kind("[Λ_i, Λ_j] = 0")
            });
            report.require(kij.scale(&q[j]) == k(j, i).scale(&-q[i].clone()), || {
                kind("K_ij = -K_ji")
            });
            report.require(kij.commutator(h).is_zero(), || kind("[K_ij, H] = 0"));
            report.require(kij.commutator(l[j]) == l[i].scale(&two), || {
                kind("[K_ij, L_j] = 2L_i")
            });
            report.require(
                kij.commutator(lam[j]).scale(&q[j]) == lam[i].scale(&two.mul_ref(&q[i])),
                || kind("[K_ij, Λ_j] = 2Λ_i"),
            );
            let m = 3 - i - j;
            report.require(kij.commutator(&k(j, m)) == k(i, m).scale(&two), || {
                kind("[K_ij, K_jk] = 2K_ik")
            });
            report.require(kij.commutator(l[m]).is_zero(), || kind("[K_ij, L_k] = 0"));
            report.require(kij.commutator(lam[m]).is_zero(), || kind("[K_ij, Λ_k] = 0"));
        }
    }
    Ok((algebra, report))
}

/// The algebra spanned by `L_σ, L_σ̄, Λ_σ, Λ_σ̄, H_σ, H_σ̄`: six independent
/// operators, closed under the bracket, forming two commuting sl2's.
pub fn so4_symplectic<T: Scalar>(
    b: &BigradedAlgebra<T>,
) -> Result<(MatrixLieAlgebra<T>, CheckReport)> {
    let s = sigma_triple(b)?;
    let sb = sigma_bar_triple(b)?;
    let six: Vec<Matrix<T>> = [&s.l, &sb.l, &s.lam, &sb.lam, &s.h, &sb.h]
        .iter()
        .map(|o| o.matrix.clone())
        .collect();
    let sparse: Vec<SparseMatrix<T>> = six.iter().map(SparseMatrix::from_dense).collect();
    let span = MatrixLieAlgebra::span_of(b.ring().dim(), &sparse);
    let closure = lie_closure(&six)?;
    let mut report = CheckReport::new();
    report.require(span.dim() == 6, || {
        format!("the six operators span only {} dimensions", span.dim())
    });
    report.require(closure.dim() == span.dim(), || {
        format!("closure has dimension {} > {}", closure.dim(), span.dim())
    });
    for (x, nx) in [(&s.l, "L_σ"), (&s.lam, "Λ_σ"), (&s.h, "H_σ")] {
        for (y, ny) in [(&sb.l, "L_σ̄"), (&sb.lam, "Λ_σ̄"), (&sb.h, "H_σ̄")] {
            report.require(x.matrix.commutator(&y.matrix).is_zero(), || {
                format!("[{nx}, {ny}] ≠ 0")
            });
        }
    }
    let weil = &s.h.matrix - &sb.h.matrix;
    report.require(span.contains_dense(&weil), || {
        "H_σ - H_σ̄ is not in the span".into()
    });
    Ok((closure, report))
}

/// The subalgebra generated by degree 2 and its Λ-stability.
#[derive(Clone, Debug)]
pub struct VerbitskyComponent<T> {
    /// One subspace per even degree `0, 2, ..., top`.
    pub pieces: Vec<Subspace<T>>,
    pub dims: Vec<usize>,
    /// `dim Sym^k` for `k <= n` and `dim Sym^{2n-k}` for `k > n`.
    pub expected: Vec<usize>,
    pub report: CheckReport,
}

/// Computes the degree-2-generated subalgebra, compares its graded dimensions
/// with the Sym prediction and checks that every `Λ_a` preserves it, using
/// `Λ_a(x y) = L_x Λ_a(y) - [L_x, Λ_a](y)` for `x` of degree 2.
pub fn verbitsky_component<T: Scalar>(r: &GradedAlgebra<T>) -> Result<VerbitskyComponent<T>> {
    let top = r.top_degree();
    if top % 4 != 0 {
        return Err(Error::Inconsistent(format!(
            "top degree {top} is not a multiple of 4"
        )));
    }
    let n = top / 4;
    let b2 = r.dim_of(2);
    let pieces = r.degree_two_generated();
    let dims: Vec<usize> = pieces.iter().map(Subspace::dim).collect();
    let expected: Vec<usize> = (0..pieces.len()).map(|k| predicted_dim(b2, n, k)).collect();
    let mut report = CheckReport::new();
    report.require(dims == expected, || {
        format!("graded dimensions {dims:?} ≠ {expected:?}")
    });

    let embedded: Vec<Vec<Vec<T>>> = pieces
        .iter()
        .enumerate()
        .map(|(k, p)| p.basis().iter().map(|v| r.embed(2 * k, v)).collect())
        .collect();
    let gens: Vec<Vec<T>> = r.degree_range(2).map(|i| r.basis_vector(i)).collect();
    for a in hl_spanning_classes(r)? {
        let t = complete_sl2_of_class(r, &a)?;
        let lam = &t.lam.matrix;
        for k in 1..pieces.len() {
            for y in &embedded[k] {
                let image = lam.mul_vec(y);
                let inside = pieces[k - 1].contains(&r.component(&image, 2 * k - 2));
                report.require(inside, || {
                    format!("Λ_a leaves the component in degree {}", 2 * k)
                });
            }
        }
        for x in &gens {
            let lx = r.left_multiplication(x);
            let kx = lx.commutator(lam);
            for k in 0..pieces.len().saturating_sub(1) {
                for y in &embedded[k] {
                    let lhs = lam.mul_vec(&r.multiply(x, y));
                    let rhs = sub_vec(&lx.mul_vec(&lam.mul_vec(y)), &kx.mul_vec(y));
                    report.require(lhs == rhs, || {
                        format!("Λ-identity fails in degree {}", 2 * k + 2)
                    });
                }
            }
        }
    }
    Ok(VerbitskyComponent {
        pieces,
        dims,
        expected,
        report,
    })
}
