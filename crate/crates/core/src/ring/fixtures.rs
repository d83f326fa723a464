use crate::error::{Error, Result};
use crate::linalg::{symmetric_signature, Matrix};
use crate::ring::bigraded::BigradedAlgebra;
use crate::ring::graded::{GradedAlgebra, StructureConstant};
use crate::scalar::{Rational, Scalar};

/// `diag(1, 1, 1, -1, ..., -1)` of size 22, a rational form of signature (3, 19).
pub fn k3_gram() -> Matrix<Rational> {
    let d: Vec<Rational> = (0..22)
        .map(|i| Rational::from_integer(if i < 3 { 1 } else { -1 }.into()))
        .collect();
    Matrix::diagonal(&d)
}

/// The ring `Q ⊕ H ⊕ Q` with `a·b = gram(a, b)·[top]` and `∫[top] = 1`.
pub fn k3_ring<T: Scalar>(gram: &Matrix<T>) -> Result<GradedAlgebra<T>> {
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let b = gram.rows();
    let top = b + 1;
    let mut constants = Vec::new();
    let one = |i, j, k| StructureConstant {
        i,
        j,
        k,
        coeff: T::one(),
    };
    for i in 0..=top {
        constants.push(one(0, i, i));
        if i != 0 {
            constants.push(one(i, 0, i));
        }
    }
    for i in 0..b {
        for j in 0..b {
            constants.push(StructureConstant {
                i: i + 1,
                j: j + 1,
                k: top,
                coeff: gram[(i, j)].clone(),
            });
        }
    }
    let mut labels = vec!["1".to_string()];
    labels.extend((1..=b).map(|k| format!("e{k}")));
    labels.push("pt".into());
    let ring = GradedAlgebra::new(&[1, 0, b, 0, 1], labels, constants, vec![T::one()])?;
    ring.validate().into_result()?;
    Ok(ring)
}

/// Checks the K3 lattice convention: nondegenerate of signature (3, 19).
pub fn is_k3_signature(gram: &Matrix<Rational>) -> bool {
    symmetric_signature(gram).is_ok_and(|s| s.pos == 3 && s.neg == 19 && s.null == 0)
}

/// Exterior algebra on `names.len()` generators of degree 1, basis by subsets.
fn exterior<T: Scalar>(names: &[String]) -> (GradedAlgebra<T>, Vec<Vec<usize>>) {
    let m = names.len();
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << m)
        .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b: &Vec<usize>| a.len().cmp(&b.len()).then(a.cmp(b)));
    let index = |s: &[usize]| subsets.iter().position(|t| t == s).unwrap();
    let dims: Vec<usize> = (0..=m)
        .map(|k| subsets.iter().filter(|s| s.len() == k).count())
        .collect();
    let mut constants = Vec::new();
    for (i, a) in subsets.iter().enumerate() {
        for (j, b) in subsets.iter().enumerate() {
            if a.iter().any(|x| b.contains(x)) {
                continue;
            }
            let inversions = a
                .iter()
                .map(|x| b.iter().filter(|y| *y < x).count())
                .sum::<usize>();
            let mut merged: Vec<usize> = a.iter().chain(b).copied().collect();
            merged.sort();
            let coeff = if inversions % 2 == 0 {
                T::one()
            } else {
                -T::one()
            };
            constants.push(StructureConstant {
                i,
                j,
                k: index(&merged),
                coeff,
            });
        }
    }
    let labels = subsets
        .iter()
        .map(|s| {
            if s.is_empty() {
                "1".to_string()
            } else {
                s.iter()
                    .map(|&k| names[k].as_str())
                    .collect::<Vec<_>>()
                    .join("^")
            }
        })
        .collect();
    let ring = GradedAlgebra::new(&dims, labels, constants, vec![T::one()])
        .expect("exterior algebra is well formed");
    (ring, subsets)
}

/// Cohomology of a complex torus of dimension `g`: the exterior algebra on `2g` generators.
pub fn torus_ring<T: Scalar>(g: usize) -> Result<GradedAlgebra<T>> {
    if g == 0 {
        return Err(Error::Dimension("torus dimension must be positive".into()));
    }
    if 2 * g > 10 {
        return Err(Error::TooLarge(format!("torus of dimension {g}")));
    }
    let names: Vec<String> = (1..=2 * g).map(|k| format!("a{k}")).collect();
    Ok(exterior(&names).0)
}

/// The torus ring with `x_k` of type (1,0), `y_k` of type (0,1) and
/// `σ = x1x2 + x3x4 + ...`; `g` must be even.
pub fn bigraded_torus<T: Scalar>(g: usize) -> Result<BigradedAlgebra<T>> {
    if g == 0 || g % 2 == 1 {
        return Err(Error::Dimension(
            "a symplectic torus needs even positive dimension".into(),
        ));
    }
    if 2 * g > 10 {
        return Err(Error::TooLarge(format!("torus of dimension {g}")));
    }
    let mut names: Vec<String> = (1..=g).map(|k| format!("x{k}")).collect();
    names.extend((1..=g).map(|k| format!("y{k}")));
    let (ring, subsets) = exterior::<T>(&names);
    let bidegrees = subsets
        .iter()
        .map(|s| {
            let p = s.iter().filter(|&&k| k < g).count();
            (p, s.len() - p)
        })
        .collect();
    let pair_sum = |offset: usize| {
        let mut v = ring.zero();
        for k in (0..g).step_by(2) {
            let i = subsets
                .iter()
                .position(|s| *s == [offset + k, offset + k + 1])
                .unwrap();
            v[i] = T::one();
        }
        v
    };
    let sigma = pair_sum(0);
    let sigma_bar = pair_sum(g);
    BigradedAlgebra::new(ring, bidegrees, sigma, sigma_bar)?.normalized()
}
