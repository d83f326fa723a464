use crate::error::{Error, Result};
use crate::linalg::matrix::{rref_rows, Matrix};
use crate::scalar::Scalar;

/// A linear subspace of `T^n`, stored as a reduced row echelon basis.
///
/// The representation is canonical, so structural equality is equality of
/// subspaces.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                (0..ambient)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<T>>) -> Self {
        let mut rows = vectors;
        assert!(
            rows.iter().all(|v| v.len() == ambient),
            "vector length differs from ambient dimension"
        );
        let pivots = rref_rows(&mut rows, ambient);
        Subspace {
            ambient,
            basis: rows,
            pivots,
        }
    }

    /// Kernel read off from an already reduced system.
    pub(crate) fn from_rref_kernel(ambient: usize, rows: &[Vec<T>], pivots: &[usize]) -> Self {
        let mut is_pivot = vec![false; ambient];
        for &p in pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..ambient).filter(|&c| !is_pivot[c]) {
            let mut v = vec![T::zero(); ambient];
            v[free] = T::one();
            for (row, &p) in rows.iter().zip(pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            vectors.push(v);
        }
        Self::span(ambient, vectors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix<T> {
        if self.basis.is_empty() {
            return Matrix::zeros(0, self.ambient);
        }
        Matrix::from_rows(self.basis.clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "subspaces of ambient dimension {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Coordinates in the echelon basis, or `None` when `v` is not in the subspace.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r = r.sub_ref(&c.mul_ref(x));
                }
            }
        }
        residual.iter().all(T::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// `{x : <u, x> = 0 for all u}` under the bilinear (not hermitian) dot product.
    pub fn annihilator(&self) -> Self {
        Subspace::from_rref_kernel(self.ambient, &self.basis, &self.pivots)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Self::span(self.ambient, vectors))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Image of the subspace under `m`.
    pub fn image_under(&self, m: &Matrix<T>) -> Self {
        assert_eq!(m.cols(), self.ambient);
        Self::span(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};
    use proptest::prelude::*;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|j| int((i == j) as i64)).collect()
    }

    #[test]
    fn coordinate_axes() {
        let a = Subspace::span(2, vec![e(2, 0)]);
        let b = Subspace::span(2, vec![e(2, 1)]);
        assert!(a.intersection(&b).unwrap().is_zero());
        assert!(a.sum(&b).unwrap().is_full());
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::<Rational>::full(2);
        let b = Subspace::<Rational>::full(3);
        assert!(matches!(a.intersection(&b), Err(Error::Dimension(_))));
        assert!(matches!(a.sum(&b), Err(Error::Dimension(_))));
    }

    #[test]
    fn representation_independent() {
        let a = Subspace::span(
            3,
            vec![vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]],
        );
        let b = Subspace::span(
            3,
            vec![vec![int(1), int(2), int(1)], vec![int(2), int(1), int(-1)]],
        );
        assert_eq!(a, b);
    }

    /// Brute-force intersection: solve `sum x_i a_i = sum y_j b_j` directly.
    fn brute_intersection(
        a: &[Vec<Rational>],
        b: &[Vec<Rational>],
        n: usize,
    ) -> Subspace<Rational> {
        let cols: Vec<Vec<Rational>> = a
            .iter()
            .cloned()
            .chain(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()))
            .collect();
        let m = Matrix::from_columns(n, &cols);
        let ker = m.kernel();
        let vecs = ker
            .basis()
            .iter()
            .map(|k| {
                let mut v = vec![int(0); n];
                for (c, av) in k.iter().zip(a) {
                    for (x, y) in v.iter_mut().zip(av) {
                        *x += c * y;
                    }
                }
                v
            })
            .collect();
        Subspace::span(n, vecs)
    }

    fn small_vectors(count: usize, n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        proptest::collection::vec(
            proptest::collection::vec((-3i64..=3).prop_map(int), n),
            count,
        )
    }

    proptest! {
        #[test]
        fn modular_law(a in small_vectors(3, 4), b in small_vectors(2, 4)) {
            let sa = Subspace::span(4, a.clone());
            let sb = Subspace::span(4, b.clone());
            let cap = sa.intersection(&sb).unwrap();
            let cup = sa.sum(&sb).unwrap();
            prop_assert_eq!(cap.dim() + cup.dim(), sa.dim() + sb.dim());
            prop_assert_eq!(&cap, &brute_intersection(&a, &b, 4));
            prop_assert!(cap.is_subspace_of(&sa) && cap.is_subspace_of(&sb));
        }

        #[test]
        fn rank_nullity(rows in small_vectors(3, 5)) {
            let m = Matrix::from_rows(rows);
            prop_assert_eq!(m.kernel().dim() + m.rank(), 5);
        }
    }
}
