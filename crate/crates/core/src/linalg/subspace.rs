//! Subspaces of `F^N` in canonical reduced row echelon form.
//!
//! Because the stored basis is the RREF of any spanning set, two subspaces
//! are equal exactly when their representations are equal, so the derived
//! `PartialEq` is subspace equality.



use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::matrix::{eliminate, kernel_from_rref};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Span of the given vectors. Panics if a vector has the wrong length.
    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let mut rows: Vec<Vec<F>> = vectors.into_iter().filter(|v| v.iter().any(|c| !c.is_zero())).collect();
        for v in &rows {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
        }
        let pivots = eliminate(&mut rows, ambient, ambient, true);
        rows.truncate(pivots.len());
        Subspace { ambient, basis: rows, pivots }
    }

    pub fn try_span(ambient: usize, vectors: Vec<Vec<F>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
        }
        Ok(Self::span(ambient, vectors))
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(
            ambient,
            (0..ambient)
                .map(|i| (0..ambient).map(|j| if i == j { F::one() } else { F::zero() }).collect())
                .collect(),
        )
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

    /// The canonical (RREF) basis.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots; they index a basis of the quotient `F^N / S`.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&j| !is_pivot[j]).collect()
    }

    pub fn as_matrix(&self) -> Matrix<F> {
        if self.basis.is_empty() {
            return Matrix::zeros(0, self.ambient);
        }
        Matrix::from_rows(self.basis.clone()).expect("basis rows have equal length")
    }

    /// Canonical representative of `v` modulo the subspace: it vanishes at every pivot.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = o.clone() - c.clone() * r.clone();
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Coordinates of `v` on the canonical basis, if `v` lies in the subspace.
    /// They are the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coordinates on the canonical basis.
    pub fn combine(&self, coords: &[F]) -> Vec<F> {
        assert_eq!(coords.len(), self.dim(), "coordinate vector has wrong length");
        let mut out = vec![F::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = o.clone() + c.clone() * r.clone();
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::span(self.ambient, self.basis.iter().chain(&other.basis).cloned().collect()))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        // Relations Σ a_j s_j - Σ b_j t_j = 0 are the kernel of the matrix whose
        // columns are the two bases.
        let s = self.dim();
        let cols = s + other.dim();
        let mut rows: Vec<Vec<F>> = (0..self.ambient)
            .map(|k| self.basis.iter().chain(&other.basis).map(|v| v[k].clone()).collect())
            .collect();
        rows.retain(|r: &Vec<F>| r.iter().any(|c| !c.is_zero()));
        let pivots = eliminate(&mut rows, cols, cols, true);
        let relations = kernel_from_rref(&rows, &pivots, cols);
        let vectors = relations.into_iter().map(|rel| self.combine(&rel[..s])).collect();
        Ok(Self::span(self.ambient, vectors))
    }

    /// `{φ ∈ (F^N)^* : φ(S) = 0}` written in the dual coordinates.
    pub fn annihilator(&self) -> Self {
        Self::span(self.ambient, kernel_from_rref(&self.basis, &self.pivots, self.ambient))
    }

    /// Image under the linear map `v ↦ v·M`.
    pub fn image(&self, m: &Matrix<F>) -> Result<Self> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: m.rows() });
        }
        Ok(Self::span(m.cols(), self.basis.iter().map(|v| m.apply_row(v)).collect()))
    }

    /// `F^left ⊗ S ⊗ F^right` inside `F^(left·N·right)`, big-endian flattening.
    pub fn embed(&self, left: usize, right: usize) -> Self {
        let n = self.ambient;
        let ambient = left * n * right;
        let mut vectors = Vec::with_capacity(left * self.dim() * right);
        for a in 0..left {
            for v in &self.basis {
                for b in 0..right {
                    let mut w = vec![F::zero(); ambient];
                    for (k, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            w[(a * n + k) * right + b] = c.clone();
                        }
                    }
                    vectors.push(w);
                }
            }
        }
        Self::span(ambient, vectors)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;
    use proptest::prelude::*;

    type S = Subspace<Rational>;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| Rational::from_int(v)).collect()).collect()
    }

    #[test]
    fn span_is_canonical() {
        let a = S::span(3, vecs(&[&[1, 1, 0], &[0, 1, 1]]));
        let b = S::span(3, vecs(&[&[1, 2, 1], &[1, 0, -1]]));
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn intersection_of_planes_is_a_line() {
        let a = S::span(3, vecs(&[&[1, 0, 0], &[0, 1, 0]]));
        let b = S::span(3, vecs(&[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(a.intersect(&b).unwrap(), S::span(3, vecs(&[&[0, 1, 0]])));
    }

    #[test]
    fn annihilator_pairs_to_zero() {
        let a = S::span(4, vecs(&[&[1, 2, 0, -1], &[0, 1, 1, 3]]));
        let ann = a.annihilator();
        assert_eq!(ann.dim(), 2);
        for u in a.basis() {
            for f in ann.basis() {
                let pairing = u.iter().zip(f).fold(Rational::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
                assert!(pairing.is_zero());
            }
        }
        assert_eq!(ann.annihilator(), a);
    }

    #[test]
    fn embedding_dimension() {
        let a = S::span(2, vecs(&[&[1, -1]]));
        let e = a.embed(2, 3);
        assert_eq!(e.ambient(), 12);
        assert_eq!(e.dim(), 6);
    }

    #[test]
    fn coordinates_roundtrip() {
        let a = S::span(3, vecs(&[&[1, 2, 3], &[0, 1, 5]]));
        let v = a.combine(&[Rational::from_int(2), Rational::from_ratio(-1, 3)]);
        assert_eq!(a.coordinates(&v).unwrap(), vec![Rational::from_int(2), Rational::from_ratio(-1, 3)]);
        assert_eq!(a.coordinates(&vecs(&[&[0, 0, 1]])[0]), None);
    }

    fn small_vectors(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=n)
    }

    proptest! {
        #[test]
        fn grassmann_formula(a in small_vectors(5), b in small_vectors(5)) {
            let to_q = |v: &Vec<Vec<i64>>| v.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
            let sa = S::span(5, to_q(&a));
            let sb = S::span(5, to_q(&b));
            let sum = sa.sum(&sb).unwrap();
            let int = sa.intersect(&sb).unwrap();
            prop_assert_eq!(sum.dim() + int.dim(), sa.dim() + sb.dim());
            prop_assert!(int.is_subspace_of(&sa) && int.is_subspace_of(&sb));
            prop_assert!(sa.is_subspace_of(&sum) && sb.is_subspace_of(&sum));
        }

        #[test]
        fn reduction_is_idempotent_and_kills_the_subspace(a in small_vectors(4), v in prop::collection::vec(-3i64..=3, 4)) {
            let to_q = |v: &Vec<Vec<i64>>| v.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
            let sa = S::span(4, to_q(&a));
            let v: Vec<Rational> = v.iter().map(|&x| Rational::from_int(x)).collect();
            let r = sa.reduce(&v);
            prop_assert_eq!(sa.reduce(&r), r.clone());
            let diff: Vec<Rational> = v.iter().zip(&r).map(|(x, y)| x.clone() - y.clone()).collect();
            prop_assert!(sa.contains(&diff));
            for &p in sa.pivots() {
                prop_assert!(r[p].is_zero());
            }
        }
    }
}
