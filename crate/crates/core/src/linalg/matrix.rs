//! Dense matrices over an exact field and Gauss-Jordan elimination.
//!
//! Linear maps on `V` are stored in the *row-image* convention used all over
//! this crate: row `i` of the matrix of `f` holds the coordinates of
//! `f(x_i)`. With that convention the coordinates of `f(v)` are the row
//! vector `c·F` where `c` are the coordinates of `v`, and the matrix of the
//! composite `f ∘ g` is `G·F`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Subspace;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Solution set of `x·A^T = b`, i.e. of the column system `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<F> {
    /// Canonical particular solution: every free coordinate is zero.
    pub particular: Vec<F>,
    pub kernel: Subspace<F>,
}

/// Rows in brackets, e.g. `[[1, 2], [0, 1]]`.
impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, c) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_int(v)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `self ∘ inner` in the row-image convention (`inner` applied first).
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        inner.mul(self)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(F, F) -> F) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let data = self.data.iter().cloned().zip(other.data.iter().cloned()).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Kronecker product; the matrix of `f ⊗ g` on the big-endian flattening.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a.clone() * b.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix: the coordinates of `f(v)` for `v` with coordinates `coeffs`.
    pub fn apply_row(&self, coeffs: &[F]) -> Vec<F> {
        assert_eq!(coeffs.len(), self.rows, "coordinate vector has wrong length");
        let mut out = vec![F::zero(); self.cols];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = o.clone() + c.clone() * a.clone();
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector has wrong length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn rref(&self) -> Rref<F> {
        let mut rows = self.to_rows();
        let pivots = eliminate(&mut rows, self.cols, self.cols, true);
        let rank = pivots.len();
        let matrix = Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zeros(self.rows, self.cols));
        Rref { matrix: if self.rows == 0 { Matrix::zeros(0, self.cols) } else { matrix }, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        eliminate(&mut rows, self.cols, self.cols, false).len()
    }

    /// Null space `{x : A x = 0}` as a subspace of `F^cols`.
    pub fn kernel(&self) -> Subspace<F> {
        let Rref { matrix, pivots, .. } = self.rref();
        Subspace::span(self.cols, kernel_from_rref(&matrix.to_rows(), &pivots, self.cols))
    }

    /// Solves `A x = b`.
    pub fn solve_affine(&self, b: &[F]) -> Result<AffineSolution<F>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut rows: Vec<Vec<F>> =
            (0..self.rows).map(|i| self.row(i).iter().cloned().chain(std::iter::once(b[i].clone())).collect()).collect();
        let pivots = eliminate(&mut rows, self.cols + 1, self.cols, true);
        let rank = pivots.len();
        if rows[rank..].iter().any(|r| !r[self.cols].is_zero()) {
            return Err(Error::NoSolution);
        }
        let mut particular = vec![F::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            particular[p] = rows[k][self.cols].clone();
        }
        let reduced: Vec<Vec<F>> = rows.iter().map(|r| r[..self.cols].to_vec()).collect();
        let kernel = Subspace::span(self.cols, kernel_from_rref(&reduced, &pivots, self.cols));
        Ok(AffineSolution { particular, kernel })
    }

    /// Solves `A x = b` for several right-hand sides sharing one elimination.
    /// Inconsistent systems yield `None` in their slot; the kernel is common.
    pub fn solve_affine_many(&self, rhs: &[Vec<F>]) -> Result<(Vec<Option<Vec<F>>>, Subspace<F>)> {
        if let Some(b) = rhs.iter().find(|b| b.len() != self.rows) {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let (c, k) = (self.cols, rhs.len());
        let mut rows: Vec<Vec<F>> = (0..self.rows)
            .map(|i| self.row(i).iter().cloned().chain(rhs.iter().map(|b| b[i].clone())).collect())
            .collect();
        let pivots = eliminate(&mut rows, c + k, c, true);
        let rank = pivots.len();
        let solutions = (0..k)
            .map(|s| {
                if rows[rank..].iter().any(|r| !r[c + s].is_zero()) {
                    return None;
                }
                let mut x = vec![F::zero(); c];
                for (row, &p) in rows.iter().zip(&pivots) {
                    x[p] = row[c + s].clone();
                }
                Some(x)
            })
            .collect();
        let reduced: Vec<Vec<F>> = rows.iter().map(|r| r[..c].to_vec()).collect();
        Ok((solutions, Subspace::span(c, kernel_from_rref(&reduced, &pivots, c))))
    }

    pub fn determinant(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                rows.swap(p, c);
                det = -det;
            }
            let pivot = rows[c][c].clone();
            det = det * pivot.clone();
            let inv = pivot.inv();
            for r in c + 1..n {
                if rows[r][c].is_zero() {
                    continue;
                }
                let factor = rows[r][c].clone() * inv.clone();
                for j in c..n {
                    let v = rows[c][j].clone();
                    if !v.is_zero() {
                        rows[r][j] = rows[r][j].clone() - factor.clone() * v;
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut rows: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
                r
            })
            .collect();
        let pivots = eliminate(&mut rows, 2 * n, n, true);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        Matrix::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect())
    }
}

/// In-place Gauss-Jordan elimination on `rows` (each of length `cols`),
/// searching pivots only among the first `pivot_cols` columns. With
/// `reduce_above` the result is the reduced row echelon form; otherwise only
/// entries below pivots are cleared. Returns the pivot columns; nonzero rows
/// end up first.
pub(crate) fn eliminate<F: Field>(rows: &mut [Vec<F>], cols: usize, pivot_cols: usize, reduce_above: bool) -> Vec<usize> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for v in rows[r][c..cols].iter_mut() {
                if !v.is_zero() {
                    *v = v.clone() * inv.clone();
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        let start = if reduce_above { 0 } else { r + 1 };
        for (i, row) in rows.iter_mut().enumerate().skip(start) {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = row[j].clone() - factor.clone() * pivot_row[j].clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn kernel_from_rref<F: Field>(rows: &[Vec<F>], pivots: &[usize], cols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (k, &p) in pivots.iter().enumerate() {
                let e = &rows[k][f];
                if !e.is_zero() {
                    v[p] = -e.clone();
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type M = Matrix<Rational>;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn rref_of_identity() {
        let r = M::identity(2).rref();
        assert_eq!(r.matrix, M::identity(2));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_dependent_rows() {
        let r = M::from_ints(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, M::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    /// Rank as the size of the largest nonvanishing minor, by brute force.
    fn minor_rank(m: &M) -> usize {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for last in (k - 1)..n {
                for mut s in subsets(last, k - 1) {
                    s.push(last);
                    out.push(s);
                }
            }
            out
        }
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub = Matrix::from_rows(
                        rs.iter().map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect()).collect(),
                    )
                    .unwrap();
                    if !sub.determinant().unwrap().is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, rank: usize) -> M {
        // product of random rows×rank and rank×cols factors, entries in a small range
        let a = Matrix::from_rows(
            (0..rows).map(|_| (0..rank).map(|_| q(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect()).collect(),
        )
        .unwrap();
        let b = Matrix::from_rows(
            (0..rank).map(|_| (0..cols).map(|_| q(rng.gen_range(-3..=3), 1)).collect()).collect(),
        )
        .unwrap();
        a.mul(&b).unwrap()
    }

    #[test]
    fn rank_matches_minor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..12 {
            let m = random_matrix(&mut rng, 6, 6, trial % 7);
            assert_eq!(m.rref().rank, minor_rank(&m));
            assert_eq!(m.rank(), minor_rank(&m));
        }
    }

    #[test]
    fn rref_is_canonical_under_row_operations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_matrix(&mut rng, 5, 7, 3);
        let mixer = random_matrix(&mut rng, 5, 5, 5);
        assert!(!mixer.determinant().unwrap().is_zero());
        assert_eq!(mixer.mul(&m).unwrap().rref().matrix, m.rref().matrix);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = vec![q(1, 2), q(-3, 1), q(0, 1)];
        let sol = M::identity(3).solve_affine(&b).unwrap();
        assert_eq!(sol.particular, b);
        assert_eq!(sol.kernel.dim(), 0);
        assert_eq!(M::zeros(2, 2).solve_affine(&[q(1, 1), q(0, 1)]), Err(Error::NoSolution));
    }

    #[test]
    fn consistent_underdetermined_system_substitutes_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = random_matrix(&mut rng, 5, 7, 4);
            let x: Vec<Rational> = (0..7).map(|_| q(rng.gen_range(-4..=4), rng.gen_range(1..=2))).collect();
            let b = a.apply_col(&x);
            let sol = a.solve_affine(&b).unwrap();
            assert_eq!(a.apply_col(&sol.particular), b);
            assert_eq!(sol.kernel.dim(), 7 - a.rank());
            for k in sol.kernel.basis() {
                assert!(a.apply_col(k).iter().all(|c| c.is_zero()));
            }
            // free coordinates of the particular solution are zero
            let pivots = a.rref().pivots;
            for (j, v) in sol.particular.iter().enumerate() {
                if !pivots.contains(&j) {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn many_right_hand_sides_agree_with_single_solves() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 6, 5, 3);
        let consistent = a.apply_col(&(0..5).map(|i| q(i as i64 - 2, 1)).collect::<Vec<_>>());
        let inconsistent: Vec<Rational> = (0..6).map(|i| q(i as i64 * i as i64, 1)).collect();
        let (sols, kernel) = a.solve_affine_many(&[consistent.clone(), inconsistent.clone()]).unwrap();
        let single = a.solve_affine(&consistent).unwrap();
        assert_eq!(sols[0].as_ref(), Some(&single.particular));
        assert_eq!(kernel, single.kernel);
        assert_eq!(sols[1].is_none(), a.solve_affine(&inconsistent).is_err());
    }

    #[test]
    fn inverse_and_determinant() {
        let m = M::from_ints(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant().unwrap(), q(1, 1));
        assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), M::identity(2));
        assert_eq!(M::from_ints(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn row_image_convention_composes() {
        let f = M::from_ints(&[&[0, 1], &[1, 0]]);
        let g = M::from_ints(&[&[1, 1], &[0, 1]]);
        let v = vec![q(2, 1), q(5, 1)];
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.apply_row(&v), f.apply_row(&g.apply_row(&v)));
    }
}
