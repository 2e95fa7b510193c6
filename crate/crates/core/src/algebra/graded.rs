//! Homogeneous components `A_m` of a quadratic algebra with monomial bases.
//!
//! `A_m` is computed as `(A_{m-1} ⊗ V) / (A_{m-2} ⊗ R)`, never materializing
//! the ideal inside `V^{⊗m}`. With rows ordered lexicographically the normal
//! words found this way are exactly the non-pivot columns of the full ideal
//! component under the big-endian flattening.

use crate::field::Field;
use crate::linalg::{Matrix, Subspace, Tensor, Word};

#[derive(Clone, Debug)]
pub struct GradedPieces<F> {
    n: usize,
    bases: Vec<Vec<Word>>,
    /// `parents[m][b] = (index of the prefix in B_{m-1}, last letter)`.
    parents: Vec<Vec<(usize, usize)>>,
    /// `proj[m]` maps the basis `(b, t)` of `A_{m-1} ⊗ V` onto `A_m`.
    proj: Vec<Matrix<F>>,
    /// `left[m][p]` is left multiplication by `x_p`, `A_m → A_{m+1}`.
    left: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> GradedPieces<F> {
    /// Components up to degree `max_degree` of `T(V)/(R)`, `R ⊆ V⊗V`.
    pub fn new(n: usize, relations: &Subspace<F>, max_degree: usize) -> Self {
        assert_eq!(relations.ambient(), n * n, "relation space has wrong ambient dimension");
        let mut bases: Vec<Vec<Word>> = vec![vec![Vec::new()]];
        let mut parents: Vec<Vec<(usize, usize)>> = vec![vec![]];
        let mut proj: Vec<Matrix<F>> = vec![Matrix::zeros(0, 1)];
        if max_degree >= 1 {
            bases.push((0..n).map(|t| vec![t]).collect());
            parents.push((0..n).map(|t| (0, t)).collect());
            proj.push(Matrix::identity(n));
        }
        for m in 2..=max_degree {
            let prev = bases[m - 1].len();
            let cols = prev * n;
            let mut vectors = Vec::with_capacity(bases[m - 2].len() * relations.dim());
            for w in 0..bases[m - 2].len() {
                for r in relations.basis() {
                    let mut v = vec![F::zero(); cols];
                    for (pq, c) in r.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (p, q) = (pq / n, pq % n);
                        for (b, e) in proj[m - 1].row(w * n + p).iter().enumerate() {
                            if !e.is_zero() {
                                v[b * n + q] = v[b * n + q].clone() + c.clone() * e.clone();
                            }
                        }
                    }
                    vectors.push(v);
                }
            }
            let kernel = Subspace::span(cols, vectors);
            let normal = kernel.non_pivots();
            let mut p = Matrix::zeros(cols, normal.len());
            for (k, &piv) in kernel.pivots().iter().enumerate() {
                let row = &kernel.basis()[k];
                for (j, &col) in normal.iter().enumerate() {
                    if !row[col].is_zero() {
                        p.set(piv, j, -row[col].clone());
                    }
                }
            }
            for (k, &col) in normal.iter().enumerate() {
                p.set(col, k, F::one());
            }
            bases.push(
                normal
                    .iter()
                    .map(|&col| {
                        let mut w = bases[m - 1][col / n].clone();
                        w.push(col % n);
                        w
                    })
                    .collect(),
            );
            parents.push(normal.iter().map(|&col| (col / n, col % n)).collect());
            proj.push(p);
        }
        let mut pieces = GradedPieces { n, bases, parents, proj, left: Vec::new() };
        pieces.build_left_tables();
        pieces
    }

    fn build_left_tables(&mut self) {
        let n = self.n;
        let max = self.max_degree();
        let mut left: Vec<Vec<Matrix<F>>> = Vec::new();
        for m in 0..max {
            let mut per_letter = Vec::with_capacity(n);
            for p in 0..n {
                let rows = self.bases[m].len();
                let cols = self.bases[m + 1].len();
                let mut table = Matrix::zeros(rows, cols);
                if m == 0 {
                    table = Matrix::from_rows(vec![self.proj[1].row(p).to_vec()]).expect("single row");
                } else {
                    for b in 0..rows {
                        let (prefix, t) = self.parents[m][b];
                        let coords = left[m - 1][p].row(prefix).to_vec();
                        let image = self.right_multiply(m + 1, &coords, t);
                        for (j, v) in image.into_iter().enumerate() {
                            table.set(b, j, v);
                        }
                    }
                }
                per_letter.push(table);
            }
            left.push(per_letter);
        }
        self.left = left;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, m: usize) -> usize {
        self.bases[m].len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Normal words of `A_m`, in increasing flattening order.
    pub fn basis(&self, m: usize) -> &[Word] {
        &self.bases[m]
    }

    /// `a · x_t` for `a ∈ A_{m-1}` given by coordinates.
    pub fn right_multiply(&self, m: usize, coords: &[F], t: usize) -> Vec<F> {
        let mut out = vec![F::zero(); self.bases[m].len()];
        for (b, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(self.proj[m].row(b * self.n + t)) {
                if !e.is_zero() {
                    *o = o.clone() + c.clone() * e.clone();
                }
            }
        }
        out
    }

    /// `x_p · a` for `a ∈ A_m`.
    pub fn left_multiply(&self, p: usize, m: usize, coords: &[F]) -> Vec<F> {
        self.left[m][p].apply_row(coords)
    }

    /// `x_p · b` for the `b`-th normal word of `A_m`.
    pub fn left_multiply_basis(&self, p: usize, m: usize, b: usize) -> &[F] {
        self.left[m][p].row(b)
    }

    /// Coordinates of the image of a word in `A_{|word|}`.
    pub fn reduce_word(&self, word: &[usize]) -> Vec<F> {
        let mut coords = vec![F::one()];
        for (k, &t) in word.iter().enumerate() {
            coords = self.right_multiply(k + 1, &coords, t);
        }
        coords
    }

    /// Coordinates of the image of a homogeneous tensor.
    pub fn reduce_tensor(&self, t: &Tensor<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim(t.degree())];
        for (w, c) in t.terms() {
            for (o, e) in out.iter_mut().zip(self.reduce_word(w)) {
                if !e.is_zero() {
                    *o = o.clone() + c.clone() * e;
                }
            }
        }
        out
    }
}
