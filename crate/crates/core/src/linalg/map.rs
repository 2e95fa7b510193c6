//! Linear maps defined on a subspace of a tensor power.


use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{word_index, Matrix, Subspace, Tensor};

/// A linear map `S → V^{⊗k}` with `S ⊆ V^{⊗m}`, stored by the images of the
/// canonical basis of `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceMap<F> {
    n: usize,
    degree: usize,
    domain: Subspace<F>,
    images: Vec<Tensor<F>>,
}

impl<F: Field> SubspaceMap<F> {
    /// `images[k]` is the image of the `k`-th canonical basis vector of `domain`.
    pub fn new(n: usize, degree: usize, domain: Subspace<F>, images: Vec<Tensor<F>>) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::DimensionMismatch { expected: domain.dim(), found: images.len() });
        }
        if domain.ambient() != n.pow(degree as u32) {
            return Err(Error::DimensionMismatch { expected: n.pow(degree as u32), found: domain.ambient() });
        }
        Ok(SubspaceMap { n, degree, domain, images })
    }

    /// The map sending each `vectors[k]` to `images[k]`; the vectors must be a basis of their span.
    pub fn from_basis_images(n: usize, degree: usize, vectors: &[Tensor<F>], images: Vec<Tensor<F>>) -> Result<Self> {
        if vectors.len() != images.len() {
            return Err(Error::DimensionMismatch { expected: vectors.len(), found: images.len() });
        }
        let domain = Subspace::span(n.pow(degree as u32), vectors.iter().map(Tensor::to_dense).collect());
        if domain.dim() != vectors.len() {
            return Err(Error::InvalidInput("basis vectors are linearly dependent".into()));
        }
        if vectors.is_empty() {
            return Self::new(n, degree, domain, Vec::new());
        }
        // vectors = A · canonical basis, with A read off at the pivots.
        let a = Matrix::from_rows(vectors.iter().map(|v| domain.coordinates(&v.to_dense()).expect("in span")).collect())?;
        let a_inv = a.inverse()?;
        let canonical = (0..a_inv.rows())
            .map(|j| {
                let mut acc = Tensor::zero(images[0].n(), images[0].degree());
                for (c, y) in a_inv.row(j).iter().zip(&images) {
                    acc.add_scaled(y, c);
                }
                acc
            })
            .collect();
        Self::new(n, degree, domain, canonical)
    }

    pub fn domain(&self) -> &Subspace<F> {
        &self.domain
    }

    pub fn images(&self) -> &[Tensor<F>] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Applies the map to an element of the domain.
    pub fn apply(&self, t: &Tensor<F>) -> Result<Tensor<F>> {
        let coords = self
            .domain
            .coordinates(&t.to_dense())
            .ok_or_else(|| Error::InvalidInput("tensor is outside the domain of the map".into()))?;
        let mut out = self.zero_image();
        for (c, y) in coords.iter().zip(&self.images) {
            out.add_scaled(y, c);
        }
        Ok(out)
    }

    /// The value on a single word of the canonical extension to all of
    /// `V^{⊗m}`, which reads coordinates at the pivot columns. Applied slice by
    /// slice it computes `f ⊗ id` on `S ⊗ V^{⊗j}` and `id ⊗ f` on `V^{⊗j} ⊗ S`.
    pub fn on_word(&self, word: &[usize]) -> Tensor<F> {
        let idx = word_index(word, self.n);
        match self.domain.pivots().binary_search(&idx) {
            Ok(k) => self.images[k].clone(),
            Err(_) => self.zero_image(),
        }
    }

    /// `f ⊗ id` on `S ⊗ V^{⊗j}`.
    pub fn apply_left(&self, t: &Tensor<F>) -> Result<Tensor<F>> {
        let (n, k) = self.image_shape();
        self.check_slices(t, true)?;
        t.map_block_into(0, self.degree, n, k, |b| self.on_word(b))
    }

    /// `id ⊗ f` on `V^{⊗j} ⊗ S`.
    pub fn apply_right(&self, t: &Tensor<F>) -> Result<Tensor<F>> {
        let (n, k) = self.image_shape();
        self.check_slices(t, false)?;
        t.map_block_into(t.degree() - self.degree, self.degree, n, k, |b| self.on_word(b))
    }

    /// `id^{⊗start} ⊗ f ⊗ id^{⊗…}` on a tensor lying in `V^{⊗start} ⊗ S ⊗ V^{⊗…}`.
    /// Membership is the caller's responsibility.
    pub fn apply_at(&self, t: &Tensor<F>, start: usize) -> Result<Tensor<F>> {
        let (n, k) = self.image_shape();
        t.map_block_into(start, self.degree, n, k, |b| self.on_word(b))
    }

    pub fn zero_image(&self) -> Tensor<F> {
        let (n, k) = self.image_shape();
        Tensor::zero(n, k)
    }

    pub fn image_shape(&self) -> (usize, usize) {
        self.images.first().map_or((self.n, 0), |y| (y.n(), y.degree()))
    }

    fn check_slices(&self, t: &Tensor<F>, left: bool) -> Result<()> {
        if t.degree() < self.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, found: t.degree() });
        }
        let extra = t.degree() - self.degree;
        let slices = if left { t.suffix_slices(extra) } else { t.prefix_slices(extra) };
        if slices.values().all(|s| self.domain.contains(&s.to_dense())) {
            Ok(())
        } else {
            Err(Error::InvalidInput("tensor is outside the domain of the map".into()))
        }
    }

    /// True if every image vanishes.
    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|y| y.is_zero() || y.terms().all(|(_, c)| c.is_zero()))
    }
}
