//! Sequence pairs `({δ_{i,r}}, {δ_{i,l}})` attached to a lift of a σ-derivation.

use crate::algebra::CertifiedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{power_dim, word_index, Matrix, Subspace, SubspaceMap, Tensor};
use crate::morphisms::DerivationLift;

/// The towers `δ_{i,r} : W_i → W_i⊗V` and `δ_{i,l} : W_i → V⊗W_i` for `0 ≤ i ≤ d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequencePair<F> {
    right: Vec<SubspaceMap<F>>,
    left: Vec<SubspaceMap<F>>,
}

/// Extra kernel elements chosen while building the right tower: called with
/// the stage `i`, the index of the `W_i` basis vector and the kernel of the
/// stage system (coordinates on the basis `w_k ⊗ x_t`).
pub type KernelChoice<'a, F> = dyn FnMut(usize, usize, &Subspace<F>) -> Option<Vec<F>> + 'a;

/// Projection of the last two tensor slots onto `A_2 = V⊗V / R`.
struct LastPairReduction<F> {
    n: usize,
    a2: usize,
    table: Vec<Vec<(usize, F)>>,
}

impl<F: Field> LastPairReduction<F> {
    fn new(n: usize, relations: &Subspace<F>) -> Self {
        let normal = relations.non_pivots();
        let table = (0..n * n)
            .map(|pair| {
                let mut e = vec![F::zero(); n * n];
                e[pair] = F::one();
                let red = relations.reduce(&e);
                normal.iter().enumerate().filter(|(_, &c)| !red[c].is_zero()).map(|(j, &c)| (j, red[c].clone())).collect()
            })
            .collect();
        LastPairReduction { n, a2: normal.len(), table }
    }

    /// `(id^{⊗m-2} ⊗ m_A)(t)` as a dense vector over `V^{⊗m-2} ⊗ A_2`.
    fn apply(&self, t: &Tensor<F>) -> Vec<F> {
        let m = t.degree();
        let mut out = vec![F::zero(); power_dim(self.n, m - 2) * self.a2];
        for (w, c) in t.terms() {
            let u = word_index(&w[..m - 2], self.n);
            let pair = w[m - 2] * self.n + w[m - 1];
            for (j, e) in &self.table[pair] {
                let slot = &mut out[u * self.a2 + j];
                *slot = slot.clone() + c.clone() * e.clone();
            }
        }
        out
    }
}

fn basis_tensors<F: Field>(n: usize, degree: usize, s: &Subspace<F>) -> Vec<Tensor<F>> {
    s.basis().iter().map(|v| Tensor::from_dense(n, degree, v)).collect()
}

fn slices_within<F: Field>(t: &Tensor<F>, s: &Subspace<F>, suffix: bool) -> bool {
    let slices = if suffix { t.suffix_slices(1) } else { t.prefix_slices(1) };
    slices.values().all(|x| s.contains(&x.to_dense()))
}

/// Splits `δ|_R = δ_{2,r} + δ_{2,l}` with `δ_{2,r}(R) ⊆ R⊗V`, `δ_{2,l}(R) ⊆ V⊗R`,
/// taking the canonical particular solution of the membership system.
pub fn decompose_delta2<F: Field>(alg: &CertifiedAlgebra<F>, delta: &DerivationLift<F>) -> Result<(SubspaceMap<F>, SubspaceMap<F>)> {
    let n = alg.n();
    let rels = alg.algebra().relation_basis();
    let gens: Vec<Tensor<F>> = (0..n).map(|t| Tensor::generator(n, t)).collect();
    // columns: r_j ⊗ x_t, then x_s ⊗ r_j
    let mut columns = Vec::with_capacity(2 * rels.len() * n);
    for r in &rels {
        for g in &gens {
            columns.push(r.tensor(g));
        }
    }
    for g in &gens {
        for r in &rels {
            columns.push(g.tensor(r));
        }
    }
    let split = rels.len() * n;
    let dense: Vec<Vec<F>> = columns.iter().map(Tensor::to_dense).collect();
    let system = Matrix::from_rows(dense)?.transpose();
    let rhs: Vec<Vec<F>> = rels.iter().map(|r| delta.apply(r).to_dense()).collect();
    let (solutions, _) = system.solve_affine_many(&rhs)?;
    let mut right = Vec::with_capacity(rels.len());
    let mut left = Vec::with_capacity(rels.len());
    for (k, sol) in solutions.into_iter().enumerate() {
        let x = sol.ok_or(Error::TowerNoSolution { stage: 2, basis_index: k })?;
        let mut r_part = Tensor::zero(n, 3);
        let mut l_part = Tensor::zero(n, 3);
        for (idx, c) in x.iter().enumerate() {
            if idx < split {
                r_part.add_scaled(&columns[idx], c);
            } else {
                l_part.add_scaled(&columns[idx], c);
            }
        }
        right.push(r_part);
        left.push(l_part);
    }
    let domain = alg.relations().clone();
    Ok((SubspaceMap::new(n, 2, domain.clone(), right)?, SubspaceMap::new(n, 2, domain, left)?))
}

/// The canonical sequence pair: every stage takes the particular solution with
/// free variables zero.
pub fn build_sequence_pair<F: Field>(alg: &CertifiedAlgebra<F>, delta: &DerivationLift<F>) -> Result<SequencePair<F>> {
    build_sequence_pair_with(alg, delta, &mut |_, _, _| None)
}

/// Builds a sequence pair, letting `choice` add kernel elements at each stage.
pub fn build_sequence_pair_with<F: Field>(
    alg: &CertifiedAlgebra<F>,
    delta: &DerivationLift<F>,
    choice: &mut KernelChoice<'_, F>,
) -> Result<SequencePair<F>> {
    let n = alg.n();
    let d = alg.d();
    let sigma = delta.sigma().matrix();
    let zero_map = SubspaceMap::new(n, 0, Subspace::full(1), vec![Tensor::zero(n, 1)])?;
    let first = SubspaceMap::new(n, 1, Subspace::full(n), delta.images().to_vec())?;
    let mut right = vec![zero_map.clone(), first.clone()];
    let mut left = vec![zero_map, first];
    let reduction = LastPairReduction::new(n, alg.relations());
    for i in 2..=d {
        let wi = alg.koszul_space(i);
        let basis = basis_tensors(n, i, &wi);
        let mut columns = Vec::with_capacity(basis.len() * n);
        for b in &basis {
            for t in 0..n {
                columns.push(b.tensor(&Tensor::generator(n, t)));
            }
        }
        let reduced: Vec<Vec<F>> = columns.iter().map(|c| reduction.apply(c)).collect();
        let system = Matrix::from_rows(reduced)?.transpose();
        let targets: Vec<Vec<F>> =
            basis.iter().map(|b| Ok(reduction.apply(&right_target(b, sigma, delta, &right[i - 1])?))).collect::<Result<_>>()?;
        let (solutions, kernel) = system.solve_affine_many(&targets)?;
        let mut images = Vec::with_capacity(basis.len());
        for (k, sol) in solutions.into_iter().enumerate() {
            let mut x = sol.ok_or(Error::TowerNoSolution { stage: i, basis_index: k })?;
            if let Some(extra) = choice(i, k, &kernel) {
                if !kernel.contains(&extra) {
                    return Err(Error::Invariant(format!("kernel choice at stage {i} is not in the kernel")));
                }
                for (a, b) in x.iter_mut().zip(extra) {
                    *a = a.clone() + b;
                }
            }
            let mut image = Tensor::zero(n, i + 1);
            for (col, c) in columns.iter().zip(&x) {
                image.add_scaled(col, c);
            }
            images.push(image);
        }
        right.push(SubspaceMap::new(n, i, wi.clone(), images)?);
        let sign = F::sign(i);
        let mut left_images = Vec::with_capacity(basis.len());
        for (k, b) in basis.iter().enumerate() {
            let shifted = right[i - 1].apply_at(b, 1)?.apply_at_slot(sigma, 0)?;
            let mut image = left[i - 1].apply_at(b, 0)?;
            image.add_scaled(&shifted, &sign);
            image.add_scaled(&right[i].images()[k], &-sign.clone());
            if !slices_within(&image, &wi, false) {
                return Err(Error::LeftImageEscape { stage: i });
            }
            left_images.push(image);
        }
        left.push(SubspaceMap::new(n, i, wi, left_images)?);
    }
    Ok(SequencePair { right, left })
}

/// `(σ^{⊗i-1} ⊗ δ + δ_{i-1,r} ⊗ id)(b)` for `b ∈ W_i`.
fn right_target<F: Field>(b: &Tensor<F>, sigma: &Matrix<F>, delta: &DerivationLift<F>, prev: &SubspaceMap<F>) -> Result<Tensor<F>> {
    let i = b.degree();
    let mut t = b.apply_range(sigma, 0, i - 1)?.substitute_at_slot(i - 1, delta.images())?;
    t = t.add(&prev.apply_at(b, 0)?);
    Ok(t)
}

impl<F: Field> SequencePair<F> {
    /// Assembles towers given for indices `0..=d`; use [`SequencePair::verify`] to check them.
    pub fn new(right: Vec<SubspaceMap<F>>, left: Vec<SubspaceMap<F>>) -> Result<Self> {
        if right.len() != left.len() || right.len() < 2 {
            return Err(Error::DimensionMismatch { expected: right.len().max(2), found: left.len() });
        }
        for (i, (r, l)) in right.iter().zip(&left).enumerate() {
            if r.degree() != i || l.degree() != i || r.domain() != l.domain() {
                return Err(Error::InvalidInput(format!("stage {i} has the wrong domain")));
            }
        }
        Ok(SequencePair { right, left })
    }

    /// The top index `d`.
    pub fn d(&self) -> usize {
        self.right.len() - 1
    }

    pub fn right(&self, i: usize) -> &SubspaceMap<F> {
        &self.right[i]
    }

    pub fn left(&self, i: usize) -> &SubspaceMap<F> {
        &self.left[i]
    }

    /// `Σ_{i=1}^{upto} (-1)^i (δ_{i,r} ⊗ id^{⊗m-i})(t)` for `t ∈ W_m`.
    pub fn right_sum(&self, t: &Tensor<F>, upto: usize) -> Result<Tensor<F>> {
        let mut acc = Tensor::zero(t.n(), t.degree() + 1);
        for i in 1..=upto {
            acc.add_scaled(&self.right[i].apply_at(t, 0)?, &F::sign(i));
        }
        Ok(acc)
    }

    /// `Σ_{i=1}^{upto} (-1)^i (σ^{⊗m-i} ⊗ δ_{i,l})(t)` for `t ∈ W_m`.
    pub fn left_sum(&self, sigma: &Matrix<F>, t: &Tensor<F>, upto: usize) -> Result<Tensor<F>> {
        let m = t.degree();
        let mut acc = Tensor::zero(t.n(), m + 1);
        for i in 1..=upto {
            let term = self.left[i].apply_at(t, m - i)?.apply_range(sigma, 0, m - i)?;
            acc.add_scaled(&term, &F::sign(i));
        }
        Ok(acc)
    }

    /// Re-checks both tower conditions and the image constraints exactly.
    pub fn verify(&self, alg: &CertifiedAlgebra<F>, delta: &DerivationLift<F>) -> Result<()> {
        let n = alg.n();
        let sigma = delta.sigma().matrix();
        let reduction = LastPairReduction::new(n, alg.relations());
        if self.right[1].images() != delta.images() || self.left[1].images() != delta.images() {
            return Err(Error::Invariant("first stage differs from δ".into()));
        }
        for i in 2..=self.d() {
            let wi = alg.koszul_space(i);
            for (k, b) in basis_tensors(n, i, &wi).iter().enumerate() {
                let r = &self.right[i].images()[k];
                let l = &self.left[i].images()[k];
                if !slices_within(r, &wi, true) {
                    return Err(Error::Invariant(format!("δ_{{{i},r}} leaves W_{i}⊗V")));
                }
                if !slices_within(l, &wi, false) {
                    return Err(Error::LeftImageEscape { stage: i });
                }
                let target = right_target(b, sigma, delta, &self.right[i - 1])?;
                if reduction.apply(r) != reduction.apply(&target) {
                    return Err(Error::Invariant(format!("right tower condition fails at stage {i}")));
                }
                let sign = F::sign(i);
                let mut lhs = r.clone();
                lhs.add_scaled(l, &sign);
                let mut rhs = self.right[i - 1].apply_at(b, 1)?.apply_at_slot(sigma, 0)?;
                rhs.add_scaled(&self.left[i - 1].apply_at(b, 0)?, &sign);
                if lhs != rhs {
                    return Err(Error::Invariant(format!("left tower recursion fails at stage {i}")));
                }
            }
        }
        Ok(())
    }
}
