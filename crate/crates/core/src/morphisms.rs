//! Graded automorphisms, degree-one σ-derivations, the homological
//! determinant and the Nakayama automorphism of a certified algebra.

use crate::algebra::{CertifiedAlgebra, QuadraticAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace, Tensor};

/// A graded automorphism `σ` of `A`, determined by its action on `V`.
/// Row `i` of the matrix holds `σ(x_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAutomorphism<F> {
    matrix: Matrix<F>,
    inverse: Matrix<F>,
}

/// A lift `δ : V → V⊗V` of a degree-one `σ`-derivation, extended to `T(V)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationLift<F> {
    images: Vec<Tensor<F>>,
    sigma: GradedAutomorphism<F>,
}

/// Checks that `m` is invertible and `(m⊗m)(R) = R`.
pub fn check_automorphism<F: Field>(m: &Matrix<F>, alg: &QuadraticAlgebra<F>) -> Result<GradedAutomorphism<F>> {
    let n = alg.n();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: if m.rows() != n { m.rows() } else { m.cols() } });
    }
    let inverse = m.inverse().map_err(|_| Error::NotInvertible)?;
    let sigma = GradedAutomorphism { matrix: m.clone(), inverse };
    let image = sigma.image_of(alg.relations(), 2);
    if image != *alg.relations() {
        let bad = alg
            .relation_basis()
            .into_iter()
            .map(|r| sigma.apply(&r))
            .find(|s| !alg.relations().contains(&s.to_dense()))
            .map_or_else(String::new, |s| s.display_with(Some(alg.names())));
        return Err(Error::NotAdmissible(format!("σ does not preserve R: image {bad} is not a relation")));
    }
    Ok(sigma)
}

impl<F: Field> GradedAutomorphism<F> {
    pub fn identity(n: usize) -> Self {
        GradedAutomorphism { matrix: Matrix::identity(n), inverse: Matrix::identity(n) }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix<F> {
        &self.inverse
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn inverse(&self) -> Self {
        GradedAutomorphism { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        GradedAutomorphism {
            matrix: self.matrix.compose(&other.matrix).expect("same size"),
            inverse: other.inverse.compose(&self.inverse).expect("same size"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.n())
    }

    /// `σ^{⊗m}` on a tensor of degree `m`.
    pub fn apply(&self, t: &Tensor<F>) -> Tensor<F> {
        t.apply_all(&self.matrix).expect("tensor over the same generators")
    }

    /// `σ^{⊗m}(S)` for a subspace `S ⊆ V^{⊗m}`.
    pub fn image_of(&self, s: &Subspace<F>, degree: usize) -> Subspace<F> {
        let n = self.n();
        Subspace::span(s.ambient(), s.basis().iter().map(|v| self.apply(&Tensor::from_dense(n, degree, v)).to_dense()).collect())
    }

    /// Whether `σ^{⊗i}(W_i) = W_i` for every `i ≤ d`.
    pub fn preserves_koszul_spaces(&self, alg: &CertifiedAlgebra<F>) -> bool {
        (0..=alg.d()).all(|i| {
            let w = alg.koszul_space(i);
            self.image_of(&w, i) == w
        })
    }
}

/// Extends `δ(x_i) = images[i]` and checks `δ(R) ⊆ R⊗V + V⊗R`.
pub fn extend_derivation<F: Field>(
    images: Vec<Tensor<F>>,
    sigma: &GradedAutomorphism<F>,
    alg: &QuadraticAlgebra<F>,
) -> Result<DerivationLift<F>> {
    let n = alg.n();
    if images.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: images.len() });
    }
    if let Some(bad) = images.iter().find(|t| t.n() != n || t.degree() != 2) {
        return Err(Error::InvalidInput(format!("derivation image {bad} is not a quadratic tensor")));
    }
    if sigma.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: sigma.n() });
    }
    let lift = DerivationLift { images, sigma: sigma.clone() };
    let target = alg.relations().embed(1, n).sum(&alg.relations().embed(n, 1))?;
    for r in alg.relation_basis() {
        let image = lift.apply(&r);
        if !target.contains(&image.to_dense()) {
            return Err(Error::NotAdmissible(format!(
                "δ({}) = {} is not in R⊗V + V⊗R",
                r.display_with(Some(alg.names())),
                image.display_with(Some(alg.names()))
            )));
        }
    }
    Ok(lift)
}

/// All admissible lifts for `σ`, as a subspace of `(V⊗V)^n` holding the
/// images `δ(x_1), …, δ(x_n)` one after another.
pub fn derivation_space<F: Field>(sigma: &GradedAutomorphism<F>, alg: &QuadraticAlgebra<F>) -> Result<Subspace<F>> {
    let n = alg.n();
    let block = n * n;
    let target = alg.relations().embed(1, n).sum(&alg.relations().embed(n, 1))?;
    let rels = alg.relation_basis();
    let mut columns = Vec::with_capacity(n * block);
    for i in 0..n {
        for w in 0..block {
            let mut images = vec![Tensor::zero(n, 2); n];
            images[i] = Tensor::from_dense(n, 2, &unit(block, w));
            let lift = DerivationLift { images, sigma: sigma.clone() };
            columns.push(rels.iter().flat_map(|r| target.reduce(&lift.apply(r).to_dense())).collect::<Vec<F>>());
        }
    }
    if rels.is_empty() {
        return Ok(Subspace::full(n * block));
    }
    Ok(Matrix::from_rows(columns)?.transpose().kernel())
}

fn unit<F: Field>(len: usize, k: usize) -> Vec<F> {
    let mut v = vec![F::zero(); len];
    v[k] = F::one();
    v
}

/// Splits a vector of [`derivation_space`] back into the images `δ(x_i)`.
pub fn lift_images<F: Field>(n: usize, v: &[F]) -> Vec<Tensor<F>> {
    v.chunks(n * n).map(|c| Tensor::from_dense(n, 2, c)).collect()
}

impl<F: Field> DerivationLift<F> {
    pub fn zero(sigma: &GradedAutomorphism<F>) -> Self {
        let n = sigma.n();
        DerivationLift { images: vec![Tensor::zero(n, 2); n], sigma: sigma.clone() }
    }

    pub fn images(&self) -> &[Tensor<F>] {
        &self.images
    }

    pub fn sigma(&self) -> &GradedAutomorphism<F> {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Tensor::is_zero)
    }

    /// The image as a degree-one-higher tensor, by
    /// `δ(v_1⋯v_m) = Σ_k σ(v_1)⋯σ(v_{k-1}) δ(v_k) v_{k+1}⋯v_m`.
    pub fn apply(&self, t: &Tensor<F>) -> Tensor<F> {
        let n = self.n();
        let mut out = Tensor::zero(n, t.degree() + 1);
        for k in 0..t.degree() {
            let twisted = t.apply_range(self.sigma.matrix(), 0, k).expect("within degree");
            out = out.add(&twisted.substitute_at_slot(k, &self.images).expect("within degree"));
        }
        out
    }

    /// The lift with the same σ and images `δ(x_i) + extra[i]`.
    pub fn perturbed(&self, extra: &[Tensor<F>]) -> Self {
        DerivationLift {
            images: self.images.iter().zip(extra).map(|(a, b)| a.add(b)).collect(),
            sigma: self.sigma.clone(),
        }
    }
}

/// The scalar `c` with `σ^{⊗d}(ω) = c·ω`.
pub fn hdet<F: Field>(alg: &CertifiedAlgebra<F>, sigma: &GradedAutomorphism<F>) -> Result<F> {
    let image = sigma.apply(alg.omega());
    image
        .ratio_to(alg.omega())
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Invariant(format!("σ^⊗d(ω) = {image} is not a nonzero multiple of ω")))
}

/// The unique `ν` with `ω = (-1)^{D-1} τ^{D-1} (ν⊗id)(ω)`, `D = deg ω`.
pub fn twist_solve<F: Field>(omega: &Tensor<F>) -> Result<Matrix<F>> {
    let (n, degree) = (omega.n(), omega.degree());
    if degree == 0 || omega.is_zero() {
        return Err(Error::InvalidInput("twist condition needs a nonzero tensor of positive degree".into()));
    }
    let sign = F::sign(degree - 1);
    let mut rests: Vec<Vec<usize>> = omega.terms().flat_map(|(w, _)| [w[1..].to_vec(), w[..degree - 1].to_vec()]).collect();
    rests.sort();
    rests.dedup();
    let mut rows = Vec::with_capacity(rests.len() * n);
    let mut rhs = Vec::with_capacity(rests.len() * n);
    for rest in &rests {
        for b in 0..n {
            let mut row = vec![F::zero(); n * n];
            for a in 0..n {
                let mut w = vec![a];
                w.extend_from_slice(rest);
                let c = omega.coeff(&w);
                if !c.is_zero() {
                    row[a * n + b] = sign.clone() * c;
                }
            }
            let mut w = rest.clone();
            w.push(b);
            rows.push(row);
            rhs.push(omega.coeff(&w));
        }
    }
    let system = Matrix::from_rows(rows)?;
    let sol = system.solve_affine(&rhs).map_err(|_| Error::NotAsRegular("ω is not a twisted superpotential".into()))?;
    if sol.kernel.dim() != 0 {
        return Err(Error::NonUniqueTwist { kernel_dim: sol.kernel.dim() });
    }
    Matrix::new(n, n, sol.particular)
}

/// Checks the twist condition for a given `ν`.
pub fn is_twisted_superpotential<F: Field>(omega: &Tensor<F>, nu: &Matrix<F>) -> bool {
    let d = omega.degree();
    if d == 0 {
        return false;
    }
    let Ok(twisted) = omega.apply_at_slot(nu, 0).and_then(|t| t.tau_shift(d - 1)) else {
        return false;
    };
    twisted.scale(&F::sign(d - 1)) == *omega
}

/// `μ_A`, from the twisted-superpotential condition on `ω`.
pub fn nakayama_of_a<F: Field>(alg: &CertifiedAlgebra<F>) -> Result<GradedAutomorphism<F>> {
    let nu = twist_solve(alg.omega())?;
    check_automorphism(&nu, alg.algebra())
}

/// `-(Q^{-1})^T Q` for the relation `r = x^T Q x`.
pub fn nakayama_of_a_dim2_closed_form<F: Field>(q: &Matrix<F>) -> Result<Matrix<F>> {
    let inv = q.inverse()?;
    Ok(inv.transpose().mul(q)?.scale(&-F::one()))
}
