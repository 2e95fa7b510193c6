//! Polynomial algebras `k[x_1, …, x_n]`, the antisymmetrizers `r_I` spanning
//! their Koszul spaces, and the closed-form sequence pair for `σ = id`.

use crate::algebra::{CertifiedAlgebra, QuadraticAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{SubspaceMap, Subspace, Tensor};
use crate::ore::SequencePair;

/// `T(V)/(x_i⊗x_j − x_j⊗x_i : i < j)`.
pub fn make_polynomial<F: Field>(n: usize) -> Result<QuadraticAlgebra<F>> {
    if n == 0 {
        return Err(Error::InvalidInput("a polynomial algebra needs at least one variable".into()));
    }
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            relations.push(commutator(n, i, j));
        }
    }
    QuadraticAlgebra::new(n, &relations)
}

fn commutator<F: Field>(n: usize, i: usize, j: usize) -> Tensor<F> {
    let mut t = Tensor::word(n, vec![i, j]);
    t.add_term(vec![j, i], -F::one());
    t
}

/// `r_{i_1⋯i_m}` for arbitrary 0-based indices, with `r_i = x_i`.
pub(crate) fn r_tensor<F: Field>(n: usize, indices: &[usize]) -> Tensor<F> {
    let m = indices.len();
    if m == 0 {
        return Tensor::scalar(n, F::one());
    }
    if m == 1 {
        return Tensor::generator(n, indices[0]);
    }
    let mut out = Tensor::zero(n, m);
    for j in 0..m {
        let mut rest = indices.to_vec();
        let last = rest.remove(j);
        let term = r_tensor(n, &rest).tensor(&Tensor::generator(n, last));
        out.add_scaled(&term, &F::sign(m - 1 - j));
    }
    out
}

/// `r_{i_1⋯i_m}` for strictly increasing 1-based indices, `m ≥ 2`.
pub fn r_basis_tensor<F: Field>(n: usize, indices: &[usize]) -> Result<Tensor<F>> {
    if indices.len() < 2 {
        return Err(Error::InvalidInput("r_I needs at least two indices".into()));
    }
    if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::OutOfRange { index: bad, limit: n });
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(format!("indices {indices:?} are not strictly increasing")));
    }
    let zero_based: Vec<usize> = indices.iter().map(|i| i - 1).collect();
    Ok(r_tensor(n, &zero_based))
}

/// All strictly increasing 0-based index tuples of length `m` in `0..n`.
pub(crate) fn increasing_tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// `k^{(i)}_{st}`, the coefficient of `x_s⊗x_t` in `δ(x_i)`.
fn derivation_coefficients<F: Field>(images: &[Tensor<F>]) -> Vec<Vec<Vec<F>>> {
    let n = images.len();
    images.iter().map(|img| (0..n).map(|s| (0..n).map(|t| img.coeff(&[s, t])).collect()).collect()).collect()
}

/// `Σ_i ∂δ(x_i)/∂x_i` computed on the commutative images.
pub fn polynomial_divergence_oracle<F: Field>(images: &[Tensor<F>]) -> Tensor<F> {
    let n = images.len();
    let k = derivation_coefficients(images);
    let mut out = Tensor::zero(n, 1);
    for (s, ks) in k.iter().enumerate() {
        for t in 0..n {
            out.add_term(vec![t], ks[s][t].clone() + ks[t][s].clone());
        }
    }
    out
}

/// The sequence pair of a lift with `σ = id` on `k[x_1..x_n]`, given on the basis `r_I`:
/// `δ_{m,r}(r_I) = Σ_j Σ_{s,t} k^{(i_j)}_{st} r_{I[i_j→s]}⊗x_t` and
/// `δ_{m,l}(r_I) = Σ_j Σ_{s,t} k^{(i_j)}_{st} x_s⊗r_{I[i_j→t]}`.
pub fn polynomial_sequence_pair<F: Field>(alg: &CertifiedAlgebra<F>, images: &[Tensor<F>]) -> Result<SequencePair<F>> {
    let n = alg.n();
    if images.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: images.len() });
    }
    let k = derivation_coefficients(images);
    let zero = SubspaceMap::new(n, 0, Subspace::full(1), vec![Tensor::zero(n, 1)])?;
    let first = SubspaceMap::new(n, 1, Subspace::full(n), images.to_vec())?;
    let mut right = vec![zero.clone(), first.clone()];
    let mut left = vec![zero, first];
    for m in 2..=alg.d() {
        let tuples = increasing_tuples(n, m);
        let vectors: Vec<Tensor<F>> = tuples.iter().map(|idx| r_tensor(n, idx)).collect();
        let mut r_images = Vec::with_capacity(tuples.len());
        let mut l_images = Vec::with_capacity(tuples.len());
        for idx in &tuples {
            let mut r_img = Tensor::zero(n, m + 1);
            let mut l_img = Tensor::zero(n, m + 1);
            for (j, &ij) in idx.iter().enumerate() {
                for s in 0..n {
                    for t in 0..n {
                        let c = &k[ij][s][t];
                        if c.is_zero() {
                            continue;
                        }
                        let mut changed = idx.clone();
                        changed[j] = s;
                        r_img.add_scaled(&r_tensor(n, &changed).tensor(&Tensor::generator(n, t)), c);
                        changed[j] = t;
                        l_img.add_scaled(&Tensor::generator(n, s).tensor(&r_tensor(n, &changed)), c);
                    }
                }
            }
            r_images.push(r_img);
            l_images.push(l_img);
        }
        right.push(SubspaceMap::from_basis_images(n, m, &vectors, r_images)?);
        left.push(SubspaceMap::from_basis_images(n, m, &vectors, l_images)?);
    }
    SequencePair::new(right, left)
}
