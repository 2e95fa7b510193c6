//! Two-generator AS-regular algebras `k⟨x_1,x_2⟩/(x^T Q x)` and their
//! closed-form Nakayama data.
//!
//! A lift is written `δ(x_i) = γ_{i1} x_1⊗x_1 + γ_{i2} x_2⊗x_1 + γ_{i3} x_2⊗x_2`;
//! `Gamma` stores `γ_{ij}` at `[i-1][j-1]`.

use crate::algebra::QuadraticAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Tensor};
use crate::morphisms::nakayama_of_a_dim2_closed_form;

pub type Gamma<F> = [[F; 3]; 2];

const GAMMA_WORDS: [[usize; 2]; 3] = [[0, 0], [1, 0], [1, 1]];

#[derive(Clone, Debug, PartialEq)]
pub enum Dim2Kind<F> {
    Commutative,
    Quantum(F),
    Jordan,
    /// Any other invertible `Q`.
    General,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dim2Family<F> {
    pub kind: Dim2Kind<F>,
    pub q_matrix: Matrix<F>,
    pub relation: Tensor<F>,
}

impl<F: Field> Dim2Family<F> {
    pub fn commutative() -> Self {
        Self::build(Dim2Kind::Commutative, Matrix::from_ints(&[&[0, 1], &[-1, 0]]))
    }

    /// `x_1x_2 − q x_2x_1`; `q = 1` gives the commutative family.
    pub fn quantum(q: F) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidInput("the quantum plane needs q ≠ 0".into()));
        }
        if q.is_one() {
            return Ok(Self::commutative());
        }
        let m = Matrix::from_rows(vec![vec![F::zero(), F::one()], vec![-q.clone(), F::zero()]])?;
        Ok(Self::build(Dim2Kind::Quantum(q), m))
    }

    pub fn jordan() -> Self {
        Self::build(Dim2Kind::Jordan, Matrix::from_ints(&[&[0, 1], &[-1, -1]]))
    }

    /// The relation `x^T Q x` for an arbitrary invertible `Q`.
    pub fn from_q(q: Matrix<F>) -> Result<Self> {
        if q.rows() != 2 || q.cols() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: q.rows() });
        }
        q.inverse()?;
        Ok(Self::build(Dim2Kind::General, q))
    }

    fn build(kind: Dim2Kind<F>, q: Matrix<F>) -> Self {
        let mut relation = Tensor::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                relation.add_term(vec![i, j], q.get(i, j).clone());
            }
        }
        Dim2Family { kind, q_matrix: q, relation }
    }

    pub fn algebra(&self) -> QuadraticAlgebra<F> {
        QuadraticAlgebra::new(2, std::slice::from_ref(&self.relation)).expect("a single quadratic relation")
    }

    pub fn mu_a(&self) -> Matrix<F> {
        nakayama_of_a_dim2_closed_form(&self.q_matrix).expect("Q is invertible")
    }

    pub fn is_commutative(&self) -> bool {
        self.kind == Dim2Kind::Commutative
    }

    /// The lift with the given `γ`.
    pub fn lift(&self, gamma: &Gamma<F>) -> Vec<Tensor<F>> {
        gamma_lift(gamma)
    }

    /// `γ` of a lift after reducing its `x_1⊗x_2` terms with the relation.
    pub fn gamma_of(&self, images: &[Tensor<F>]) -> Result<Gamma<F>> {
        if images.len() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: images.len() });
        }
        let lead = self.q_matrix.get(0, 1).clone();
        if lead.is_zero() {
            return Err(Error::InvalidInput("γ needs a relation with an x1⊗x2 term".into()));
        }
        Ok(std::array::from_fn(|i| {
            let c = images[i].coeff(&[0, 1]) / lead.clone();
            let reduced = images[i].sub(&self.relation.scale(&c));
            std::array::from_fn(|j| reduced.coeff(&GAMMA_WORDS[j]))
        }))
    }
}

pub fn gamma_lift<F: Field>(gamma: &Gamma<F>) -> Vec<Tensor<F>> {
    gamma
        .iter()
        .map(|row| {
            let mut t = Tensor::zero(2, 2);
            for (c, w) in row.iter().zip(GAMMA_WORDS) {
                t.add_term(w.to_vec(), c.clone());
            }
            t
        })
        .collect()
}

fn entries<F: Field>(m: &Matrix<F>) -> [[F; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| m.get(i, j).clone()))
}

/// The scalar `h` with `M^T Q M = h Q`, i.e. `σ^{⊗2}(r) = h r`.
pub fn dim2_hdet<F: Field>(q: &Matrix<F>, m: &Matrix<F>) -> Result<F> {
    let image = m.transpose().mul(q)?.mul(m)?;
    let (i, j) = (0..4).map(|k| (k / 2, k % 2)).find(|&(i, j)| !q.get(i, j).is_zero()).ok_or(Error::Singular)?;
    let h = image.get(i, j).clone() / q.get(i, j).clone();
    if image != q.scale(&h) || h.is_zero() {
        return Err(Error::NotAdmissible("σ does not rescale the relation".into()));
    }
    Ok(h)
}

/// `[[−M⁻¹(Q^T)⁻¹Q, 0], [c_r − c_l M⁻¹(Q^T)⁻¹Q, hdet]]` on `(x_1, x_2, z)`.
pub fn dim2_nakayama_oracle<F: Field>(q: &Matrix<F>, m: &Matrix<F>, c_r: &[F], c_l: &[F]) -> Result<Matrix<F>> {
    if c_r.len() != 2 || c_l.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: c_r.len().min(c_l.len()) });
    }
    let twist = m.inverse()?.mul(&q.transpose().inverse()?)?.mul(q)?;
    let x_block = twist.scale(&-F::one());
    let moved = twist.apply_row(c_l);
    let h = dim2_hdet(q, m)?;
    let mut out = Matrix::zeros(3, 3);
    for i in 0..2 {
        for j in 0..2 {
            out.set(i, j, x_block.get(i, j).clone());
        }
        out.set(2, i, c_r[i].clone() - moved[i].clone());
    }
    out.set(2, 2, h);
    Ok(out)
}

fn is_diagonal<F: Field>(m: &[[F; 2]; 2]) -> bool {
    m[0][1].is_zero() && m[1][0].is_zero()
}

fn is_antidiagonal<F: Field>(m: &[[F; 2]; 2]) -> bool {
    m[0][0].is_zero() && m[1][1].is_zero()
}

fn is_minus_one<F: Field>(q: &F) -> bool {
    (q.clone() + F::one()).is_zero()
}

/// The four residuals of the admissibility system of the family at `(M, γ)`;
/// all vanish exactly when `δ(r) ∈ r⊗V + V⊗r`.
pub fn admissibility_residuals<F: Field>(family: &Dim2Family<F>, m: &Matrix<F>, gamma: &Gamma<F>) -> Result<[F; 4]> {
    let [[m11, m12], [m21, m22]] = entries(m);
    let [[g11, g12, g13], [g21, g22, g23]] = gamma.clone();
    let one = F::one;
    let f = |k: i64| F::from_int(k);
    match &family.kind {
        Dim2Kind::Commutative => Ok([
            m21.clone() * g11.clone() + (one() - m11.clone()) * g21.clone(),
            (one() - m22.clone()) * g13.clone() + m12.clone() * g23.clone(),
            (m22.clone() - one()) * g11 + m21.clone() * g12.clone() - m12.clone() * g21 + (one() - m11.clone()) * g22.clone(),
            (m22 - one()) * g12 + m21 * g13 - m12 * g22 + (one() - m11) * g23,
        ]),
        Dim2Kind::Quantum(q) if is_minus_one(q) && is_antidiagonal(&entries(m)) && !is_diagonal(&entries(m)) => Ok([
            m21.clone() * g11.clone() + g21.clone(),
            m12.clone() * g23.clone() + g13.clone(),
            g11 - m21.clone() * g12.clone() + m12.clone() * g21 + g22.clone(),
            -g12 + m21 * g13 + m12 * g22 + g23,
        ]),
        Dim2Kind::Quantum(q) => {
            if !is_diagonal(&entries(m)) {
                return Err(Error::NotAdmissible("σ must be diagonal on this quantum plane".into()));
            }
            Ok([
                (m11.clone() - q.clone()) * g21,
                (one() - q.clone() * m22.clone()) * g13,
                (m22.clone() - q.clone()) * g11 + (one() - m11.clone()) * g22,
                (m22 - one()) * g12 + (one() - q.clone() * m11) * g23,
            ])
        }
        Dim2Kind::Jordan => {
            if !(m21.is_zero() && m11 == m22) {
                return Err(Error::NotAdmissible("σ must be upper triangular with equal diagonal on the Jordan plane".into()));
            }
            Ok([
                (m11.clone() - one()) * g21.clone(),
                (m11.clone() - one()) * g11.clone()
                    + (m11.clone() - m12.clone() + one()) * g21.clone()
                    + (one() - m11.clone()) * g22.clone(),
                -(m11.clone() + one()) * g11.clone()
                    + (m11.clone() - one()) * g12.clone()
                    + (one() - m11.clone() + m12.clone()) * g21.clone()
                    + (m11.clone() - m12.clone()) * g22.clone()
                    + (one() - m11.clone()) * g23.clone(),
                -f(2) * g11 - g12 + (m11.clone() - one()) * g13 + f(2) * g21 + g22 + (one() - m11 - m12) * g23,
            ])
        }
        Dim2Kind::General => Err(Error::InvalidInput("no closed-form system for a general Q".into())),
    }
}

/// `(c_r, c_l)` with `δ(r) = r⊗(c_r·x) + (c_l·x)⊗r` for an admissible `γ`-lift.
pub fn dim2_delta_lr<F: Field>(family: &Dim2Family<F>, m: &Matrix<F>, gamma: &Gamma<F>) -> Result<(Vec<F>, Vec<F>)> {
    let [[m11, m12], [m21, m22]] = entries(m);
    let [[g11, g12, g13], [g21, g22, g23]] = gamma.clone();
    match &family.kind {
        Dim2Kind::Commutative => Ok((
            vec![m22.clone() * g11.clone() - m12.clone() * g21 + g22.clone(), m11 * g23.clone() - m21 * g13],
            vec![g11, m22 * g12 - m12 * g22 + g23],
        )),
        Dim2Kind::Quantum(q) if is_minus_one(q) && is_antidiagonal(&entries(m)) && !is_diagonal(&entries(m)) => Ok((
            vec![m12.clone() * g21 + g22.clone(), m21 * g13],
            vec![g11, m12 * g22 + g23],
        )),
        Dim2Kind::Quantum(_) => Ok((
            vec![m22.clone() * g11.clone() + g22, m11 * g23.clone()],
            vec![g11, m22 * g12 + g23],
        )),
        Dim2Kind::Jordan => Ok((
            vec![
                m11.clone() * g11.clone() + (m11.clone() - m12) * g21.clone() + g22.clone(),
                g11.clone() - g21.clone() + m11.clone() * g23.clone(),
            ],
            vec![g11.clone() - g21.clone(), g11 + g12 - g21 - g22 + m11 * g23],
        )),
        Dim2Kind::General => Err(Error::InvalidInput("no closed-form δ_r, δ_l for a general Q".into())),
    }
}

/// `μ_B` on `(x_1, x_2, z)` from the family's explicit formulas; valid for admissible `(M, γ)`.
///
/// On the antidiagonal `q = −1` branch the explicit form covers `m_12 m_21 ≠ 1`;
/// for `m_12 m_21 = 1` the block-matrix oracle is used with the explicit `δ_r, δ_l`.
pub fn closed_form_mu_b<F: Field>(family: &Dim2Family<F>, m: &Matrix<F>, gamma: &Gamma<F>) -> Result<Matrix<F>> {
    let [[m11, m12], [m21, m22]] = entries(m);
    let [[g11, g12, _], [g21, g22, g23]] = gamma.clone();
    let one = F::one;
    let f = |k: i64| F::from_int(k);
    let inv = |x: &F| x.inv();
    let rows: [[F; 3]; 3] = match &family.kind {
        Dim2Kind::Commutative => {
            let minv = m.inverse()?;
            let (c_r, c_l) = dim2_delta_lr(family, m, gamma)?;
            let moved = minv.apply_row(&c_l);
            [
                [minv.get(0, 0).clone(), minv.get(0, 1).clone(), F::zero()],
                [minv.get(1, 0).clone(), minv.get(1, 1).clone(), F::zero()],
                [c_r[0].clone() + moved[0].clone(), c_r[1].clone() + moved[1].clone(), m.determinant()?],
            ]
        }
        Dim2Kind::Quantum(q) if is_minus_one(q) && is_antidiagonal(&entries(m)) && !is_diagonal(&entries(m)) => {
            if (m12.clone() * m21.clone()).is_one() {
                let (c_r, c_l) = dim2_delta_lr(family, m, gamma)?;
                return dim2_nakayama_oracle(&family.q_matrix, m, &c_r, &c_l);
            }
            [
                [F::zero(), -inv(&m21), F::zero()],
                [-inv(&m12), F::zero(), F::zero()],
                [
                    m12.clone() * g21.clone() - g23.clone() / m12.clone(),
                    g21 / (m21.clone() * m21.clone()) - m12.clone() * m21.clone() * g23,
                    m12 * m21,
                ],
            ]
        }
        Dim2Kind::Quantum(q) => {
            if !is_diagonal(&entries(m)) {
                return Err(Error::NotAdmissible("σ must be diagonal on this quantum plane".into()));
            }
            [
                [q.clone() / m11.clone(), F::zero(), F::zero()],
                [F::zero(), inv(&(q.clone() * m22.clone())), F::zero()],
                [
                    (m22.clone() + q.clone() / m11.clone()) * g11 + g22,
                    (m11.clone() + inv(&(q.clone() * m22.clone()))) * g23 + g12 / q.clone(),
                    m11 * m22,
                ],
            ]
        }
        Dim2Kind::Jordan => {
            let a = m11.clone();
            let a_inv = inv(&a);
            let a_inv2 = a_inv.clone() * a_inv.clone();
            [
                [a_inv.clone(), f(2) * a_inv.clone() - a_inv2.clone() * m12.clone(), F::zero()],
                [F::zero(), a_inv.clone(), F::zero()],
                [
                    (a.clone() + a_inv.clone()) * g11.clone() + (a.clone() - a_inv.clone() - m12.clone()) * g21.clone() + g22.clone(),
                    (one() + f(3) * a_inv.clone() - a_inv2.clone() * m12.clone()) * g11
                        + a_inv.clone() * g12
                        + (a_inv2 * m12 - f(3) * a_inv.clone() - one()) * g21
                        - a_inv * g22
                        + (one() + a.clone()) * g23,
                    a.clone() * a,
                ],
            ]
        }
        Dim2Kind::General => return Err(Error::InvalidInput("no closed form for a general Q".into())),
    };
    Matrix::from_rows(rows.into_iter().map(Vec::from).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub enum CyWitness<F> {
    /// `l = (l_1, l_2, l_3, l_4)` when `δ` has the divergence-free shape.
    Commutative { sigma_is_identity: bool, l: Option<[F; 4]>, violated: Option<String> },
    Noncommutative { mu_a: Matrix<F>, sigma_equals_mu_a: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyVerdict<F> {
    pub calabi_yau: bool,
    pub witness: CyWitness<F>,
}

/// Decides whether `A[z; σ, δ]` is Calabi-Yau for a noetherian two-generator family,
/// without running the Ore pipeline.
pub fn cy_classifier_dim2<F: Field>(family: &Dim2Family<F>, sigma: &Matrix<F>, images: &[Tensor<F>]) -> Result<CyVerdict<F>> {
    match family.kind {
        Dim2Kind::General => Err(Error::InvalidInput("the classifier covers the quantum, Jordan and commutative planes".into())),
        Dim2Kind::Commutative => {
            let sigma_is_identity = *sigma == Matrix::identity(2);
            let g = family.gamma_of(images)?;
            let two = F::from_int(2);
            let violated = if !sigma_is_identity {
                Some("σ is not the identity".to_string())
            } else if g[1][1] != -two.clone() * g[0][0].clone() {
                Some("the x2x1 coefficient of δ(x2) is not −2 times the x1² coefficient of δ(x1)".to_string())
            } else if g[0][1] != -two * g[1][2].clone() {
                Some("the x2x1 coefficient of δ(x1) is not −2 times the x2² coefficient of δ(x2)".to_string())
            } else {
                None
            };
            let l = violated.is_none().then(|| [g[0][0].clone(), g[0][2].clone(), g[1][0].clone(), g[1][2].clone()]);
            Ok(CyVerdict { calabi_yau: violated.is_none(), witness: CyWitness::Commutative { sigma_is_identity, l, violated } })
        }
        _ => {
            let mu_a = family.mu_a();
            let sigma_equals_mu_a = *sigma == mu_a;
            Ok(CyVerdict { calabi_yau: sigma_equals_mu_a, witness: CyWitness::Noncommutative { mu_a, sigma_equals_mu_a } })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::{check_automorphism, extend_derivation, nakayama_of_a};
    use crate::ore::{decompose_delta2, nakayama_of_b, CheckLevel};
    use crate::Rational;
    use num_traits::Zero;

    type M = Matrix<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn r(a: i64, b: i64) -> Rational {
        Rational::from_ratio(a, b)
    }

    fn gamma(v: [i64; 6]) -> Gamma<Rational> {
        [[q(v[0]), q(v[1]), q(v[2])], [q(v[3]), q(v[4]), q(v[5])]]
    }

    #[test]
    fn relations_match_their_q() {
        assert_eq!(Dim2Family::<Rational>::commutative().relation.to_string(), "x1⊗x2 - x2⊗x1");
        assert_eq!(Dim2Family::quantum(q(-1)).unwrap().relation.to_string(), "x1⊗x2 + x2⊗x1");
        assert_eq!(Dim2Family::<Rational>::jordan().relation.to_string(), "x1⊗x2 - x2⊗x1 - x2⊗x2");
        assert_eq!(Dim2Family::quantum(q(1)).unwrap().kind, Dim2Kind::Commutative);
        assert!(Dim2Family::quantum(q(0)).is_err());
        assert!(Dim2Family::from_q(M::from_ints(&[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn quantum_minus_one_top_form() {
        let alg = Dim2Family::quantum(q(-1)).unwrap().algebra().certify(None).unwrap();
        let omega = alg.omega();
        assert_eq!(omega.coeff(&[0, 1]), omega.coeff(&[1, 0]));
        assert_eq!(omega.len(), 2);
    }

    #[test]
    fn closed_form_mu_a() {
        assert_eq!(Dim2Family::<Rational>::jordan().mu_a(), M::from_ints(&[&[1, 2], &[0, 1]]));
        let three = Dim2Family::quantum(q(3)).unwrap();
        assert_eq!(three.mu_a(), M::diagonal(&[q(3), r(1, 3)]));
        for fam in [Dim2Family::<Rational>::jordan(), three, Dim2Family::commutative()] {
            let alg = fam.algebra().certify(None).unwrap();
            assert_eq!(*nakayama_of_a(&alg).unwrap().matrix(), fam.mu_a());
        }
    }

    #[test]
    fn hdet_of_diagonal_and_commutative() {
        let fam = Dim2Family::quantum(q(2)).unwrap();
        assert_eq!(dim2_hdet(&fam.q_matrix, &M::diagonal(&[q(3), r(1, 5)])).unwrap(), r(3, 5));
        let comm = Dim2Family::<Rational>::commutative();
        let m = M::from_ints(&[&[2, 3], &[1, 4]]);
        assert_eq!(dim2_hdet(&comm.q_matrix, &m).unwrap(), q(5));
        assert!(dim2_hdet(&fam.q_matrix, &m).is_err());
    }

    #[test]
    fn oracle_identity_case() {
        let comm = Dim2Family::<Rational>::commutative();
        let mu = dim2_nakayama_oracle(&comm.q_matrix, &M::identity(2), &[q(0), q(0)], &[q(0), q(0)]).unwrap();
        assert_eq!(mu, M::identity(3));
        assert!(dim2_nakayama_oracle(&M::zeros(2, 2), &M::identity(2), &[q(0), q(0)], &[q(0), q(0)]).is_err());
    }

    #[test]
    fn oracle_reproduces_quantum_and_jordan_x_blocks() {
        let fam = Dim2Family::quantum(q(2)).unwrap();
        let m = M::diagonal(&[q(3), q(5)]);
        let mu = dim2_nakayama_oracle(&fam.q_matrix, &m, &[q(0), q(0)], &[q(0), q(0)]).unwrap();
        assert_eq!(*mu.get(0, 0), r(2, 3));
        assert_eq!(*mu.get(1, 1), r(1, 10));
        let jordan = Dim2Family::<Rational>::jordan();
        let m = M::from_ints(&[&[3, 5], &[0, 3]]);
        let mu = dim2_nakayama_oracle(&jordan.q_matrix, &m, &[q(0), q(0)], &[q(0), q(0)]).unwrap();
        assert_eq!(*mu.get(0, 0), r(1, 3));
        assert_eq!(*mu.get(0, 1), r(2, 3) - r(5, 9));
        assert_eq!(*mu.get(1, 1), r(1, 3));
    }

    #[test]
    fn gamma_round_trip_and_reduction() {
        let fam = Dim2Family::<Rational>::jordan();
        let g = gamma([1, 2, 3, 4, 5, 6]);
        assert_eq!(fam.gamma_of(&gamma_lift(&g)).unwrap(), g);
        let mut shifted = gamma_lift(&g);
        shifted[0] = shifted[0].add(&fam.relation.scale(&q(7)));
        assert_eq!(fam.gamma_of(&shifted).unwrap(), g);
    }

    #[test]
    fn residuals_agree_with_engine_admissibility() {
        let cases: Vec<(Dim2Family<Rational>, M)> = vec![
            (Dim2Family::commutative(), M::from_ints(&[&[2, 1], &[3, 1]])),
            (Dim2Family::quantum(q(-1)).unwrap(), M::diagonal(&[q(-1), q(2)])),
            (Dim2Family::quantum(q(-1)).unwrap(), M::from_ints(&[&[0, 2], &[3, 0]])),
            (Dim2Family::quantum(q(3)).unwrap(), M::diagonal(&[q(3), r(1, 3)])),
            (Dim2Family::jordan(), M::from_ints(&[&[1, 2], &[0, 1]])),
            (Dim2Family::jordan(), M::from_ints(&[&[2, 0], &[0, 2]])),
        ];
        let samples = [[0, 0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0], [1, -2, 3, 0, 1, 0], [0, 1, 0, 0, 0, 1], [2, 1, 0, 1, 2, 1]];
        for (fam, m) in cases {
            let alg = fam.algebra();
            let sigma = check_automorphism(&m, &alg).unwrap();
            for s in samples {
                let g = gamma(s);
                let zero = admissibility_residuals(&fam, &m, &g).unwrap().iter().all(|x| x.is_zero());
                let admissible = extend_derivation(gamma_lift(&g), &sigma, &alg).is_ok();
                assert_eq!(zero, admissible, "{:?} {m:?} {s:?}", fam.kind);
            }
        }
    }

    #[test]
    fn explicit_delta_lr_match_the_generic_split() {
        // Admissible lifts: σ = id on k[x1,x2] and σ = μ_A on the Jordan plane.
        let cases = vec![
            (Dim2Family::<Rational>::commutative(), M::identity(2), gamma([1, 2, 3, 4, 5, 6])),
            (Dim2Family::jordan(), M::from_ints(&[&[1, 2], &[0, 1]]), [[r(1, 2), q(0), q(5)], [q(1), q(1), q(1)]]),
        ];
        for (fam, m, g) in cases {
            let alg = fam.algebra().certify(None).unwrap();
            let sigma = check_automorphism(&m, alg.algebra()).unwrap();
            let delta = extend_derivation(gamma_lift(&g), &sigma, alg.algebra()).unwrap();
            let (c_r, c_l) = dim2_delta_lr(&fam, &m, &g).unwrap();
            let (right, left) = decompose_delta2(&alg, &delta).unwrap();
            let rr = fam.relation.tensor(&Tensor::from_dense(2, 1, &c_r));
            let ll = Tensor::from_dense(2, 1, &c_l).tensor(&fam.relation);
            assert_eq!(right.apply(&fam.relation).unwrap().add(&left.apply(&fam.relation).unwrap()), rr.add(&ll));
            let report = nakayama_of_b(&alg, &delta, CheckLevel::Paranoid).unwrap();
            assert_eq!(report.mu_b, closed_form_mu_b(&fam, &m, &g).unwrap());
            assert_eq!(report.mu_b, dim2_nakayama_oracle(&fam.q_matrix, &m, &c_r, &c_l).unwrap());
        }
    }

    #[test]
    fn jordan_z_row_needs_the_full_gamma21_coefficient() {
        // σ = μ_A with γ21 ≠ 0: the extension is Calabi-Yau, so the z-row vanishes.
        let fam = Dim2Family::<Rational>::jordan();
        let m = M::from_ints(&[&[1, 2], &[0, 1]]);
        let g = [[q(1), q(0), q(0)], [q(1), q(0), q(0)]];
        let alg = fam.algebra().certify(None).unwrap();
        let sigma = check_automorphism(&m, alg.algebra()).unwrap();
        let delta = extend_derivation(gamma_lift(&g), &sigma, alg.algebra()).unwrap();
        let report = nakayama_of_b(&alg, &delta, CheckLevel::Fast).unwrap();
        assert!(report.calabi_yau);
        assert_eq!(closed_form_mu_b(&fam, &m, &g).unwrap(), M::identity(3));
        // Without the −γ21 term the x2 entry would be γ21 = 1.
        let short = (q(1) + q(3) - q(2)) * g[0][0].clone() + (q(2) - q(3)) * g[1][0].clone();
        assert_eq!(short, q(1));
    }

    #[test]
    fn classifier_examples() {
        let comm = Dim2Family::<Rational>::commutative();
        let (l1, l2, l3, l4) = (q(1), q(2), q(3), q(4));
        let g = [[l1.clone(), -q(2) * l4.clone(), l2.clone()], [l3.clone(), -q(2) * l1.clone(), l4.clone()]];
        let v = cy_classifier_dim2(&comm, &M::identity(2), &gamma_lift(&g)).unwrap();
        assert!(v.calabi_yau);
        assert_eq!(v.witness, CyWitness::Commutative { sigma_is_identity: true, l: Some([l1, l2, l3, l4]), violated: None });
        let v = cy_classifier_dim2(&comm, &M::identity(2), &gamma_lift(&gamma([1, 0, 0, 0, 0, 0]))).unwrap();
        assert!(!v.calabi_yau);
        let three = Dim2Family::quantum(q(3)).unwrap();
        let v = cy_classifier_dim2(&three, &M::diagonal(&[q(3), r(1, 3)]), &gamma_lift(&gamma([0; 6]))).unwrap();
        assert!(v.calabi_yau);
        assert!(cy_classifier_dim2(&Dim2Family::from_q(M::identity(2)).unwrap(), &M::identity(2), &[]).is_err());
    }
}
