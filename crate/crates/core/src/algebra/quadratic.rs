//! Quadratic algebras `A = T(V)/(R)`, their Koszul spaces and certification.

use crate::algebra::GradedPieces;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{power_dim, Matrix, Subspace, Tensor};

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticAlgebra<F> {
    n: usize,
    names: Vec<String>,
    relations: Subspace<F>,
}

/// Rank of one Koszul differential `∂_i : W_i⊗A_j → W_{i-1}⊗A_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialRank {
    pub homological: usize,
    pub internal: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
}

/// Outcome of the finite Koszul and AS-regularity checks up to a degree bound.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulCertificate<F> {
    pub bound: usize,
    /// `dim W_i` for `0 ≤ i ≤ bound`.
    pub koszul_dims: Vec<usize>,
    /// `dim A_m` for `0 ≤ m ≤ bound`.
    pub algebra_dims: Vec<usize>,
    pub ranks: Vec<DifferentialRank>,
    pub as_regular: bool,
    pub global_dimension: Option<usize>,
    /// Canonical basis tensor of `W_d` when `d` was found.
    pub omega: Option<Tensor<F>>,
}

impl<F> KoszulCertificate<F> {
    pub fn rank(&self, homological: usize, internal: usize) -> Option<usize> {
        self.ranks.iter().find(|r| r.homological == homological && r.internal == internal).map(|r| r.rank)
    }
}

/// An algebra that passed the Koszul and AS-regularity certificate, with the
/// data every later computation needs precomputed.
#[derive(Clone, Debug)]
pub struct CertifiedAlgebra<F> {
    algebra: QuadraticAlgebra<F>,
    d: usize,
    omega: Tensor<F>,
    koszul: Vec<Subspace<F>>,
    pieces: GradedPieces<F>,
    certificate: KoszulCertificate<F>,
}

impl<F: Field> QuadraticAlgebra<F> {
    /// The algebra with relation space spanned by the given degree-two tensors.
    pub fn new(n: usize, relations: &[Tensor<F>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("an algebra needs at least one generator".into()));
        }
        for r in relations {
            if r.n() != n || r.degree() != 2 {
                return Err(Error::InvalidInput(format!("relation {r} is not a quadratic tensor over {n} generators")));
            }
        }
        let span = Subspace::span(n * n, relations.iter().map(Tensor::to_dense).collect());
        Self::from_subspace(n, span)
    }

    pub fn from_subspace(n: usize, relations: Subspace<F>) -> Result<Self> {
        if relations.ambient() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: relations.ambient() });
        }
        Ok(QuadraticAlgebra { n, names: (1..=n).map(|i| format!("x{i}")).collect(), relations })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: names.len() });
        }
        for (k, a) in names.iter().enumerate() {
            if a.is_empty() || names[..k].contains(a) {
                return Err(Error::InvalidInput(format!("generator name {a:?} is empty or repeated")));
            }
        }
        self.names = names;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &Subspace<F> {
        &self.relations
    }

    /// The canonical basis of `R` as tensors.
    pub fn relation_basis(&self) -> Vec<Tensor<F>> {
        self.relations.basis().iter().map(|v| Tensor::from_dense(self.n, 2, v)).collect()
    }

    /// `Σ_s V^{⊗s} ⊗ R ⊗ V^{⊗m-s-2}`; zero for `m < 2`.
    pub fn ideal_component(&self, m: usize) -> Subspace<F> {
        let mut acc = Subspace::zero(power_dim(self.n, m));
        if m < 2 {
            return acc;
        }
        for s in 0..=m - 2 {
            let shifted = self.relations.embed(power_dim(self.n, s), power_dim(self.n, m - s - 2));
            acc = acc.sum(&shifted).expect("same ambient");
        }
        acc
    }

    /// `W_i = ⋂_s V^{⊗s} ⊗ R ⊗ V^{⊗i-s-2}` by direct intersection.
    pub fn koszul_space(&self, i: usize) -> Subspace<F> {
        match i {
            0 => Subspace::full(1),
            1 => Subspace::full(self.n),
            _ => {
                let mut acc = Subspace::full(power_dim(self.n, i));
                for s in 0..=i - 2 {
                    let shifted = self.relations.embed(power_dim(self.n, s), power_dim(self.n, i - s - 2));
                    acc = acc.intersect(&shifted).expect("same ambient");
                }
                acc
            }
        }
    }

    /// `W_0, …, W_max` via `W_i = (W_{i-1}⊗V) ∩ (V⊗W_{i-1})`.
    pub fn koszul_spaces(&self, max: usize) -> Vec<Subspace<F>> {
        let mut spaces = vec![Subspace::full(1)];
        for i in 1..=max {
            let next = match i {
                1 => Subspace::full(self.n),
                2 => self.relations.clone(),
                _ => {
                    let prev = &spaces[i - 1];
                    if prev.is_zero() {
                        Subspace::zero(power_dim(self.n, i))
                    } else {
                        prev.embed(1, self.n).intersect(&prev.embed(self.n, 1)).expect("same ambient")
                    }
                }
            };
            spaces.push(next);
        }
        spaces
    }

    pub fn graded_pieces(&self, max_degree: usize) -> GradedPieces<F> {
        GradedPieces::new(self.n, &self.relations, max_degree)
    }

    /// Matrix (row-image convention) of `∂_i : W_i⊗A_j → W_{i-1}⊗A_{j+1}` on the
    /// bases `w_k ⊗ b` ordered with `k` major.
    pub fn koszul_differential(&self, i: usize, j: usize) -> Result<Matrix<F>> {
        if i == 0 {
            return Err(Error::OutOfRange { index: 0, limit: 1 });
        }
        let spaces = self.koszul_spaces(i);
        let pieces = self.graded_pieces(j + 1);
        Ok(differential(self.n, &spaces[i], &spaces[i - 1], &pieces, j))
    }

    /// Checks exactness of the Koszul complex in every internal degree `≤ bound`.
    pub fn certify_koszul(&self, bound: usize) -> Result<KoszulCertificate<F>> {
        if bound < 2 {
            return Err(Error::InvalidInput("the Koszul bound must be at least 2".into()));
        }
        let spaces = self.koszul_spaces(bound);
        let pieces = self.graded_pieces(bound);
        self.certify_with(&spaces, &pieces, bound)
    }

    fn certify_with(&self, spaces: &[Subspace<F>], pieces: &GradedPieces<F>, bound: usize) -> Result<KoszulCertificate<F>> {
        let wd: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
        let ad = pieces.dims();
        let mut ranks = Vec::new();
        for m in 1..=bound {
            for i in 1..=m {
                let j = m - i;
                let domain_dim = wd[i] * ad[j];
                let codomain_dim = wd[i - 1] * ad[j + 1];
                let rank = if domain_dim == 0 || codomain_dim == 0 {
                    0
                } else {
                    differential(self.n, &spaces[i], &spaces[i - 1], pieces, j).rank()
                };
                ranks.push(DifferentialRank { homological: i, internal: j, domain_dim, codomain_dim, rank });
            }
        }
        let rank_of = |i: usize, j: usize| ranks.iter().find(|r| r.homological == i && r.internal == j).map_or(0, |r| r.rank);
        for m in 1..=bound {
            for i in 0..=m {
                let j = m - i;
                let dim = wd[i] * ad[j];
                let outgoing = if i == 0 { 0 } else { rank_of(i, j) };
                let incoming = if j == 0 { 0 } else { rank_of(i + 1, j - 1) };
                if dim != outgoing + incoming {
                    return Err(Error::CertificationFailure {
                        homological: i,
                        internal: m,
                        detail: format!("dim {dim}, outgoing rank {outgoing}, incoming rank {incoming}"),
                    });
                }
            }
            let euler: i64 = (0..=m).map(|i| if i % 2 == 0 { 1 } else { -1 } * (wd[i] * ad[m - i]) as i64).sum();
            if euler != 0 {
                return Err(Error::CertificationFailure {
                    homological: 0,
                    internal: m,
                    detail: format!("Euler characteristic {euler} in degree {m}"),
                });
            }
        }
        let global_dimension = wd.iter().position(|&w| w == 0).map(|z| z - 1);
        let omega = global_dimension
            .filter(|&d| wd[d] == 1)
            .map(|d| Tensor::from_dense(self.n, d, &spaces[d].basis()[0]));
        let as_regular = match global_dimension {
            Some(d) => wd[d] == 1 && bound >= d + 2 && (0..=d).all(|i| wd[i] == wd[d - i]),
            None => false,
        };
        Ok(KoszulCertificate { bound, koszul_dims: wd, algebra_dims: ad, ranks, as_regular, global_dimension, omega })
    }

    /// Full certification. Without an explicit bound the Koszul complex is
    /// checked up to `d + 3` once `d` is known, searching `d` below 8.
    pub fn certify(&self, bound: Option<usize>) -> Result<CertifiedAlgebra<F>> {
        let search = bound.unwrap_or(8).max(2);
        let probe = self.koszul_spaces(search + 1);
        let Some(first_zero) = probe.iter().position(Subspace::is_zero) else {
            return Err(Error::NotAsRegular(format!("W_i does not vanish for i ≤ {}", search + 1)));
        };
        let d = first_zero - 1;
        let bound = bound.unwrap_or(d + 3);
        if bound < d + 2 {
            return Err(Error::InvalidInput(format!("Koszul bound {bound} is below d + 2 = {}", d + 2)));
        }
        let spaces = if probe.len() > bound { probe[..=bound].to_vec() } else { self.koszul_spaces(bound) };
        let pieces = self.graded_pieces(bound);
        let certificate = self.certify_with(&spaces, &pieces, bound)?;
        if !certificate.as_regular {
            let wd = &certificate.koszul_dims;
            let reason = if wd[d] != 1 {
                format!("dim W_{d} = {} instead of 1", wd[d])
            } else {
                format!("Koszul dimensions {:?} are not symmetric", &wd[..=d])
            };
            return Err(Error::NotAsRegular(reason));
        }
        let omega = certificate.omega.clone().expect("present for AS-regular certificates");
        Ok(CertifiedAlgebra { algebra: self.clone(), d, omega, koszul: spaces, pieces, certificate })
    }

    /// The global dimension and canonical superpotential line generator.
    pub fn certify_as_regular(&self) -> Result<(usize, Tensor<F>)> {
        let c = self.certify(None)?;
        Ok((c.d, c.omega))
    }
}

/// `∂_i` on `W_i⊗A_j`; coordinates on `W_{i-1}` are read at its pivots.
fn differential<F: Field>(n: usize, wi: &Subspace<F>, wprev: &Subspace<F>, pieces: &GradedPieces<F>, j: usize) -> Matrix<F> {
    let (aj, aj1) = (pieces.dim(j), pieces.dim(j + 1));
    let mut m: Matrix<F> = Matrix::zeros(wi.dim() * aj, wprev.dim() * aj1);
    for (k, w) in wi.basis().iter().enumerate() {
        for (idx, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (u, t) = (idx / n, idx % n);
            let Ok(l) = wprev.pivots().binary_search(&u) else {
                continue;
            };
            for b in 0..aj {
                for (e, v) in pieces.left_multiply_basis(t, j, b).iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let (row, col) = (k * aj + b, l * aj1 + e);
                    let cur = m.get(row, col).clone();
                    m.set(row, col, cur + c.clone() * v.clone());
                }
            }
        }
    }
    m
}

impl<F: Field> CertifiedAlgebra<F> {
    pub fn algebra(&self) -> &QuadraticAlgebra<F> {
        &self.algebra
    }

    pub fn n(&self) -> usize {
        self.algebra.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn omega(&self) -> &Tensor<F> {
        &self.omega
    }

    pub fn relations(&self) -> &Subspace<F> {
        &self.algebra.relations
    }

    /// `W_i`; zero beyond the certified range.
    pub fn koszul_space(&self, i: usize) -> Subspace<F> {
        self.koszul.get(i).cloned().unwrap_or_else(|| Subspace::zero(power_dim(self.n(), i)))
    }

    pub fn pieces(&self) -> &GradedPieces<F> {
        &self.pieces
    }

    pub fn certificate(&self) -> &KoszulCertificate<F> {
        &self.certificate
    }

    pub fn bound(&self) -> usize {
        self.certificate.bound
    }
}
