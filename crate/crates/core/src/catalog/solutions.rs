//! The admissible `(σ, δ)` of the noetherian two-generator families, case by
//! case, as tables of fixed entries, free parameters and constraint fillers.
//!
//! Parameters are named `q`, `m11 … m22` and `g11 … g23` (for `γ_ij`).

use std::collections::BTreeMap;

use crate::algebra::QuadraticAlgebra;
use crate::catalog::dim2::{admissibility_residuals, closed_form_mu_b, gamma_lift, Dim2Family, Gamma};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::morphisms::{check_automorphism, extend_derivation, DerivationLift, GradedAutomorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim2Case {
    CommA,
    CommB,
    CommC,
    CommD,
    CommEB,
    CommEC,
    CommED,
    CommF,
    CommG,
    Qm1A,
    Qm1B,
    Qm1C,
    Qm1D,
    Qm1E,
    Qm1F,
    Qm1IIA,
    Qm1IIB,
    QneqA,
    QneqB,
    QneqC,
    QneqD,
    QneqE,
    QneqF,
    JordanA,
    JordanB,
}

use Dim2Case::*;

impl Dim2Case {
    pub const ALL: [Dim2Case; 25] = [
        CommA, CommB, CommC, CommD, CommEB, CommEC, CommED, CommF, CommG, Qm1A, Qm1B, Qm1C, Qm1D, Qm1E, Qm1F, Qm1IIA,
        Qm1IIB, QneqA, QneqB, QneqC, QneqD, QneqE, QneqF, JordanA, JordanB,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CommA => "comm-a",
            CommB => "comm-b",
            CommC => "comm-c",
            CommD => "comm-d",
            CommEB => "comm-e-b",
            CommEC => "comm-e-c",
            CommED => "comm-e-d",
            CommF => "comm-f",
            CommG => "comm-g",
            Qm1A => "qm1-a",
            Qm1B => "qm1-b",
            Qm1C => "qm1-c",
            Qm1D => "qm1-d",
            Qm1E => "qm1-e",
            Qm1F => "qm1-f",
            Qm1IIA => "qm1ii-a",
            Qm1IIB => "qm1ii-b",
            QneqA => "qneq-1-a",
            QneqB => "qneq-1-b",
            QneqC => "qneq-1-c",
            QneqD => "qneq-1-d",
            QneqE => "qneq-1-e",
            QneqF => "qneq-1-f",
            JordanA => "jordan-a",
            JordanB => "jordan-b",
        }
    }

    pub fn from_id(id: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.id() == id)
            .ok_or_else(|| Error::InvalidInput(format!("unknown case `{id}`")))
    }

    /// `commutative`, `quantum-plane` or `jordan`.
    pub fn family_name(self) -> &'static str {
        match self {
            CommA | CommB | CommC | CommD | CommEB | CommEC | CommED | CommF | CommG => "commutative",
            JordanA | JordanB => "jordan",
            _ => "quantum-plane",
        }
    }

    pub fn needs_q(self) -> bool {
        matches!(self, QneqA | QneqB | QneqC | QneqD | QneqE | QneqF)
    }

    /// The case obtained from this one by exchanging `x_1` and `x_2`.
    pub fn symmetric_base(self) -> Option<Dim2Case> {
        match self {
            CommEB => Some(CommB),
            CommEC => Some(CommC),
            CommED => Some(CommD),
            _ => None,
        }
    }

    /// Entries of `M` supplied as parameters; the rest are fixed or derived.
    pub fn m_inputs(self) -> Vec<&'static str> {
        if let Some(base) = self.symmetric_base() {
            return base.m_inputs().into_iter().map(swap_name).collect();
        }
        match self {
            CommA | Qm1A | Qm1B | Qm1D | QneqA => vec![],
            CommB => vec!["m11", "m12"],
            CommC => vec!["m12", "m22"],
            CommD => vec!["m11", "m12", "m22"],
            CommF => vec!["m11", "m12", "m21"],
            CommG => vec!["m11", "m12", "m21", "m22"],
            Qm1C | QneqB => vec!["m11"],
            Qm1E | QneqC | QneqD | QneqE => vec!["m22"],
            Qm1F | QneqF => vec!["m11", "m22"],
            Qm1IIA | JordanA => vec!["m12"],
            Qm1IIB => vec!["m12", "m21"],
            JordanB => vec!["m11", "m12"],
            CommEB | CommEC | CommED => unreachable!(),
        }
    }

    /// The free `γ` for a given `M`, in canonical order.
    pub fn free_gammas<F: Field>(self, m: &Matrix<F>) -> Vec<&'static str> {
        if let Some(base) = self.symmetric_base() {
            let mut names: Vec<_> = base.free_gammas(&swap_matrix(m)).into_iter().map(swap_name).collect();
            names.sort();
            return names;
        }
        let mut names = match self {
            CommA => vec!["g11", "g12", "g13", "g21", "g22", "g23"],
            CommB => vec!["g11", "g12", "g13"],
            CommC => vec!["g21", "g22", "g23"],
            CommD => vec!["g22", "g23"],
            CommF => vec!["g13", "g21", "g22"],
            CommG => vec!["g13", "g21"],
            Qm1A => vec!["g11", "g13", "g21", "g23"],
            Qm1B => vec!["g11", "g12", "g13", "g22"],
            Qm1C => vec!["g11", "g12", "g13"],
            Qm1D => vec!["g12", "g21", "g22", "g23"],
            Qm1E => vec!["g21", "g22", "g23"],
            Qm1F => vec!["g12", "g22"],
            Qm1IIA => vec!["g21", "g22", "g23"],
            Qm1IIB => vec!["g21", "g23"],
            QneqA => vec!["g11", "g13", "g21", "g23"],
            QneqB => vec!["g13", "g22", "g23"],
            QneqC => vec!["g11", "g12", "g21"],
            QneqD => vec!["g12", "g22"],
            QneqE => vec!["g11", "g23"],
            QneqF => vec!["g11", "g12"],
            JordanA => vec!["g13", "g22", "g23"],
            JordanB => vec!["g22", "g23"],
            CommEB | CommEC | CommED => unreachable!(),
        };
        if self == QneqE && m.get(1, 1).is_one() {
            names.push("g12");
        }
        if self == JordanA && *m.get(0, 1) == F::from_int(2) {
            names.push("g21");
        }
        names.sort();
        names
    }

    /// `M` for this case from the `q` and `m_ij` parameters, with the case
    /// preconditions checked; other parameters are ignored.
    pub fn sigma_matrix<F: Field>(self, params: &BTreeMap<String, F>) -> Result<Matrix<F>> {
        if let Some(base) = self.symmetric_base() {
            let swapped = params.iter().map(|(k, v)| (swap_label(k), v.clone())).collect();
            return base.sigma_matrix(&swapped).map(|m| swap_matrix(&m));
        }
        let p = Params { case: self, values: params };
        let q = if self.needs_q() { p.get("q")? } else { F::zero() };
        if self.needs_q() {
            require(!q.is_zero() && !q.is_one() && q != -F::one(), self, "q ∉ {0, 1, −1}")?;
        }
        let m = case_matrix(self, &q, &p)?;
        require(!m.determinant()?.is_zero(), self, "an invertible M")?;
        preconditions(self, &q, &m)?;
        Ok(m)
    }

    /// Every accepted parameter name for a given `M`.
    pub fn parameter_names<F: Field>(self, m: &Matrix<F>) -> Vec<&'static str> {
        let mut names = if self.needs_q() { vec!["q"] } else { vec![] };
        names.extend(self.m_inputs());
        names.extend(self.free_gammas(m));
        names
    }
}

fn swap_name(name: &'static str) -> &'static str {
    match name {
        "m11" => "m22",
        "m22" => "m11",
        "m12" => "m21",
        "m21" => "m12",
        "g11" => "g23",
        "g23" => "g11",
        "g12" => "g22",
        "g22" => "g12",
        "g13" => "g21",
        "g21" => "g13",
        other => other,
    }
}

fn swap_matrix<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let p = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
    p.mul(m).and_then(|pm| pm.mul(&p)).expect("2×2")
}

/// `γ` of the swapped lift, reduced back to the `γ` basis modulo `x_1x_2 = x_2x_1`.
fn swap_gamma<F: Field>(g: &Gamma<F>) -> Gamma<F> {
    std::array::from_fn(|i| std::array::from_fn(|j| g[1 - i][2 - j].clone()))
}

/// An admissible `(σ, δ)` on one of the catalog algebras together with the
/// case and parameters that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionInstance<F> {
    pub case: Dim2Case,
    pub family: Dim2Family<F>,
    pub m: Matrix<F>,
    pub gamma: Gamma<F>,
    pub params: BTreeMap<String, F>,
    pub derived_by_symmetry: bool,
}

impl<F: Field> SolutionInstance<F> {
    pub fn algebra(&self) -> QuadraticAlgebra<F> {
        self.family.algebra()
    }

    pub fn sigma(&self) -> Result<GradedAutomorphism<F>> {
        check_automorphism(&self.m, &self.algebra())
    }

    pub fn delta(&self) -> Result<DerivationLift<F>> {
        extend_derivation(gamma_lift(&self.gamma), &self.sigma()?, &self.algebra())
    }

    pub fn closed_form_mu_b(&self) -> Result<Matrix<F>> {
        closed_form_mu_b(&self.family, &self.m, &self.gamma)
    }
}

struct Params<'a, F> {
    case: Dim2Case,
    values: &'a BTreeMap<String, F>,
}

impl<F: Field> Params<'_, F> {
    fn get(&self, name: &str) -> Result<F> {
        self.values
            .get(name)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("case {} needs parameter `{name}`", self.case.id())))
    }
}

fn require(ok: bool, case: Dim2Case, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CasePreconditionViolated(format!("case {} requires {what}", case.id())))
    }
}

/// Fills the constrained `γ` of a case and re-checks the result against both
/// the family's equation system and the engine's admissibility test.
pub fn enumerate_solution<F: Field>(case: Dim2Case, params: &BTreeMap<String, F>) -> Result<SolutionInstance<F>> {
    if let Some(base) = case.symmetric_base() {
        let swapped = params.iter().map(|(k, v)| (swap_label(k), v.clone())).collect();
        let inner = enumerate_solution(base, &swapped).map_err(|e| match e {
            Error::CasePreconditionViolated(s) => Error::CasePreconditionViolated(format!("{s} (after exchanging x1 and x2, from {})", case.id())),
            other => other,
        })?;
        let instance = SolutionInstance {
            case,
            family: inner.family,
            m: swap_matrix(&inner.m),
            gamma: swap_gamma(&inner.gamma),
            params: params.clone(),
            derived_by_symmetry: true,
        };
        return recheck(instance);
    }
    let p = Params { case, values: params };
    let m = case.sigma_matrix(params)?;
    let q = if case.needs_q() { p.get("q")? } else { F::zero() };
    let family = match case.family_name() {
        "commutative" => Dim2Family::commutative(),
        "jordan" => Dim2Family::jordan(),
        _ if case.needs_q() => Dim2Family::quantum(q.clone())?,
        _ => Dim2Family::quantum(-F::one())?,
    };
    let allowed = case.parameter_names(&m);
    if let Some(bad) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::InvalidInput(format!(
            "case {} does not take parameter `{bad}` (expected {})",
            case.id(),
            allowed.join(", ")
        )));
    }
    let gamma = fill(case, &q, &m, &p)?;
    recheck(SolutionInstance { case, family, m, gamma, params: params.clone(), derived_by_symmetry: false })
}

fn swap_label(name: &str) -> String {
    const NAMES: [&str; 11] = ["q", "m11", "m12", "m21", "m22", "g11", "g12", "g13", "g21", "g22", "g23"];
    NAMES.iter().find(|&&n| n == name).map_or_else(|| name.to_string(), |&n| swap_name(n).to_string())
}

fn recheck<F: Field>(instance: SolutionInstance<F>) -> Result<SolutionInstance<F>> {
    let residuals = admissibility_residuals(&instance.family, &instance.m, &instance.gamma)?;
    if residuals.iter().any(|r| !r.is_zero()) {
        return Err(Error::Invariant(format!("case {} produced γ violating its equation system", instance.case.id())));
    }
    instance.delta().map_err(|e| Error::Invariant(format!("case {} is rejected by the engine: {e}", instance.case.id())))?;
    Ok(instance)
}

fn case_matrix<F: Field>(case: Dim2Case, q: &F, p: &Params<'_, F>) -> Result<Matrix<F>> {
    let (z, o) = (F::zero(), F::one());
    let get = |name: &str| p.get(name);
    let rows: [[F; 2]; 2] = match case {
        CommA => [[o.clone(), z.clone()], [z, o]],
        CommB => [[get("m11")?, get("m12")?], [z, o]],
        CommC => [[o, get("m12")?], [z, get("m22")?]],
        CommD => [[get("m11")?, get("m12")?], [z, get("m22")?]],
        CommF => {
            let (m11, m12, m21) = (get("m11")?, get("m12")?, get("m21")?);
            require(!(m11.clone() - o.clone()).is_zero(), case, "m11 ≠ 1")?;
            let m22 = o + m12.clone() * m21.clone() / (m11.clone() - F::one());
            [[m11, m12], [m21, m22]]
        }
        CommG => [[get("m11")?, get("m12")?], [get("m21")?, get("m22")?]],
        Qm1A => [[-o.clone(), z.clone()], [z, -o]],
        Qm1B => [[o.clone(), z.clone()], [z, -o]],
        Qm1C => [[get("m11")?, z.clone()], [z, -o]],
        Qm1D => [[-o.clone(), z.clone()], [z, o]],
        Qm1E => [[-o, z.clone()], [z, get("m22")?]],
        Qm1F => [[get("m11")?, z.clone()], [z, get("m22")?]],
        Qm1IIA => {
            let m12 = get("m12")?;
            require(!m12.is_zero(), case, "m12 ≠ 0")?;
            [[z.clone(), m12.clone()], [m12.inv(), z]]
        }
        Qm1IIB => [[z.clone(), get("m12")?], [get("m21")?, z]],
        QneqA => [[q.clone(), z.clone()], [z, q.inv()]],
        QneqB => [[get("m11")?, z.clone()], [z, q.inv()]],
        QneqC => [[q.clone(), z.clone()], [z, get("m22")?]],
        QneqD => [[o, z.clone()], [z, get("m22")?]],
        QneqE => [[q.inv(), z.clone()], [z, get("m22")?]],
        QneqF => [[get("m11")?, z.clone()], [z, get("m22")?]],
        JordanA => [[o.clone(), get("m12")?], [z, o]],
        JordanB => {
            let m11 = get("m11")?;
            [[m11.clone(), get("m12")?], [z, m11]]
        }
        CommEB | CommEC | CommED => unreachable!(),
    };
    Matrix::from_rows(rows.into_iter().map(Vec::from).collect())
}

fn preconditions<F: Field>(case: Dim2Case, q: &F, m: &Matrix<F>) -> Result<()> {
    let (m11, m12, m21, m22) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let o = F::one();
    let is = |x: &F, v: &F| x == v;
    let q_inv = if q.is_zero() { F::zero() } else { q.inv() };
    match case {
        CommB => require(*m != Matrix::identity(2), case, "M ≠ I"),
        CommC => require(!is(m22, &o), case, "m22 ≠ 1"),
        CommD => require(!is(m22, &o) && !is(m11, &o), case, "m11 ≠ 1 and m22 ≠ 1"),
        CommF => require(!(m12.clone() * m21.clone()).is_zero(), case, "m12·m21 ≠ 0"),
        CommG => {
            require(!(m12.clone() * m21.clone()).is_zero(), case, "m12·m21 ≠ 0")?;
            require(
                (m22.clone() - o.clone()) * (m11.clone() - o) != m12.clone() * m21.clone(),
                case,
                "(m22 − 1)(m11 − 1) ≠ m12·m21",
            )
        }
        Qm1C => require(!is(m11, &o) && !is(m11, &-o.clone()), case, "m11 ≠ ±1"),
        Qm1E => require(!is(m22, &o) && !is(m22, &-o.clone()), case, "m22 ≠ ±1"),
        Qm1F => require(!is(m11, &-o.clone()) && !is(m22, &-o.clone()), case, "m11 ≠ −1 and m22 ≠ −1"),
        Qm1IIB => require(!(m12.clone() * m21.clone()).is_one(), case, "m12·m21 ≠ 1"),
        QneqB => require(!is(m11, q), case, "m11 ≠ q"),
        QneqC | QneqD | QneqE => require(!is(m22, &q_inv), case, "m22 ≠ 1/q"),
        QneqF => {
            require(!is(m11, q) && !is(m11, &q_inv) && !is(m11, &o), case, "m11 ∉ {q, 1/q, 1}")?;
            require(!is(m22, &q_inv), case, "m22 ≠ 1/q")
        }
        JordanB => require(!is(m11, &o), case, "m11 ≠ 1"),
        _ => Ok(()),
    }
}

fn fill<F: Field>(case: Dim2Case, q: &F, m: &Matrix<F>, p: &Params<'_, F>) -> Result<Gamma<F>> {
    let (m11, m12, m21, m22) = (m.get(0, 0).clone(), m.get(0, 1).clone(), m.get(1, 0).clone(), m.get(1, 1).clone());
    let z = F::zero;
    let o = F::one;
    let f = |k: i64| F::from_int(k);
    let g = |name: &str| p.get(name);
    let free = case.free_gammas(m);
    // Free γ not named in a constrained case default to their fixed value below.
    let opt = |name: &str| if free.contains(&name) { p.get(name) } else { Ok(z()) };
    let gamma: Gamma<F> = match case {
        CommA => [[g("g11")?, g("g12")?, g("g13")?], [g("g21")?, g("g22")?, g("g23")?]],
        CommB => [[g("g11")?, g("g12")?, g("g13")?], [z(), z(), z()]],
        CommC => {
            let k = m12 / (m22 - o());
            let (g21, g22, g23) = (g("g21")?, g("g22")?, g("g23")?);
            [[k.clone() * g21.clone(), k.clone() * g22.clone(), k * g23.clone()], [g21, g22, g23]]
        }
        CommD => {
            let d = m22 - o();
            let (g22, g23) = (g("g22")?, g("g23")?);
            let g11 = (m11.clone() - o()) * g22.clone() / d.clone();
            let g12 = (m12.clone() * g22.clone() + (m11 - o()) * g23.clone()) / d.clone();
            let g13 = m12 * g23.clone() / d;
            [[g11, g12, g13], [z(), g22, g23]]
        }
        CommF => {
            let (g13, g21, g22) = (g("g13")?, g("g21")?, g("g22")?);
            let g11 = (m11.clone() - o()) * g21.clone() / m21.clone();
            let g12 = (m11 - o()) * g22.clone() / m21;
            let g23 = (m22 - o()) * g13.clone() / m12;
            [[g11, g12, g13], [g21, g22, g23]]
        }
        CommG => {
            let (g13, g21) = (g("g13")?, g("g21")?);
            let g11 = (m11.clone() - o()) * g21.clone() / m21.clone();
            let g12 = m12.clone() * g21.clone() / m21.clone() + (m11 - o()) * g13.clone() / m12.clone();
            let g22 = (m22.clone() - o()) * g21.clone() / m21.clone() + m21 * g13.clone() / m12.clone();
            let g23 = (m22 - o()) * g13.clone() / m12;
            [[g11, g12, g13], [g21, g22, g23]]
        }
        Qm1A => [[g("g11")?, z(), g("g13")?], [g("g21")?, z(), g("g23")?]],
        Qm1B => {
            let g12 = g("g12")?;
            [[g("g11")?, g12.clone(), g("g13")?], [z(), g("g22")?, g12]]
        }
        Qm1C => {
            let g12 = g("g12")?;
            let g23 = f(2) * g12.clone() / (m11 + o());
            [[g("g11")?, g12, g("g13")?], [z(), z(), g23]]
        }
        Qm1D => {
            let g22 = g("g22")?;
            [[-g22.clone(), g("g12")?, z()], [g("g21")?, g22, g("g23")?]]
        }
        Qm1E => {
            let g22 = g("g22")?;
            let g11 = -f(2) * g22.clone() / (m22 + o());
            [[g11, z(), z()], [g("g21")?, g22, g("g23")?]]
        }
        Qm1F => {
            let (g12, g22) = (g("g12")?, g("g22")?);
            let g11 = (m11.clone() - o()) * g22.clone() / (m22.clone() + o());
            let g23 = (o() - m22) * g12.clone() / (m11 + o());
            [[g11, g12, z()], [z(), g22, g23]]
        }
        Qm1IIA => {
            let (g21, g22, g23) = (g("g21")?, g("g22")?, g("g23")?);
            [[-m12.clone() * g21.clone(), m12.clone() * g22.clone(), -m12 * g23.clone()], [g21, g22, g23]]
        }
        Qm1IIB => {
            let (g21, g23) = (g("g21")?, g("g23")?);
            let g11 = -g21.clone() / m21.clone();
            let g12 = m12.clone() * g21.clone() / m21.clone() + g23.clone();
            let g13 = -m12 * g23.clone();
            let g22 = g21.clone() / m21.clone() + m21 * g23.clone();
            [[g11, g12, g13], [g21, g22, g23]]
        }
        QneqA => {
            let (g11, g23) = (g("g11")?, g("g23")?);
            let g12 = -q.clone() * (o() + q.clone()) * g23.clone();
            let g22 = -(q.inv() + o()) * g11.clone();
            [[g11, g12, g("g13")?], [g("g21")?, g22, g23]]
        }
        QneqB => {
            let (g22, g23) = (g("g22")?, g("g23")?);
            let g11 = (m11.clone() - o()) * g22.clone() / (q.inv() - q.clone());
            let g12 = (q.clone() * m11 - o()) * g23.clone() / (q.inv() - o());
            [[g11, g12, g("g13")?], [z(), g22, g23]]
        }
        QneqC => {
            let (g11, g12) = (g("g11")?, g("g12")?);
            let g22 = (q.clone() - m22.clone()) * g11.clone() / (o() - q.clone());
            let g23 = (o() - m22) * g12.clone() / (o() - q.clone() * q.clone());
            [[g11, g12, z()], [g("g21")?, g22, g23]]
        }
        QneqD => {
            let g12 = g("g12")?;
            let g23 = (o() - m22) * g12.clone() / (o() - q.clone());
            [[z(), g12, z()], [z(), g("g22")?, g23]]
        }
        QneqE => {
            let g11 = g("g11")?;
            let g22 = (q.clone() - m22) * g11.clone() / (o() - q.inv());
            [[g11, opt("g12")?, z()], [z(), g22, g("g23")?]]
        }
        QneqF => {
            let (g11, g12) = (g("g11")?, g("g12")?);
            let g22 = (q.clone() - m22.clone()) * g11.clone() / (o() - m11.clone());
            let g23 = (o() - m22) * g12.clone() / (o() - q.clone() * m11);
            [[g11, g12, z()], [z(), g22, g23]]
        }
        JordanA => {
            let (g21, g22, g23) = (opt("g21")?, g("g22")?, g("g23")?);
            let g11 = (m12.clone() * g21.clone() + (o() - m12.clone()) * g22.clone()) / f(2);
            let g12 = m12.clone() * g22.clone() - m12 * g23.clone();
            [[g11, g12, g("g13")?], [g21, g22, g23]]
        }
        JordanB => {
            let (g22, g23) = (g("g22")?, g("g23")?);
            let d = m11.clone() - o();
            let g12 = (m12.clone() + o()) * g22.clone() / d.clone() + g23.clone();
            let g13 = (m11 + m12) * (g22.clone() / d.clone() + g23.clone()) / d;
            [[g22.clone(), g12, g13], [z(), g22, g23]]
        }
        CommEB | CommEC | CommED => unreachable!(),
    };
    Ok(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::nakayama_of_a;
    use crate::ore::{nakayama_of_b, CheckLevel};
    use crate::Rational;
    use num_traits::Zero;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn params(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn ids_round_trip() {
        for c in Dim2Case::ALL {
            assert_eq!(Dim2Case::from_id(c.id()).unwrap(), c);
        }
        assert!(Dim2Case::from_id("comm-z").is_err());
    }

    #[test]
    fn qm1_a_example() {
        let s =
            enumerate_solution(Qm1A, &params(&[("g11", q(1)), ("g13", q(2)), ("g21", q(3)), ("g23", q(5))])).unwrap();
        assert!(s.gamma[0][1].is_zero() && s.gamma[1][1].is_zero());
        assert_eq!(s.gamma, [[q(1), q(0), q(2)], [q(3), q(0), q(5)]]);
    }

    #[test]
    fn jordan_b_example() {
        let s =
            enumerate_solution(JordanB, &params(&[("m11", q(2)), ("m12", q(0)), ("g22", q(1)), ("g23", q(0))])).unwrap();
        assert_eq!(s.gamma, [[q(1), q(1), q(2)], [q(0), q(1), q(0)]]);
    }

    #[test]
    fn comm_a_accepts_everything() {
        let names = ["g11", "g12", "g13", "g21", "g22", "g23"];
        for seed in 0..5i64 {
            let p: Vec<_> = names.iter().enumerate().map(|(k, n)| (*n, q((seed * 7 + k as i64 * 3) % 11 - 5))).collect();
            enumerate_solution(CommA, &params(&p)).unwrap();
        }
    }

    #[test]
    fn preconditions_and_parameter_checks() {
        let e = enumerate_solution::<Rational>(QneqB, &params(&[("q", q(2)), ("m11", q(2)), ("g13", q(0)), ("g22", q(1)), ("g23", q(1))]));
        assert!(matches!(e, Err(Error::CasePreconditionViolated(_))));
        let e = enumerate_solution::<Rational>(Qm1A, &params(&[("g11", q(1))]));
        assert!(matches!(e, Err(Error::InvalidInput(_))));
        let e = enumerate_solution::<Rational>(
            Qm1A,
            &params(&[("g11", q(1)), ("g13", q(2)), ("g21", q(3)), ("g23", q(5)), ("g12", q(1))]),
        );
        assert!(matches!(e, Err(Error::InvalidInput(_))));
        let e = enumerate_solution::<Rational>(QneqA, &params(&[("q", q(-1)), ("g11", q(1)), ("g13", q(0)), ("g21", q(0)), ("g23", q(1))]));
        assert!(matches!(e, Err(Error::CasePreconditionViolated(_))));
        let e = enumerate_solution::<Rational>(CommEB, &params(&[("m22", q(1)), ("m21", q(0)), ("g21", q(1)), ("g22", q(1)), ("g23", q(1))]));
        assert!(matches!(e, Err(Error::CasePreconditionViolated(_))));
    }

    #[test]
    fn symmetric_cases_are_flagged_and_admissible() {
        let s = enumerate_solution(
            CommED,
            &params(&[("m22", q(3)), ("m21", q(2)), ("m11", q(5)), ("g12", q(1)), ("g11", q(-2))]),
        )
        .unwrap();
        assert!(s.derived_by_symmetry);
        assert!(s.m.get(0, 1).is_zero());
        assert_eq!(CommED.free_gammas(&s.m), vec!["g11", "g12"]);
    }

    #[test]
    fn qneq_a_with_q2_is_calabi_yau() {
        let s = enumerate_solution(
            QneqA,
            &params(&[("q", q(2)), ("g11", q(1)), ("g23", q(1)), ("g13", q(0)), ("g21", q(0))]),
        )
        .unwrap();
        let alg = s.algebra().certify(None).unwrap();
        let report = nakayama_of_b(&alg, &s.delta().unwrap(), CheckLevel::Paranoid).unwrap();
        assert!(report.calabi_yau);
        assert_eq!(report.mu_b, Matrix::identity(3));
        assert_eq!(*nakayama_of_a(&alg).unwrap().matrix(), s.m);
    }

    #[test]
    fn jordan_a_gamma21_is_free_only_at_m12_two() {
        let m = |v: i64| Matrix::from_rows(vec![vec![q(1), q(v)], vec![q(0), q(1)]]).unwrap();
        assert!(JordanA.free_gammas(&m(2)).contains(&"g21"));
        assert!(!JordanA.free_gammas(&m(3)).contains(&"g21"));
    }

    #[test]
    fn every_case_matches_its_closed_form() {
        for case in Dim2Case::ALL {
            let p = sample(case);
            let s = enumerate_solution(case, &p).unwrap_or_else(|e| panic!("{}: {e}", case.id()));
            let alg = s.algebra().certify(None).unwrap();
            let report = nakayama_of_b(&alg, &s.delta().unwrap(), CheckLevel::Paranoid).unwrap();
            assert_eq!(report.mu_b, s.closed_form_mu_b().unwrap(), "{}", case.id());
        }
    }

    fn sample(case: Dim2Case) -> BTreeMap<String, Rational> {
        let m_values = |name: &str| match name {
            "m11" => q(3),
            "m12" => Rational::from_ratio(2, 3),
            "m21" => q(-4),
            "m22" => q(5),
            _ => unreachable!(),
        };
        let mut p = BTreeMap::new();
        if case.needs_q() {
            p.insert("q".to_string(), q(2));
        }
        for name in case.m_inputs() {
            p.insert(name.to_string(), m_values(name));
        }
        let probe = case.sigma_matrix(&p).unwrap();
        for (k, name) in case.free_gammas(&probe).into_iter().enumerate() {
            p.insert(name.to_string(), q(k as i64 + 1));
        }
        p
    }
}
