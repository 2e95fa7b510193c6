//! The subcommands, each producing a [`Report`].

use std::collections::BTreeMap;

use nakayama_core::algebra::CertifiedAlgebra;
use nakayama_core::catalog::{cy_classifier_dim2, enumerate_solution, make_polynomial, polynomial_divergence_oracle, Dim2Case};
use nakayama_core::linalg::Tensor;
use nakayama_core::morphisms::{
    check_automorphism, extend_derivation, hdet, is_twisted_superpotential, nakayama_of_a, DerivationLift,
};
use nakayama_core::ore::{derivation_quotient_relations, nakayama_of_b, ore_relations, CheckLevel};
use nakayama_core::{Error, QMatrix, QTensor, Rational, Result};

use crate::input::{parse_assignment, parse_rational, Problem, ProblemSpec};
use crate::report::{self, CatalogOut, DivergenceOut, Report, SuperpotentialChecks};

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub koszul_bound: Option<usize>,
    pub level: CheckLevel,
}

fn certify(problem: &Problem, settings: Settings) -> Result<CertifiedAlgebra<Rational>> {
    problem.algebra.certify(settings.koszul_bound.or(problem.koszul_bound))
}

fn base_report(command: &str, alg: &CertifiedAlgebra<Rational>) -> Report {
    let names = alg.algebra().names();
    Report {
        command: command.into(),
        koszul_bound: alg.bound(),
        generators: names.to_vec(),
        certification: report::certification(alg),
        omega: report::terms(alg.omega(), names),
        mu_a: None,
        sigma: None,
        hdet: None,
        divergence: None,
        extension_generators: None,
        mu_b: None,
        omega_hat: None,
        calabi_yau: None,
        superpotential_checks: None,
        catalog: None,
    }
}

fn check_command(spec: &ProblemSpec, command: &str) -> Result<()> {
    match &spec.options.command {
        Some(c) if c != command => Err(Error::InvalidInput(format!("the document is for `{c}`, not `{command}`"))),
        _ => Ok(()),
    }
}

pub fn cmd_certify(spec: &ProblemSpec, settings: Settings) -> Result<Report> {
    check_command(spec, "certify")?;
    let problem = spec.compile()?;
    Ok(base_report("certify", &certify(&problem, settings)?))
}

pub fn cmd_nakayama_a(spec: &ProblemSpec, settings: Settings) -> Result<Report> {
    check_command(spec, "nakayama")?;
    let problem = spec.compile()?;
    let alg = certify(&problem, settings)?;
    let mu_a = nakayama_of_a(&alg)?;
    let mut r = base_report("nakayama", &alg);
    r.mu_a = Some(report::matrix(mu_a.matrix()));
    if problem.sigma_given {
        let sigma = check_automorphism(&problem.sigma, alg.algebra())?;
        r.sigma = Some(report::matrix(sigma.matrix()));
        r.hdet = Some(hdet(&alg, &sigma)?.to_string());
    }
    Ok(r)
}

fn lift(problem: &Problem, alg: &CertifiedAlgebra<Rational>) -> Result<DerivationLift<Rational>> {
    let sigma = check_automorphism(&problem.sigma, alg.algebra())?;
    extend_derivation(problem.images.clone(), &sigma, alg.algebra())
}

fn ore_report(command: &str, alg: &CertifiedAlgebra<Rational>, delta: &DerivationLift<Rational>, level: CheckLevel) -> Result<Report> {
    let out = nakayama_of_b(alg, delta, level)?;
    let names = alg.algebra().names();
    let mut hat_names = names.to_vec();
    hat_names.push(report::fresh_variable(names));
    let mut r = base_report(command, alg);
    r.mu_a = Some(report::matrix(&out.mu_a));
    r.sigma = Some(report::matrix(delta.sigma().matrix()));
    r.hdet = Some(out.hdet.to_string());
    r.divergence = Some(DivergenceOut {
        delta_r: report::terms(&out.divergence.delta_r, names),
        delta_l: report::terms(&out.divergence.delta_l, names),
        divergence: report::terms(&out.divergence.divergence, names),
    });
    r.mu_b = Some(report::matrix(&out.mu_b));
    r.omega_hat = Some(report::terms(&out.omega_hat, &hat_names));
    r.extension_generators = Some(hat_names);
    r.calabi_yau = Some(out.calabi_yau);
    Ok(r)
}

pub fn cmd_ore(spec: &ProblemSpec, settings: Settings) -> Result<Report> {
    check_command(spec, "ore")?;
    let problem = spec.compile()?;
    let alg = certify(&problem, settings)?;
    let delta = lift(&problem, &alg)?;
    ore_report("ore", &alg, &delta, settings.level)
}

pub fn cmd_superpotential(spec: &ProblemSpec, settings: Settings) -> Result<Report> {
    check_command(spec, "superpotential")?;
    let problem = spec.compile()?;
    let alg = certify(&problem, settings)?;
    let delta = lift(&problem, &alg)?;
    let out = nakayama_of_b(&alg, &delta, settings.level)?;
    let d = alg.d();
    let mu_a = nakayama_of_a(&alg)?;
    let quotient_of_omega_is_r = if d >= 2 {
        derivation_quotient_relations(alg.omega(), d - 2)? == *alg.relations()
    } else {
        alg.relations().is_zero()
    };
    let checks = SuperpotentialChecks {
        omega_is_mu_a_twisted: is_twisted_superpotential(alg.omega(), mu_a.matrix()),
        quotient_of_omega_is_r,
        omega_hat_is_mu_b_twisted: is_twisted_superpotential(&out.omega_hat, &out.mu_b),
        quotient_of_omega_hat_is_r_hat: derivation_quotient_relations(&out.omega_hat, d - 1)? == ore_relations(&alg, &delta),
    };
    let mut r = ore_report("superpotential", &alg, &delta, settings.level)?;
    r.superpotential_checks = Some(checks);
    Ok(r)
}

#[derive(Clone, Debug, Default)]
pub struct CatalogRequest {
    pub family: Option<String>,
    pub n: Option<usize>,
    pub q: Option<String>,
    pub case: Option<String>,
    pub params: Vec<String>,
}

fn parse_params(list: &[String]) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for p in list {
        let (name, value) = parse_assignment(p)?;
        if out.insert(name.clone(), value).is_some() {
            return Err(Error::InvalidInput(format!("parameter `{name}` given twice")));
        }
    }
    Ok(out)
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn display_params(params: &BTreeMap<String, Rational>) -> BTreeMap<String, String> {
    params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

/// `k<i>_<s><t>` or `k<i>_<s>_<t>`, all 1-based.
fn poly_coefficient(name: &str, n: usize) -> Result<(usize, usize, usize)> {
    let bad = || Error::InvalidInput(format!("`{name}` is not a coefficient name k<i>_<s><t> for n = {n}"));
    let rest = name.strip_prefix('k').ok_or_else(bad)?;
    let (i, st) = rest.split_once('_').ok_or_else(bad)?;
    let (s, t) = match st.split_once('_') {
        Some(pair) => pair,
        None if st.len() == 2 => st.split_at(1),
        None => return Err(bad()),
    };
    let index = |x: &str| x.parse::<usize>().ok().filter(|&v| (1..=n).contains(&v)).map(|v| v - 1).ok_or_else(bad);
    Ok((index(i)?, index(s)?, index(t)?))
}

fn catalog_poly(req: &CatalogRequest, settings: Settings) -> Result<Report> {
    let n = req.n.ok_or_else(|| Error::InvalidInput("--family poly needs --n".into()))?;
    if req.q.is_some() {
        return Err(Error::InvalidInput("--q does not apply to polynomial algebras".into()));
    }
    let params = parse_params(&req.params)?;
    let mut images = vec![QTensor::zero(n, 2); n];
    for (name, value) in &params {
        let (i, s, t) = poly_coefficient(name, n)?;
        images[i].add_term(vec![s, t], value.clone());
    }
    let alg = make_polynomial(n)?.with_names(names(n))?.certify(settings.koszul_bound)?;
    let sigma = check_automorphism(&QMatrix::identity(n), alg.algebra())?;
    let delta = extend_derivation(images.clone(), &sigma, alg.algebra())?;
    let mut r = ore_report("catalog", &alg, &delta, settings.level)?;
    let mut expected = QMatrix::identity(n + 1);
    for (j, c) in polynomial_divergence_oracle(&images).to_dense().into_iter().enumerate() {
        expected.set(n, j, c);
    }
    let matches = r.mu_b.as_ref() == Some(&report::matrix(&expected));
    r.catalog = Some(CatalogOut {
        family: "poly".into(),
        case: None,
        params: display_params(&params),
        derived_by_symmetry: false,
        oracle: "μ_B(z) = z + Σ_i ∂δ(x_i)/∂x_i".into(),
        oracle_value: report::matrix(&expected),
        matches,
        classifier_calabi_yau: None,
    });
    Ok(r)
}

fn catalog_case(req: &CatalogRequest, id: &str, settings: Settings) -> Result<Report> {
    let case = Dim2Case::from_id(id)?;
    if let Some(f) = &req.family {
        let fits = f == case.family_name() || (f == "poly" && case.family_name() == "commutative");
        if !fits {
            return Err(Error::InvalidInput(format!("case {id} belongs to family {}, not {f}", case.family_name())));
        }
    }
    if req.n.is_some_and(|n| n != 2) {
        return Err(Error::InvalidInput(format!("case {id} is a two-generator case")));
    }
    let mut params = parse_params(&req.params)?;
    if let Some(q) = &req.q {
        let q = parse_rational(q)?;
        if case.needs_q() {
            if params.insert("q".into(), q).is_some() {
                return Err(Error::InvalidInput("q given both as --q and --param".into()));
            }
        } else if !(id.starts_with("qm1") && q == -Rational::from_integer(1.into())) {
            return Err(Error::InvalidInput(format!("case {id} does not take --q {q}")));
        }
    }
    let instance = enumerate_solution(case, &params)?;
    let alg = instance.algebra().with_names(names(2))?.certify(settings.koszul_bound)?;
    let delta = instance.delta()?;
    let mut r = ore_report("catalog", &alg, &delta, settings.level)?;
    let closed = instance.closed_form_mu_b()?;
    let images: Vec<Tensor<Rational>> = delta.images().to_vec();
    let verdict = cy_classifier_dim2(&instance.family, &instance.m, &images)?;
    let matches = r.mu_b.as_ref() == Some(&report::matrix(&closed)) && r.calabi_yau == Some(verdict.calabi_yau);
    r.catalog = Some(CatalogOut {
        family: case.family_name().into(),
        case: Some(case.id().into()),
        params: display_params(&instance.params),
        derived_by_symmetry: instance.derived_by_symmetry,
        oracle: format!("closed-form μ_B of case {}", case.id()),
        oracle_value: report::matrix(&closed),
        matches,
        classifier_calabi_yau: Some(verdict.calabi_yau),
    });
    Ok(r)
}

pub fn cmd_catalog(req: &CatalogRequest, settings: Settings) -> Result<Report> {
    match (&req.case, req.family.as_deref()) {
        (Some(id), _) => catalog_case(req, id, settings),
        (None, Some("poly")) => catalog_poly(req, settings),
        (None, Some(f)) => Err(Error::InvalidInput(format!("family {f} needs --case"))),
        (None, None) => Err(Error::InvalidInput("catalog needs --family or --case".into())),
    }
}

/// An internal-consistency failure visible in a finished report.
pub fn failed_check(r: &Report) -> Option<String> {
    if let Some(c) = &r.catalog {
        if !c.matches {
            return Some("the engine disagrees with the closed form".into());
        }
    }
    if let Some(c) = &r.superpotential_checks {
        let all = c.omega_is_mu_a_twisted && c.quotient_of_omega_is_r && c.omega_hat_is_mu_b_twisted && c.quotient_of_omega_hat_is_r_hat;
        if !all {
            return Some("a superpotential check failed".into());
        }
    }
    None
}
