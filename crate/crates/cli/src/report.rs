//! The structured result of a command, in JSON or as aligned text.

use std::collections::BTreeMap;
use std::fmt::Write;

use nakayama_core::algebra::CertifiedAlgebra;
use nakayama_core::{QMatrix, QTensor, Rational};
use serde::{Deserialize, Serialize};

use crate::input::{Scalar, Term};

pub type MatrixOut = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub n: usize,
    pub d: usize,
    pub koszul_bound: usize,
    pub koszul_dims: Vec<usize>,
    pub algebra_dims: Vec<usize>,
    pub as_regular: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceOut {
    pub delta_r: Vec<Term>,
    pub delta_l: Vec<Term>,
    pub divergence: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuperpotentialChecks {
    pub omega_is_mu_a_twisted: bool,
    pub quotient_of_omega_is_r: bool,
    pub omega_hat_is_mu_b_twisted: bool,
    pub quotient_of_omega_hat_is_r_hat: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogOut {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    pub params: BTreeMap<String, String>,
    pub derived_by_symmetry: bool,
    pub oracle: String,
    pub oracle_value: MatrixOut,
    pub matches: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classifier_calabi_yau: Option<bool>,
}

/// Every scalar is an exact rational string; absent sections were not computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub koszul_bound: usize,
    pub generators: Vec<String>,
    pub certification: Certification,
    pub omega: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_a: Option<MatrixOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<MatrixOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hdet: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divergence: Option<DivergenceOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension_generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_b: Option<MatrixOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_hat: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calabi_yau: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub superpotential_checks: Option<SuperpotentialChecks>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<CatalogOut>,
}

pub fn terms(t: &QTensor, names: &[String]) -> Vec<Term> {
    t.terms()
        .map(|(w, c)| Term { coefficient: Scalar::Text(c.to_string()), word: w.iter().map(|&l| names[l].clone()).collect() })
        .collect()
}

pub fn matrix(m: &QMatrix) -> MatrixOut {
    m.to_rows().iter().map(|r| r.iter().map(Rational::to_string).collect()).collect()
}

pub fn certification(alg: &CertifiedAlgebra<Rational>) -> Certification {
    let c = alg.certificate();
    Certification {
        n: alg.n(),
        d: alg.d(),
        koszul_bound: c.bound,
        koszul_dims: c.koszul_dims.clone(),
        algebra_dims: c.algebra_dims.clone(),
        as_regular: c.as_regular,
    }
}

/// A name for the Ore variable that no generator uses.
pub fn fresh_variable(names: &[String]) -> String {
    std::iter::once("z".to_string())
        .chain((0..).map(|k| format!("z{k}")))
        .find(|z| !names.contains(z))
        .expect("an unused name exists")
}

fn render_terms(ts: &[Term]) -> String {
    if ts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in ts.iter().enumerate() {
        let c = match &t.coefficient {
            Scalar::Text(s) => s.clone(),
            Scalar::Int(v) => v.to_string(),
        };
        let (neg, abs) = match c.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, c),
        };
        out.push_str(match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let word = t.word.join("⊗");
        if abs == "1" && !word.is_empty() {
            out.push_str(&word);
        } else {
            out.push_str(&format!("{abs}·{word}"));
        }
    }
    out
}

fn render_matrix(m: &MatrixOut) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.certification;
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "generators: {}", self.generators.join(", "));
        let _ = writeln!(s, "Koszul certificate: verified up to internal degree N = {}", self.koszul_bound);
        let _ = writeln!(s, "AS-regular: {}", c.as_regular);
        let _ = writeln!(s, "global dimension d: {}", c.d);
        let _ = writeln!(s, "dim W_i: {:?}", c.koszul_dims);
        let _ = writeln!(s, "dim A_m: {:?}", c.algebra_dims);
        let _ = writeln!(s, "ω: {}", render_terms(&self.omega));
        if let Some(m) = &self.mu_a {
            let _ = writeln!(s, "μ_A: {}", render_matrix(m));
        }
        if let Some(m) = &self.sigma {
            let _ = writeln!(s, "σ: {}", render_matrix(m));
        }
        if let Some(h) = &self.hdet {
            let _ = writeln!(s, "hdet(σ): {h}");
        }
        if let Some(d) = &self.divergence {
            let _ = writeln!(s, "δ_r: {}", render_terms(&d.delta_r));
            let _ = writeln!(s, "δ_l: {}", render_terms(&d.delta_l));
            let _ = writeln!(s, "∇_σ·δ: {}", render_terms(&d.divergence));
        }
        if let Some(m) = &self.mu_b {
            let basis = self.extension_generators.as_deref().unwrap_or_default().join(", ");
            let _ = writeln!(s, "μ_B on ({basis}): {}", render_matrix(m));
        }
        if let Some(t) = &self.omega_hat {
            let _ = writeln!(s, "ω̂: {}", render_terms(t));
        }
        if let Some(cy) = self.calabi_yau {
            let _ = writeln!(s, "Calabi-Yau: {cy}");
        }
        if let Some(c) = &self.superpotential_checks {
            let _ = writeln!(s, "ω is μ_A-twisted: {}", c.omega_is_mu_a_twisted);
            let _ = writeln!(s, "∂(ω) = R: {}", c.quotient_of_omega_is_r);
            let _ = writeln!(s, "ω̂ is μ_B-twisted: {}", c.omega_hat_is_mu_b_twisted);
            let _ = writeln!(s, "∂(ω̂) = R̂: {}", c.quotient_of_omega_hat_is_r_hat);
        }
        if let Some(c) = &self.catalog {
            let _ = writeln!(s, "catalog family: {}", c.family);
            if let Some(case) = &c.case {
                let _ = writeln!(s, "catalog case: {case}{}", if c.derived_by_symmetry { " (by x1 ↔ x2)" } else { "" });
            }
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "parameters: {}", params.join(" "));
            let _ = writeln!(s, "closed form ({}): {}", c.oracle, render_matrix(&c.oracle_value));
            let _ = writeln!(s, "closed form matches: {}", c.matches);
            if let Some(cy) = c.classifier_calabi_yau {
                let _ = writeln!(s, "classifier Calabi-Yau: {cy}");
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            command: "ore".into(),
            koszul_bound: 5,
            generators: vec!["x".into(), "y".into()],
            certification: Certification {
                n: 2,
                d: 2,
                koszul_bound: 5,
                koszul_dims: vec![1, 2, 1, 0, 0, 0],
                algebra_dims: vec![1, 2, 3, 4, 5, 6],
                as_regular: true,
            },
            omega: vec![
                Term { coefficient: Scalar::Text("1".into()), word: vec!["x".into(), "y".into()] },
                Term { coefficient: Scalar::Text("-1".into()), word: vec!["y".into(), "x".into()] },
            ],
            mu_a: Some(vec![vec!["1".into(), "0".into()], vec!["0".into(), "1".into()]]),
            sigma: None,
            hdet: Some("1/2".into()),
            divergence: Some(DivergenceOut { delta_r: vec![], delta_l: vec![], divergence: vec![] }),
            extension_generators: Some(vec!["x".into(), "y".into(), "z".into()]),
            mu_b: None,
            omega_hat: None,
            calabi_yau: Some(false),
            superpotential_checks: None,
            catalog: None,
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let text = r.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn text_rendering() {
        let text = sample().to_text();
        assert!(text.contains("ω: x⊗y - y⊗x\n"));
        assert!(text.contains("N = 5"));
        assert!(text.contains("hdet(σ): 1/2\n"));
        assert!(text.contains("∇_σ·δ: 0\n"));
    }

    #[test]
    fn fresh_names() {
        assert_eq!(fresh_variable(&["x".into()]), "z");
        assert_eq!(fresh_variable(&["z".into(), "z0".into()]), "z1");
    }
}
