//! The JSON problem document and its compilation to core objects.

use std::collections::BTreeMap;

use nakayama_core::algebra::QuadraticAlgebra;
use nakayama_core::linalg::Tensor;
use nakayama_core::{Error, QMatrix, QTensor, Rational, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A scalar as it appears in a document: a string such as `"-3"`, `"2/7"` or
/// `"0.125"`, or a bare JSON integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Scalar::Text(s) => parse_rational(s),
            Scalar::Int(v) => Ok(Rational::from_integer(BigInt::from(*v))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coefficient: Scalar,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub koszul_bound: Option<usize>,
    pub command: Option<String>,
}

/// Missing `automorphism` means the identity; generators missing from
/// `derivation` are sent to zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub generators: Vec<String>,
    pub relations: Vec<Vec<Term>>,
    #[serde(default)]
    pub automorphism: Option<Vec<Vec<Scalar>>>,
    #[serde(default)]
    pub derivation: BTreeMap<String, Vec<Term>>,
    #[serde(default)]
    pub options: Options,
}

/// Parses an integer, a fraction `a/b` or a finite decimal.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidInput(format!("`{text}` is not an exact rational"));
    let int = |p: &str| -> Result<BigInt> {
        let digits = p.strip_prefix(['+', '-']).unwrap_or(p);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        p.parse::<BigInt>().map_err(|_| bad())
    };
    if let Some((num, den)) = s.split_once('/') {
        let (num, den) = (int(num.trim())?, int(den.trim())?);
        if den.is_zero() {
            return Err(Error::InvalidInput(format!("`{text}` has a zero denominator")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let unsigned = whole.trim_start_matches(['+', '-']);
        if whole.len() - unsigned.len() > 1 || !unsigned.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let magnitude: BigInt = format!("{unsigned}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(magnitude, scale);
        return Ok(if negative { -value } else { value });
    }
    int(s).map(Rational::from_integer)
}

/// The objects described by a [`ProblemSpec`], before certification.
pub struct Problem {
    pub algebra: QuadraticAlgebra<Rational>,
    pub sigma: QMatrix,
    pub sigma_given: bool,
    pub images: Vec<QTensor>,
    pub koszul_bound: Option<usize>,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("problem document: {e}")))
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator `{name}`")))
    }

    fn tensor(&self, terms: &[Term], degree: usize, what: &str) -> Result<QTensor> {
        let n = self.generators.len();
        let mut t = Tensor::zero(n, degree);
        for term in terms {
            if term.word.len() != degree {
                return Err(Error::InvalidInput(format!(
                    "{what}: word {:?} has length {} instead of {degree}",
                    term.word,
                    term.word.len()
                )));
            }
            let word = term.word.iter().map(|g| self.index_of(g)).collect::<Result<Vec<_>>>()?;
            t.add_term(word, term.coefficient.to_rational()?);
        }
        Ok(t)
    }

    pub fn compile(&self) -> Result<Problem> {
        let n = self.generators.len();
        if n == 0 {
            return Err(Error::InvalidInput("no generators".into()));
        }
        let relations = self
            .relations
            .iter()
            .enumerate()
            .map(|(k, r)| self.tensor(r, 2, &format!("relation {}", k + 1)))
            .collect::<Result<Vec<_>>>()?;
        let algebra = QuadraticAlgebra::new(n, &relations)?.with_names(self.generators.clone())?;
        let sigma = match &self.automorphism {
            None => QMatrix::identity(n),
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidInput(format!("the automorphism must be a {n}×{n} matrix")));
                }
                let rows = rows.iter().map(|r| r.iter().map(Scalar::to_rational).collect()).collect::<Result<Vec<_>>>()?;
                QMatrix::from_rows(rows)?
            }
        };
        for name in self.derivation.keys() {
            self.index_of(name)?;
        }
        let images = self
            .generators
            .iter()
            .map(|g| match self.derivation.get(g) {
                Some(terms) => self.tensor(terms, 2, &format!("δ({g})")),
                None => Ok(Tensor::zero(n, 2)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Problem {
            algebra,
            sigma,
            sigma_given: self.automorphism.is_some(),
            images,
            koszul_bound: self.options.koszul_bound,
        })
    }
}

/// `"name=value"` as used by `--param`.
pub fn parse_assignment(text: &str) -> Result<(String, Rational)> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| Error::InvalidInput(format!("parameter `{text}` is not of the form name=value")))?;
    Ok((name.trim().to_string(), parse_rational(value)?))
}


#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn rational_syntax() {
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        assert_eq!(parse_rational(" -3/6 ").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), r(1, 8));
        assert_eq!(parse_rational("-2.50").unwrap(), r(-5, 2));
        assert_eq!(parse_rational("+4").unwrap(), r(4, 1));
        for bad in ["", "1/0", "1.5e3", "x", "1/2/3", "--1", "1.", ".", "0.1.2", "1/-"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn compiles_a_document() {
        let doc = r#"{
            "generators": ["x", "y"],
            "relations": [[{"coefficient": "1", "word": ["x", "y"]}, {"coefficient": "-1", "word": ["y", "x"]}]],
            "automorphism": [["1", "0"], [0, "1"]],
            "derivation": {"x": [{"coefficient": "1/2", "word": ["x", "x"]}]}
        }"#;
        let p = ProblemSpec::from_json(doc).unwrap().compile().unwrap();
        assert_eq!(p.algebra.names(), ["x", "y"]);
        assert_eq!(p.images[0].coeff(&[0, 0]), r(1, 2));
        assert!(p.images[1].is_zero());
        assert!(p.sigma_given);
    }

    #[test]
    fn rejects_malformed_documents() {
        let base = |rel: &str, extra: &str| {
            format!(r#"{{"generators": ["x", "y"], "relations": [[{rel}]]{extra}}}"#)
        };
        let cubic = base(r#"{"coefficient": "1", "word": ["x", "y", "x"]}"#, "");
        assert!(ProblemSpec::from_json(&cubic).unwrap().compile().is_err());
        let unknown = base(r#"{"coefficient": "1", "word": ["x", "w"]}"#, "");
        assert!(ProblemSpec::from_json(&unknown).unwrap().compile().is_err());
        let ok = r#"{"coefficient": "1", "word": ["x", "y"]}"#;
        let rect = base(ok, r#", "automorphism": [["1", "0"]]"#);
        assert!(ProblemSpec::from_json(&rect).unwrap().compile().is_err());
        let stray = base(ok, r#", "derivation": {"w": []}"#);
        assert!(ProblemSpec::from_json(&stray).unwrap().compile().is_err());
        assert!(ProblemSpec::from_json(&base(ok, r#", "colour": 1"#)).is_err());
        let float = base(r#"{"coefficient": 0.5, "word": ["x", "y"]}"#, "");
        assert!(ProblemSpec::from_json(&float).is_err());
    }
}
