//! JSON instance documents. Rationals are strings (`"4"`, `"-1/2"`) and
//! stratum E-values are expressions in `u`, `v`, `q`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use stringy_core::hodge::{EPolynomial, HODGE_VARS};
use stringy_core::report::VerificationReport;
use stringy_core::stringy::{Divisor, StratifiedResolution, Stratum};
use stringy_core::Rational;

use crate::expr::{parse_rational_function, ExprError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub dimension: u32,
    pub divisors: Vec<DivisorEntry>,
    pub strata: Vec<StratumEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorEntry {
    pub id: String,
    pub discrepancy: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumEntry {
    #[serde(rename = "J")]
    pub divisors: Vec<String>,
    #[serde(rename = "E")]
    pub e: String,
    /// `false` for formal series that need not be polynomials.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub variety: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed instance document at `{path}`: {message}")]
    Shape { path: String, message: String },
    #[error("divisors[{index}].discrepancy: `{value}` is not a rational number")]
    Discrepancy { index: usize, value: String },
    #[error("strata[{index}].E: {source}")]
    Expression { index: usize, source: ExprError },
    #[error("instance fails validation:\n{}", .failures.join("\n"))]
    Invalid { failures: Vec<String> },
    #[error("stratum {stratum} is not expressible in u and v")]
    NotExportable { stratum: String },
}

/// Parses `"n"` or `"n/m"`, with an optional sign on `n`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if num_traits::Zero::is_zero(&d) {
        return None;
    }
    Some(Rational::new(n, d))
}

impl InstanceDocument {
    pub fn from_json(src: &str) -> Result<Self, DocumentError> {
        let de = &mut serde_json::Deserializer::from_str(src);
        serde_path_to_error::deserialize(de).map_err(|e| DocumentError::Shape {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Builds the resolution without validating it.
    pub fn to_resolution(&self) -> Result<StratifiedResolution, DocumentError> {
        let divisors = self
            .divisors
            .iter()
            .enumerate()
            .map(|(index, d)| {
                parse_rational(&d.discrepancy)
                    .map(|a| Divisor::new(d.id.clone(), a))
                    .ok_or_else(|| DocumentError::Discrepancy {
                        index,
                        value: d.discrepancy.clone(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let strata = self
            .strata
            .iter()
            .enumerate()
            .map(|(index, s)| {
                let value = parse_rational_function(&s.e)
                    .map_err(|source| DocumentError::Expression { index, source })?;
                let e = if s.variety {
                    EPolynomial::variety(value)
                } else {
                    EPolynomial::formal(value)
                };
                Ok(Stratum::new(s.divisors.iter().map(String::as_str), e))
            })
            .collect::<Result<Vec<_>, DocumentError>>()?;
        Ok(StratifiedResolution::new(self.dimension, divisors, strata))
    }

    pub fn from_resolution(res: &StratifiedResolution) -> Result<Self, DocumentError> {
        let divisors = res
            .divisors
            .iter()
            .map(|d| DivisorEntry {
                id: d.id.clone(),
                discrepancy: d.discrepancy.to_string(),
            })
            .collect();
        let strata = res
            .strata
            .iter()
            .map(|s| {
                let value = s.e.value();
                if value
                    .support_vars()
                    .iter()
                    .any(|v| !HODGE_VARS.contains(&v.as_str()))
                {
                    return Err(DocumentError::NotExportable { stratum: s.label() });
                }
                Ok(StratumEntry {
                    divisors: s.divisors.iter().cloned().collect(),
                    e: value.to_string(),
                    variety: s.e.is_variety(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            dimension: res.dimension,
            divisors,
            strata,
        })
    }
}

/// Parses and validates a document.
pub fn parse_instance(src: &str) -> Result<StratifiedResolution, DocumentError> {
    let res = InstanceDocument::from_json(src)?.to_resolution()?;
    check_valid(&res.validate())?;
    Ok(res)
}

fn check_valid(report: &VerificationReport) -> Result<(), DocumentError> {
    if report.all_passed() {
        return Ok(());
    }
    let failures = report
        .failures()
        .map(|c| format!("  {}: {}", c.name, c.witness))
        .collect();
    Err(DocumentError::Invalid { failures })
}

pub fn load_instance(path: &Path) -> Result<StratifiedResolution, DocumentError> {
    let src = fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_instance(&src)
}
