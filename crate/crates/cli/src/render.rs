use serde::Serialize;
use stringy_core::hodge::HODGE_VARS;
use stringy_core::{Polynomial, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsonTerm {
    pub coefficient: String,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsonRationalFunction {
    pub variables: Vec<String>,
    pub numerator: Vec<JsonTerm>,
    pub denominator: Vec<JsonTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expression involves variables outside (u, v): {0:?}")]
pub struct NotInUV(pub Vec<String>);

fn in_uv(f: &RationalFunction) -> Result<RationalFunction, NotInUV> {
    f.with_universe(&HODGE_VARS)
        .map_err(|_| NotInUV(f.support_vars()))
}

fn json_terms(p: &Polynomial) -> Vec<JsonTerm> {
    p.terms()
        .rev()
        .map(|(m, c)| JsonTerm {
            coefficient: c.to_string(),
            exponents: m.exponents().to_vec(),
        })
        .collect()
}

/// Numerator and denominator term lists over the variable order `[u, v]`,
/// highest graded-lex term first.
pub fn to_json(f: &RationalFunction) -> Result<String, NotInUV> {
    let f = in_uv(f)?;
    let doc = JsonRationalFunction {
        variables: HODGE_VARS.iter().map(|s| s.to_string()).collect(),
        numerator: json_terms(f.numerator()),
        denominator: json_terms(f.denominator()),
    };
    Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
}

fn latex_poly(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let negative = c < &num_traits::Zero::zero();
        out.push_str(match (k, negative) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let abs = if negative { -c.clone() } else { c.clone() };
        let mono: String = p
            .vars()
            .iter()
            .zip(m.exponents())
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                if e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{{{e}}}")
                }
            })
            .collect();
        let coeff = if abs.is_integer() {
            abs.to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
        };
        if mono.is_empty() {
            out.push_str(&coeff);
        } else if coeff != "1" {
            out.push_str(&coeff);
            out.push_str(&mono);
        } else {
            out.push_str(&mono);
        }
    }
    out
}

pub fn to_latex(f: &RationalFunction) -> Result<String, NotInUV> {
    let f = in_uv(f)?;
    if f.denominator().is_one() {
        return Ok(latex_poly(f.numerator()));
    }
    Ok(format!(
        "\\frac{{{}}}{{{}}}",
        latex_poly(f.numerator()),
        latex_poly(f.denominator())
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_rational_function;

    #[test]
    fn latex() {
        let f = parse_rational_function("(3/2*u^2*v - v + 1)/(1 + q)").unwrap();
        assert_eq!(
            to_latex(&f).unwrap(),
            "\\frac{\\frac{3}{2}u^{2}v - v + 1}{uv + 1}"
        );
    }

    #[test]
    fn json_is_ordered() {
        let f = parse_rational_function("u - 2*v^2").unwrap();
        let json: serde_json::Value = serde_json::from_str(&to_json(&f).unwrap()).unwrap();
        assert_eq!(json["variables"], serde_json::json!(["u", "v"]));
        assert_eq!(json["numerator"][0]["coefficient"], "-2");
        assert_eq!(json["numerator"][0]["exponents"], serde_json::json!([0, 2]));
        assert_eq!(json["denominator"][0]["coefficient"], "1");
    }
}
