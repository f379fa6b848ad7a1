//! Stratified resolutions and the stringy E-function assembler.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactpoly::{int, Rational};
use crate::hodge::{proj_space, EPolynomial, HODGE_VARS};
use crate::ratfunc::{RatFuncError, RationalFunction};
use crate::report::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StringyError {
    #[error("invalid resolution: {0}")]
    Invalid(String),
    #[error(
        "divisor {divisor} has discrepancy {discrepancy}; only integral weights are supported"
    )]
    NonIntegerWeight {
        divisor: String,
        discrepancy: Rational,
    },
    #[error("stratum {stratum}: {source}")]
    Stratum {
        stratum: String,
        #[source]
        source: RatFuncError,
    },
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
}

pub type Result<T, E = StringyError> = core::result::Result<T, E>;

/// An exceptional divisor with its discrepancy coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub id: String,
    pub discrepancy: Rational,
}

impl Divisor {
    pub fn new(id: impl Into<String>, discrepancy: Rational) -> Self {
        Self {
            id: id.into(),
            discrepancy,
        }
    }
}

/// The open stratum `D⁰_J` together with its E-polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub divisors: BTreeSet<String>,
    pub e: EPolynomial,
}

impl Stratum {
    pub fn new<I, S>(divisors: I, e: EPolynomial) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            divisors: divisors.into_iter().map(Into::into).collect(),
            e,
        }
    }

    /// `∅` or `{D1,D2}`.
    pub fn label(&self) -> String {
        label(&self.divisors)
    }
}

fn label(ids: &BTreeSet<String>) -> String {
    if ids.is_empty() {
        return "∅".to_string();
    }
    let joined: Vec<&str> = ids.iter().map(String::as_str).collect();
    format!("{{{}}}", joined.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedResolution {
    pub dimension: u32,
    pub divisors: Vec<Divisor>,
    pub strata: Vec<Stratum>,
}

/// Stringy Euler number with the contribution of every stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerBreakdown {
    pub total: Rational,
    pub per_stratum: Vec<(String, Rational)>,
}

/// `(uv−1)/((uv)^{a+1}−1) = 1/(1 + uv + … + (uv)^a)`.
pub fn weight_factor(a: u32) -> RationalFunction {
    let den = proj_space(a)
        .as_polynomial()
        .expect("projective space is polynomial");
    RationalFunction::new(crate::hodge::one(), den).expect("nonzero denominator")
}

impl StratifiedResolution {
    pub fn new(dimension: u32, divisors: Vec<Divisor>, strata: Vec<Stratum>) -> Self {
        Self {
            dimension,
            divisors,
            strata,
        }
    }

    pub fn divisor(&self, id: &str) -> Option<&Divisor> {
        self.divisors.iter().find(|d| d.id == id)
    }

    pub fn stratum(&self, ids: &[&str]) -> Option<&Stratum> {
        let key: BTreeSet<String> = ids.iter().map(|s| s.to_string()).collect();
        self.strata.iter().find(|s| s.divisors == key)
    }

    /// Checks log-terminality and the shape of the stratification.
    pub fn validate(&self) -> VerificationReport {
        let mut r = VerificationReport::new("resolution");
        let minus_one = -Rational::one();
        for d in &self.divisors {
            r.check(
                format!("log-terminal {}", d.id),
                d.discrepancy > minus_one,
                format!("a = {}", d.discrepancy),
            );
        }
        let mut ids = BTreeSet::new();
        let dup: Vec<&str> = self
            .divisors
            .iter()
            .filter(|d| !ids.insert(d.id.as_str()))
            .map(|d| d.id.as_str())
            .collect();
        r.check("distinct divisor ids", dup.is_empty(), dup.join(","));

        let empties = self.strata.iter().filter(|s| s.divisors.is_empty()).count();
        r.check(
            "single open stratum",
            empties == 1,
            format!("{empties} strata with J = ∅"),
        );

        let mut seen = BTreeSet::new();
        let repeated: Vec<String> = self
            .strata
            .iter()
            .filter(|s| !seen.insert(&s.divisors))
            .map(Stratum::label)
            .collect();
        r.check("distinct strata", repeated.is_empty(), repeated.join(" "));

        let unknown: Vec<String> = self
            .strata
            .iter()
            .flat_map(|s| s.divisors.iter())
            .filter(|id| !ids.contains(id.as_str()))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        r.check(
            "strata reference known divisors",
            unknown.is_empty(),
            unknown.join(","),
        );

        for s in self.strata.iter().filter(|s| s.e.is_variety()) {
            r.check(
                format!("E{} polynomial", s.label()),
                s.e.as_polynomial().is_ok(),
                "",
            );
        }
        r
    }

    fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.all_passed() {
            return Ok(());
        }
        let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
        Err(StringyError::Invalid(failed.join("; ")))
    }

    /// `a + 1` as a nonnegative integer, per divisor.
    fn weight_exponent(&self, id: &str) -> Result<u32> {
        let d = self
            .divisor(id)
            .ok_or_else(|| StringyError::Invalid(format!("unknown divisor {id}")))?;
        let a = &d.discrepancy;
        let non_integral = || StringyError::NonIntegerWeight {
            divisor: d.id.clone(),
            discrepancy: a.clone(),
        };
        if !a.is_integer() || a.is_negative() {
            return Err(non_integral());
        }
        a.to_integer().to_u32().ok_or_else(non_integral)
    }

    fn stratum_weight(&self, s: &Stratum) -> Result<RationalFunction> {
        let mut w = RationalFunction::one(&HODGE_VARS);
        for id in &s.divisors {
            w = &w * &weight_factor(self.weight_exponent(id)?);
        }
        Ok(w)
    }

    /// `Σ_J E(D⁰_J) Π_{j∈J} (uv−1)/((uv)^{a_j+1}−1)`.
    pub fn assemble(&self) -> Result<RationalFunction> {
        self.require_valid()?;
        let mut total = RationalFunction::zero(&HODGE_VARS);
        for s in &self.strata {
            let term = s.e.value() * &self.stratum_weight(s)?;
            total = &total + &term;
        }
        Ok(total)
    }

    /// `Σ_J χ(D⁰_J) Π_{j∈J} 1/(a_j+1)`, computed stratum by stratum.
    pub fn stringy_euler(&self) -> Result<EulerBreakdown> {
        self.require_valid()?;
        let mut total = Rational::zero();
        let mut per_stratum = Vec::with_capacity(self.strata.len());
        for s in &self.strata {
            let chi =
                s.e.value()
                    .diagonal_limit_at_one()
                    .map_err(|source| StringyError::Stratum {
                        stratum: s.label(),
                        source,
                    })?;
            let mut c = chi;
            for id in &s.divisors {
                c /= int(self.weight_exponent(id)? as i64 + 1);
            }
            total += &c;
            per_stratum.push((s.label(), c));
        }
        Ok(EulerBreakdown { total, per_stratum })
    }
}

/// Outcome of the Poincaré duality test `E(u,v) = (uv)^d E(1/u,1/v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityOutcome {
    pub symmetric: bool,
    /// `E(0,0)`, or `None` when the stored denominator vanishes there.
    pub origin: Option<Rational>,
}

impl DualityOutcome {
    pub fn holds(&self) -> bool {
        self.symmetric && self.origin.as_ref().is_none_or(|v| v.is_one())
    }
}

impl fmt::Display for DualityOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "symmetric = {}, ", self.symmetric)?;
        match &self.origin {
            Some(v) => write!(f, "E(0,0) = {v}"),
            None => write!(f, "E(0,0) skipped (denominator vanishes at origin)"),
        }
    }
}

pub fn duality_outcome(est: &RationalFunction, d: u32) -> Result<DualityOutcome> {
    let dual = est.dual_substitute(d)?;
    let symmetric = dual.rf_equal(est);
    let lifted = est.with_universe(&HODGE_VARS)?;
    let origin = lifted.eval(&[Rational::zero(), Rational::zero()])?;
    Ok(DualityOutcome { symmetric, origin })
}

/// True iff `est` satisfies Poincaré duality in dimension `d` and takes the
/// value 1 at the origin whenever that value is defined.
pub fn duality_check(est: &RationalFunction, d: u32) -> bool {
    duality_outcome(est, d).is_ok_and(|o| o.holds())
}
