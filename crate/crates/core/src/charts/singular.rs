use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::exactpoly::{ModPPolynomial, Polynomial};
use crate::report::VerificationReport;

use super::Result;

/// A subvariety of a chart given as `var ↦ image / denominator` in free
/// parameters. Unassigned chart variables stay free (and are not divided).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentParametrization {
    pub name: String,
    pub assignment: BTreeMap<String, Polynomial>,
    pub denominator: Option<Polynomial>,
}

impl ComponentParametrization {
    pub fn new(name: impl Into<String>, pairs: Vec<(&str, Polynomial)>) -> Self {
        Self {
            name: name.into(),
            assignment: pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            denominator: None,
        }
    }

    /// Every assigned image is divided by `denominator`.
    pub fn localized(mut self, denominator: Polynomial) -> Self {
        self.denominator = Some(denominator);
        self
    }

    /// `h` restricted to the component, with denominators cleared.
    /// Returns the cleared polynomial and the power of the denominator used.
    pub fn restrict(&self, h: &Polynomial) -> Result<(Polynomial, u32)> {
        let keep: BTreeMap<String, Polynomial> = self
            .assignment
            .iter()
            .filter(|(k, _)| h.index_of(k).is_some())
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Ok(match &self.denominator {
            Some(d) => h.substitute_cleared(&keep, d)?,
            None => (h.substitute(&keep)?, 0),
        })
    }
}

/// A subvariety of a chart given by defining equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentEquations {
    pub name: String,
    pub equations: Vec<Polynomial>,
}

impl ComponentEquations {
    pub fn new(name: impl Into<String>, equations: Vec<Polynomial>) -> Self {
        Self {
            name: name.into(),
            equations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCheck {
    pub component: String,
    pub holds: bool,
    /// Power of the localizing denominator multiplied through.
    pub clearing: u32,
    /// Names of `g` or its partials that fail to vanish.
    pub nonvanishing: Vec<String>,
}

/// Whether `g` and every first partial of `g` vanish identically on `comp`.
pub fn singular_component_check(
    g: &Polynomial,
    comp: &ComponentParametrization,
) -> Result<ComponentCheck> {
    let mut nonvanishing = Vec::new();
    let mut clearing = 0;
    let mut functions = alloc::vec![("g".to_string(), g.clone())];
    for v in g.vars() {
        functions.push((format!("∂g/∂{v}"), g.derivative(v)?));
    }
    for (label, h) in functions {
        let (restricted, k) = comp.restrict(&h)?;
        clearing = clearing.max(k);
        if !restricted.is_zero() {
            nonvanishing.push(label);
        }
    }
    Ok(ComponentCheck {
        component: comp.name.clone(),
        holds: nonvanishing.is_empty(),
        clearing,
        nonvanishing,
    })
}

/// Exhaustive search for singular points of `g = 0` over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    pub prime: u64,
    pub candidates: u64,
    pub on_hypersurface: u64,
    pub singular: u64,
    /// Singular points lying on each claimed component (points may be on
    /// several).
    pub per_component: Vec<(String, u64)>,
    pub stray: Vec<Vec<u64>>,
}

impl BruteForce {
    pub fn report(&self, title: impl Into<String>) -> VerificationReport {
        let mut r = VerificationReport::new(title);
        r.pass(
            "enumeration",
            format!(
                "{} points of F_{}^n, {} on the hypersurface, {} singular",
                self.candidates, self.prime, self.on_hypersurface, self.singular
            ),
        );
        for (name, n) in &self.per_component {
            r.pass(format!("on {name}"), n);
        }
        let witness = match self.stray.first() {
            Some(p) => format!("{} stray, first at {:?}", self.stray.len(), p),
            None => "0 stray".to_string(),
        };
        r.check(
            "singular points covered by claimed components",
            self.stray.is_empty(),
            witness,
        );
        r
    }
}

/// Enumerates `F_p^n`, collects the points with `g = ∇g = 0`, and checks
/// each against the defining equations of the claimed components.
pub fn singular_bruteforce(
    g: &Polynomial,
    prime: u64,
    claimed: &[ComponentEquations],
) -> Result<BruteForce> {
    let n = g.vars().len();
    let compile = |h: &Polynomial| -> Result<ModPPolynomial> {
        Ok(ModPPolynomial::compile(&h.with_universe(g.vars())?, prime)?)
    };
    let g_p = compile(g)?;
    let grad = g
        .gradient()
        .iter()
        .map(compile)
        .collect::<Result<Vec<_>>>()?;
    let comps = claimed
        .iter()
        .map(|c| c.equations.iter().map(compile).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;

    let candidates = prime.pow(n as u32);
    let mut point = alloc::vec![0u64; n];
    let mut on_hypersurface = 0;
    let mut singular = 0;
    let mut per_component = alloc::vec![0u64; claimed.len()];
    let mut stray = Vec::new();
    for _ in 0..candidates {
        if g_p.eval(&point) == 0 {
            on_hypersurface += 1;
            if grad.iter().all(|d| d.eval(&point) == 0) {
                singular += 1;
                let mut covered = false;
                for (i, eqs) in comps.iter().enumerate() {
                    if eqs.iter().all(|e| e.eval(&point) == 0) {
                        per_component[i] += 1;
                        covered = true;
                    }
                }
                if !covered {
                    stray.push(point.clone());
                }
            }
        }
        for c in point.iter_mut() {
            *c += 1;
            if *c < prime {
                break;
            }
            *c = 0;
        }
    }
    Ok(BruteForce {
        prime,
        candidates,
        on_hypersurface,
        singular,
        per_component: claimed
            .iter()
            .map(|c| c.name.clone())
            .zip(per_component)
            .collect(),
        stray,
    })
}
