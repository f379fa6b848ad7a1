//! Quotients of polynomials with semantic equality.
//!
//! No multivariate GCD is computed. Equality is decided by cross
//! multiplication, and arithmetic results are only opportunistically reduced:
//! shared monomial content is stripped and cyclotomic factors `Φ_k(m)` (for a
//! single variable `m`, or `m = uv` when both Hodge variables are present)
//! are divided out of numerator and denominator while both admit them.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactpoly::{merge_universes, Monomial, PolyError, Polynomial, Rational};

/// Largest cyclotomic index tried during reduction.
const MAX_CYCLOTOMIC: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatFuncError {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("expected a function of u and v only, found variable `{0}`")]
    NotInUV(String),
    #[error("the diagonal limit at u = v = 1 does not exist")]
    PoleAtOne,
    #[error("expected a univariate function on the diagonal, found variable `{0}`")]
    NotDiagonal(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T, E = RatFuncError> = core::result::Result<T, E>;

/// Verdict of [`RationalFunction::is_polynomial`] when the denominator does
/// not divide the numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("not a polynomial")]
pub struct NotPolynomial;

#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// `num / den`, reduced opportunistically.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        Ok(Self::new_unreduced(num, den)?.reduced())
    }

    /// `num / den` exactly as given (universes aligned, nothing cancelled).
    pub fn new_unreduced(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        let u = merge_universes(num.universe_arc(), den.universe_arc());
        Ok(Self {
            num: num.with_universe(&u)?,
            den: den.with_universe(&u)?,
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.vars());
        Self { num: p, den }
    }

    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::from_poly(Polynomial::zero(vars))
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::from_poly(Polynomial::one(vars))
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(vars, c))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn vars(&self) -> &[String] {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Variables occurring in the numerator or denominator.
    pub fn support_vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for v in self
            .num
            .support_vars()
            .into_iter()
            .chain(self.den.support_vars())
        {
            if !out.iter().any(|o| o == v) {
                out.push(v.to_string());
            }
        }
        out
    }

    pub fn with_universe<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        Ok(Self {
            num: self.num.with_universe(vars)?,
            den: self.den.with_universe(vars)?,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .reduced()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        Self {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// `self.num · other.den == other.num · self.den`.
    pub fn rf_equal(&self, other: &Self) -> bool {
        (&self.num * &other.den - &other.num * &self.den).is_zero()
    }

    /// The polynomial this function equals, if the denominator divides the
    /// numerator exactly.
    pub fn is_polynomial(&self) -> Result<Polynomial, NotPolynomial> {
        if let Some(c) = self.den.as_constant() {
            return Ok(self.num.scale(&c.recip()));
        }
        let content = self
            .num
            .monomial_content()
            .gcd(&self.den.monomial_content());
        let num = self.num.div_monomial(&content).map_err(|_| NotPolynomial)?;
        let den = self.den.div_monomial(&content).map_err(|_| NotPolynomial)?;
        num.exact_divide(&den).map_err(|_| NotPolynomial)
    }

    pub fn substitute(&self, assignment: &BTreeMap<String, Polynomial>) -> Result<Self> {
        let assignment = |p: &Polynomial| -> Result<Polynomial> {
            let own: BTreeMap<String, Polynomial> = assignment
                .iter()
                .filter(|(k, _)| p.index_of(k).is_some())
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            Ok(p.substitute(&own)?)
        };
        let den = assignment(&self.den)?;
        if den.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Self::new(assignment(&self.num)?, den)
    }

    pub fn substitute_pairs(&self, pairs: &[(&str, Polynomial)]) -> Result<Self> {
        let map = pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        self.substitute(&map)
    }

    /// Value at a point aligned with the universe; `None` where the stored
    /// denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Result<Option<Rational>> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.num.eval(point)? / d))
    }

    /// `(uv)^d · self(1/u, 1/v)`, with negative powers cleared into the
    /// numerator or denominator.
    pub fn dual_substitute(&self, d: u32) -> Result<Self> {
        for v in self.support_vars() {
            if v != "u" && v != "v" {
                return Err(RatFuncError::NotInUV(v));
            }
        }
        let uv = crate::exactpoly::universe(&["u", "v"]);
        let lift = |p: &Polynomial| p.with_universe(&uv);
        let num = lift(&self.num)?;
        let den = lift(&self.den)?;
        let (num_rev, nu, nv) = reverse(&num);
        let (den_rev, du, dv) = reverse(&den);
        // (uv)^d · u^{du-nu} v^{dv-nv} · num_rev / den_rev
        let eu = d as i64 + du as i64 - nu as i64;
        let ev = d as i64 + dv as i64 - nv as i64;
        let split = |e: i64| -> (u32, u32) {
            if e >= 0 {
                (e as u32, 0)
            } else {
                (0, (-e) as u32)
            }
        };
        let (up, un) = split(eu);
        let (vp, vn) = split(ev);
        let one = Rational::one();
        let num_out = num_rev.mul_monomial(&Monomial::new(alloc::vec![up, vp]), &one);
        let den_out = den_rev.mul_monomial(&Monomial::new(alloc::vec![un, vn]), &one);
        Self::new(num_out, den_out)
    }

    /// Limit at `u = v = 1` along the diagonal `u = v = t`.
    pub fn diagonal_limit_at_one(&self) -> Result<Rational> {
        let t = Polynomial::var(&["t"], "t")?;
        let diag = |p: &Polynomial| -> Result<Polynomial> {
            let pairs: Vec<(&str, Polynomial)> = ["u", "v"]
                .into_iter()
                .filter(|v| p.index_of(v).is_some())
                .map(|v| (v, t.clone()))
                .collect();
            let q = p.substitute_pairs(&pairs)?;
            if let Some(bad) = q.support_vars().into_iter().find(|v| *v != "t") {
                return Err(RatFuncError::NotDiagonal(bad.to_string()));
            }
            Ok(q.with_universe(&["t"])?)
        };
        let (num, ord_num) = strip_root_at_one(diag(&self.num)?);
        let (den, ord_den) = strip_root_at_one(diag(&self.den)?);
        if num.is_zero() {
            return Ok(Rational::zero());
        }
        match ord_num.cmp(&ord_den) {
            core::cmp::Ordering::Less => Err(RatFuncError::PoleAtOne),
            core::cmp::Ordering::Greater => Ok(Rational::zero()),
            core::cmp::Ordering::Equal => Ok(num.coefficient_sum() / den.coefficient_sum()),
        }
    }

    /// Cancels shared monomial content and shared cyclotomic factors, then
    /// makes the denominator's leading coefficient 1.
    pub fn reduced(self) -> Self {
        let Self { mut num, mut den } = self;
        if num.is_zero() {
            return Self::from_poly(num);
        }
        let content = num.monomial_content().gcd(&den.monomial_content());
        if !content.is_one() {
            num = num.div_monomial(&content).expect("content divides");
            den = den.div_monomial(&content).expect("content divides");
        }
        if !den.is_constant() {
            for factor in cyclotomic_candidates(&den) {
                while let (Ok(d), Ok(n)) = (den.exact_divide(&factor), num.exact_divide(&factor)) {
                    num = n;
                    den = d;
                }
                if den.is_constant() {
                    break;
                }
            }
        }
        let lead = den
            .leading_term()
            .map(|(_, c)| c.clone())
            .expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }
}

/// Reverses exponents: `p*(u,v) = u^{deg_u} v^{deg_v} p(1/u, 1/v)`.
fn reverse(p: &Polynomial) -> (Polynomial, u32, u32) {
    let du = p.degree_in("u").unwrap_or(0);
    let dv = p.degree_in("v").unwrap_or(0);
    let terms = p
        .terms()
        .map(|(m, c)| (c.clone(), alloc::vec![du - m.exp(0), dv - m.exp(1)]));
    let out = Polynomial::from_terms(p.vars(), terms).expect("same arity");
    (out, du, dv)
}

/// Divides out `(t - 1)` as often as possible.
fn strip_root_at_one(mut p: Polynomial) -> (Polynomial, u32) {
    if p.is_zero() {
        return (p, 0);
    }
    let vars = p.vars().to_vec();
    let t_minus_one =
        Polynomial::var(&vars, "t").expect("diagonal variable") - Polynomial::one(&vars);
    let mut order = 0;
    while p.coefficient_sum().is_zero() {
        p = p.exact_divide(&t_minus_one).expect("root at one");
        order += 1;
    }
    (p, order)
}

/// `Φ_k(m)` for `k ≤ MAX_CYCLOTOMIC`, `m` ranging over the single variables
/// occurring in `den` and over `uv`.
fn cyclotomic_candidates(den: &Polynomial) -> Vec<Polynomial> {
    let vars = den.vars().to_vec();
    let support = den.support_vars();
    let mut bases: Vec<Polynomial> = Vec::new();
    if support.contains(&"u") && support.contains(&"v") {
        bases.push(
            Polynomial::var(&vars, "u").expect("u") * Polynomial::var(&vars, "v").expect("v"),
        );
    }
    for v in &support {
        bases.push(Polynomial::var(&vars, v).expect("own variable"));
    }
    let one = Polynomial::one(&vars);
    let mut out = Vec::new();
    for m in bases {
        let mut phis: Vec<Polynomial> = Vec::new();
        for k in 1..=MAX_CYCLOTOMIC {
            let mut phi = m.pow(k) - &one;
            for (d, phi_d) in phis.iter().enumerate() {
                if k % (d as u32 + 1) == 0 {
                    phi = phi.exact_divide(phi_d).expect("cyclotomic factorization");
                }
            }
            phis.push(phi);
        }
        out.extend(phis);
    }
    out
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.rf_equal(other)
    }
}

impl Eq for RationalFunction {}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        combine(self, rhs, false)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        combine(self, rhs, true)
    }
}

fn combine(a: &RationalFunction, b: &RationalFunction, negate: bool) -> RationalFunction {
    let bn = if negate { -&b.num } else { b.num.clone() };
    let (num, den) = if a.den == b.den {
        (&a.num + &bn, a.den.clone())
    } else if let Ok(k) = a.den.exact_divide(&b.den) {
        (&a.num + &(&bn * &k), a.den.clone())
    } else if let Ok(k) = b.den.exact_divide(&a.den) {
        (&(&a.num * &k) + &bn, b.den.clone())
    } else {
        (&a.num * &b.den + &bn * &a.den, &a.den * &b.den)
    };
    RationalFunction::new(num, den).expect("nonzero denominator")
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$f(rhs)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// `num / den`; a factor with more than one term is parenthesized and a unit
/// denominator is omitted.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.len() > 1 {
            alloc::format!("({})", self.num)
        } else {
            alloc::format!("{}", self.num)
        };
        let den = alloc::format!("{}", self.den);
        if den.contains(['*', '/', '-', ' ']) {
            write!(f, "{num} / ({den})")
        } else {
            write!(f, "{num} / {den}")
        }
    }
}
