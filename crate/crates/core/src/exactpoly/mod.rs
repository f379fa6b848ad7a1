//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] carries an explicit, ordered variable universe. Terms are
//! keyed by exponent vectors aligned with that universe and kept in
//! graded-lexicographic order, which fixes both iteration and rendering.
//! Binary operations on polynomials over different universes first merge the
//! universes (left operand's order, then the new names of the right operand).

mod arith;
mod calculus;
mod divide;
mod modp;
mod monomial;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use calculus::{determinant, jacobian_det};
pub use modp::{inverse_mod, is_prime, FieldPoint, ModPPolynomial, MAX_PRIME};
pub use monomial::Monomial;

/// Exact rational number; always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `n/d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial is not divisible by the divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("expected a square system, got {rows} images in {cols} variables")]
    NonSquare { rows: usize, cols: usize },
    #[error("a coefficient denominator is divisible by {prime}")]
    CoefficientNotPAdic { prime: u64 },
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("{0} is not a supported prime")]
    InvalidPrime(u64),
    #[error("coordinate {value} is not a residue modulo {prime}")]
    CoordinateOutOfRange { value: u64, prime: u64 },
}

pub type Result<T, E = PolyError> = core::result::Result<T, E>;

#[derive(Clone)]
pub struct Polynomial {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Self {
            vars: universe(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.vars.len()), c);
        }
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The polynomial `name` inside the universe `vars`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let mut p = Self::zero(vars);
        let i = p
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut e = alloc::vec![0; p.vars.len()];
        e[i] = 1;
        p.terms.insert(Monomial::new(e), Rational::one());
        Ok(p)
    }

    /// Builds a polynomial from `(coefficient, exponent vector)` pairs.
    pub fn from_terms<S, I>(vars: &[S], terms: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Rational, Vec<u32>)>,
    {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            if e.len() != p.vars.len() {
                return Err(PolyError::DimensionMismatch {
                    expected: p.vars.len(),
                    found: e.len(),
                });
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }

    pub(crate) fn from_parts(vars: Arc<[String]>, terms: BTreeMap<Monomial, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Self { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub(crate) fn universe_arc(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial::new(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Single-term polynomials, including nonzero constants.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Maximum exponent of `var` over all terms (0 for the zero polynomial).
    pub fn degree_in(&self, var: &str) -> Result<u32> {
        let i = self.require(var)?;
        Ok(self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0))
    }

    /// Variables that actually occur in some term.
    pub fn support_vars(&self) -> Vec<&str> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.exp(*i) > 0))
            .map(|(_, v)| v.as_str())
            .collect()
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable that occurs in it.
    pub fn with_universe<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        let target = universe(vars);
        if target == self.vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match target.iter().position(|t| t == v) {
                Some(j) => map.push(Some(j)),
                None if self.terms.keys().all(|m| m.exp(i) == 0) => map.push(None),
                None => return Err(PolyError::UnknownVariable(v.clone())),
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.remap(&map, target.len()), c.clone()))
            .collect();
        Ok(Self::from_parts(target, terms))
    }

    /// Minimum exponent of `var` over all terms: the largest `k` with
    /// `var^k` dividing the polynomial.
    pub fn vanishing_order(&self, var: &str) -> Result<u32> {
        let i = self.require(var)?;
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.terms.keys().map(|m| m.exp(i)).min().unwrap_or(0))
    }

    /// Componentwise minimum exponent over all terms, as a monomial
    /// polynomial with coefficient 1.
    pub fn monomial_content(&self) -> Monomial {
        let n = self.vars.len();
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(n);
        };
        it.fold(first.clone(), |acc, m| acc.gcd(m))
    }

    /// Divides by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            let q = t.checked_div(m).ok_or(PolyError::NotDivisible)?;
            terms.insert(q, c.clone());
        }
        Ok(Self::from_parts(self.vars.clone(), terms))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::from_parts(self.vars.clone(), BTreeMap::new());
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Self::from_parts(self.vars.clone(), terms)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_monomial(&Monomial::one(self.vars.len()), c)
    }

    /// Evaluates at a full point aligned with the universe.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.vars.len(),
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Sum of all coefficients, i.e. the value at the all-ones point.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn require(&self, var: &str) -> Result<usize> {
        self.index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))
    }

    pub(crate) fn terms_map(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }
}

pub(crate) fn universe<S: AsRef<str>>(vars: &[S]) -> Arc<[String]> {
    vars.iter().map(|v| v.as_ref().to_string()).collect()
}

/// Merges two universes: `a`'s order followed by the names only `b` has.
pub(crate) fn merge_universes(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
    if Arc::ptr_eq(a, b) || a == b {
        return a.clone();
    }
    let mut out: Vec<String> = a.to_vec();
    for v in b.iter() {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out.into()
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        (self - other).is_zero()
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.vars.join(","), self)
    }
}

/// Terms from the leading one down; coefficients as `n` or `n/m`, powers as
/// `var^k`, factors joined by `*`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mono = m.render(&self.vars);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn uv() -> [&'static str; 2] {
        ["u", "v"]
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let u = Polynomial::var(&uv(), "u").unwrap();
        let v = Polynomial::var(&uv(), "v").unwrap();
        let p = &(&u * &u) * &v - u.scale(&rat(3, 2)) + Polynomial::one(&uv()) + v.clone();
        assert_eq!(format!("{p}"), "u^2*v - 3/2*u + v + 1");
        assert_eq!(format!("{}", Polynomial::zero(&uv())), "0");
        assert_eq!(format!("{}", -&v), "-v");
    }

    #[test]
    fn vanishing_order_rules() {
        let u = Polynomial::var(&uv(), "u").unwrap();
        let v = Polynomial::var(&uv(), "v").unwrap();
        let p = &u * &u * (&v + &u);
        assert_eq!(p.vanishing_order("u").unwrap(), 2);
        assert_eq!(p.vanishing_order("v").unwrap(), 0);
        assert_eq!(
            Polynomial::constant(&uv(), int(5))
                .vanishing_order("u")
                .unwrap(),
            0
        );
        assert_eq!(
            Polynomial::zero(&uv()).vanishing_order("u"),
            Err(PolyError::ZeroPolynomial)
        );
        assert!(matches!(
            p.vanishing_order("w"),
            Err(PolyError::UnknownVariable(_))
        ));
    }

    #[test]
    fn universes_merge_on_binary_ops() {
        let u = Polynomial::var(&["u"], "u").unwrap();
        let v = Polynomial::var(&["v"], "v").unwrap();
        let s = &u + &v;
        assert_eq!(s.vars(), &["u".to_string(), "v".to_string()]);
        let back = s.with_universe(&["v", "u", "w"]).unwrap();
        assert_eq!(back, s);
        assert!(s.with_universe(&["u"]).is_err());
    }
}
