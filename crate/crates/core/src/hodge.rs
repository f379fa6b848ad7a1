//! Hodge–Deligne polynomial building blocks in the variables `u`, `v`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::exactpoly::{int, rat, Polynomial, Rational};
use crate::ratfunc::{NotPolynomial, RationalFunction};

pub const HODGE_VARS: [&str; 2] = ["u", "v"];

pub fn u() -> Polynomial {
    Polynomial::var(&HODGE_VARS, "u").expect("u")
}

pub fn v() -> Polynomial {
    Polynomial::var(&HODGE_VARS, "v").expect("v")
}

/// The product `uv`.
pub fn uv() -> Polynomial {
    u() * v()
}

pub fn one() -> Polynomial {
    Polynomial::one(&HODGE_VARS)
}

pub fn constant(c: i64) -> Polynomial {
    Polynomial::constant(&HODGE_VARS, int(c))
}

/// E-polynomial of a (possibly non-compact) stratum.
///
/// `variety` records whether the value claims to be the E-polynomial of a
/// genuine variety, in which case it must be a polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct EPolynomial {
    value: RationalFunction,
    variety: bool,
}

impl EPolynomial {
    pub fn variety(value: impl Into<RationalFunction>) -> Self {
        Self {
            value: value.into(),
            variety: true,
        }
    }

    /// A series or formal expression with no polynomiality claim.
    pub fn formal(value: impl Into<RationalFunction>) -> Self {
        Self {
            value: value.into(),
            variety: false,
        }
    }

    pub fn value(&self) -> &RationalFunction {
        &self.value
    }

    pub fn into_value(self) -> RationalFunction {
        self.value
    }

    pub fn is_variety(&self) -> bool {
        self.variety
    }

    pub fn as_polynomial(&self) -> Result<Polynomial, NotPolynomial> {
        self.value.is_polynomial()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            value: self.value.scale(c),
            variety: self.variety,
        }
    }
}

impl From<Polynomial> for EPolynomial {
    fn from(p: Polynomial) -> Self {
        Self::variety(p)
    }
}

impl fmt::Debug for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPolynomial({}, variety={})", self.value, self.variety)
    }
}

impl fmt::Display for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

macro_rules! epoly_op {
    ($tr:ident, $f:ident) => {
        impl $tr for &EPolynomial {
            type Output = EPolynomial;
            fn $f(self, rhs: &EPolynomial) -> EPolynomial {
                EPolynomial {
                    value: (&self.value).$f(&rhs.value),
                    variety: self.variety && rhs.variety,
                }
            }
        }
        impl $tr for EPolynomial {
            type Output = EPolynomial;
            fn $f(self, rhs: EPolynomial) -> EPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}

epoly_op!(Add, add);
epoly_op!(Sub, sub);
epoly_op!(Mul, mul);

impl Neg for &EPolynomial {
    type Output = EPolynomial;
    fn neg(self) -> EPolynomial {
        EPolynomial {
            value: -&self.value,
            variety: self.variety,
        }
    }
}

/// `E(ℙⁿ) = 1 + uv + … + (uv)ⁿ`.
pub fn proj_space(n: u32) -> EPolynomial {
    let q = uv();
    EPolynomial::variety((0..=n).fold(Polynomial::zero(&HODGE_VARS), |acc, k| acc + q.pow(k)))
}

/// `E(𝔸ⁿ) = (uv)ⁿ`.
pub fn affine_space(n: u32) -> EPolynomial {
    EPolynomial::variety(uv().pow(n))
}

/// E-polynomial of a genus-`g` Jacobian, `(1-u)^g (1-v)^g`.
pub fn jacobian(g: u32) -> EPolynomial {
    EPolynomial::variety((one() - u()).pow(g) * (one() - v()).pow(g))
}

fn negate_uv(e: &RationalFunction) -> RationalFunction {
    e.substitute_pairs(&[("u", -u()), ("v", -v())])
        .expect("sign change keeps the denominator nonzero")
}

/// `½(e(u,v) + e(−u,−v))`.
pub fn sign_average_rf(e: &RationalFunction) -> RationalFunction {
    (e + &negate_uv(e)).scale(&rat(1, 2))
}

/// `½(e(u,v) − e(−u,−v))`.
pub fn sign_odd_part_rf(e: &RationalFunction) -> RationalFunction {
    (e - &negate_uv(e)).scale(&rat(1, 2))
}

/// ℤ₂-invariant part for the involution acting by `(u,v) ↦ (−u,−v)`.
pub fn sign_average(e: &EPolynomial) -> EPolynomial {
    EPolynomial {
        value: sign_average_rf(&e.value),
        variety: e.variety,
    }
}

/// Anti-invariant part for the same involution.
pub fn sign_odd_part(e: &EPolynomial) -> EPolynomial {
    EPolynomial {
        value: sign_odd_part_rf(&e.value),
        variety: false,
    }
}

/// Correction `E(center)·(E(ℙ^{c−1}) − 1)` for blowing up a smooth center of
/// codimension `c ≥ 1`: the exceptional divisor replaces the center.
pub fn blowup_correction(center: &EPolynomial, codim: u32) -> EPolynomial {
    assert!(codim >= 1, "blow-up center must have positive codimension");
    let fiber_excess = proj_space(codim - 1) - EPolynomial::variety(one());
    center * &fiber_excess
}

/// E-polynomial of the symmetric square `Sym²Z`, `½(E(u,v)² + E(u²,v²))`.
pub fn symmetric_square(e: &EPolynomial) -> EPolynomial {
    let doubled = e
        .value
        .substitute_pairs(&[("u", u().pow(2)), ("v", v().pow(2))])
        .expect("squaring keeps the denominator nonzero");
    let value = (&e.value.pow(2) + &doubled).scale(&rat(1, 2));
    EPolynomial {
        value,
        variety: e.variety,
    }
}
