use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{merge_universes, Monomial, PolyError, Polynomial, Rational, Result};

/// Brings both operands into a common universe, borrowing when possible.
fn align<'a>(a: &'a Polynomial, b: &'a Polynomial) -> (Cow<'a, Polynomial>, Cow<'a, Polynomial>) {
    if a.vars == b.vars {
        return (Cow::Borrowed(a), Cow::Borrowed(b));
    }
    let u = merge_universes(&a.vars, &b.vars);
    let lift = |p: &'a Polynomial| -> Cow<'a, Polynomial> {
        if p.vars == u {
            Cow::Borrowed(p)
        } else {
            Cow::Owned(
                p.with_universe(&u)
                    .expect("merged universe contains all variables"),
            )
        }
    };
    (lift(a), lift(b))
}

impl Polynomial {
    fn combine(&self, other: &Self, sign: bool) -> Self {
        let (a, b) = align(self, other);
        let mut out = Polynomial::from_parts(a.vars.clone(), a.terms.clone());
        for (m, c) in b.terms.iter() {
            out.add_term(m.clone(), if sign { c.clone() } else { -c.clone() });
        }
        out
    }

    fn product(&self, other: &Self) -> Self {
        let (a, b) = align(self, other);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in a.terms.iter() {
            for (mb, cb) in b.terms.iter() {
                let m = ma.mul(mb);
                let c = ca * cb;
                let slot = terms.entry(m).or_insert_with(Rational::zero);
                *slot += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial::from_parts(a.vars.clone(), terms)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Power with a signed exponent; negative exponents are rejected.
    pub fn try_pow(&self, n: i64) -> Result<Self> {
        let e = u32::try_from(n).map_err(|_| PolyError::NegativeExponent(n))?;
        Ok(self.pow(e))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, true)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, false)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.product(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial::from_parts(self.vars.clone(), terms)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
