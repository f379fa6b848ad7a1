use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{PolyError, Polynomial, Result};

/// Largest prime accepted by the finite-field evaluators. Products of two
/// residues must fit in `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A point of `F_p^n`, coordinates in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldPoint {
    prime: u64,
    coords: Vec<u64>,
}

impl FieldPoint {
    pub fn new(prime: u64, coords: Vec<u64>) -> Result<Self> {
        if !is_prime(prime) || prime > MAX_PRIME {
            return Err(PolyError::InvalidPrime(prime));
        }
        if let Some(&value) = coords.iter().find(|&&c| c >= prime) {
            return Err(PolyError::CoordinateOutOfRange { value, prime });
        }
        Ok(Self { prime, coords })
    }

    /// Reduces arbitrary signed coordinates into `[0, p)`.
    pub fn reduce(prime: u64, coords: &[i64]) -> Result<Self> {
        let p = prime as i64;
        Self::new(
            prime,
            coords.iter().map(|c| c.rem_euclid(p) as u64).collect(),
        )
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

fn residue(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() {
        r + BigInt::from(p)
    } else {
        r
    };
    r.to_u64().expect("residue below p")
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inverse_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// A polynomial reduced modulo `p`, for fast repeated evaluation.
#[derive(Debug, Clone)]
pub struct ModPPolynomial {
    prime: u64,
    arity: usize,
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl ModPPolynomial {
    pub fn compile(poly: &Polynomial, prime: u64) -> Result<Self> {
        if !is_prime(prime) || prime > MAX_PRIME {
            return Err(PolyError::InvalidPrime(prime));
        }
        let mut terms = Vec::with_capacity(poly.len());
        for (m, c) in poly.terms() {
            let den = residue(c.denom(), prime);
            if den == 0 {
                return Err(PolyError::CoefficientNotPAdic { prime });
            }
            let inv = pow_mod(den, prime - 2, prime);
            let coef = residue(c.numer(), prime) * inv % prime;
            if coef == 0 {
                continue;
            }
            let factors = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect();
            terms.push((coef, factors));
        }
        Ok(Self {
            prime,
            arity: poly.vars().len(),
            terms,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Evaluates at coordinates already reduced into `[0, p)`.
    pub fn eval(&self, coords: &[u64]) -> u64 {
        debug_assert_eq!(coords.len(), self.arity);
        let p = self.prime;
        let mut acc = 0;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(i, e) in factors {
                t = t * pow_mod(coords[i], e as u64, p) % p;
                if t == 0 {
                    break;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

impl Polynomial {
    /// Value of the polynomial at a point of `F_p^n` (coordinates aligned with
    /// the universe).
    pub fn eval_mod_p(&self, point: &FieldPoint) -> Result<u64> {
        if point.coords.len() != self.vars().len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.vars().len(),
                found: point.coords.len(),
            });
        }
        Ok(ModPPolynomial::compile(self, point.prime)?.eval(&point.coords))
    }
}
