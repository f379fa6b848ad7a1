use alloc::collections::BTreeMap;

use num_traits::Zero;

use super::{PolyError, Polynomial, Rational, Result};

impl Polynomial {
    /// Exact quotient `self / divisor` by leading-term reduction under the
    /// graded-lex order. Fails with [`PolyError::NotDivisible`] as soon as a
    /// remainder term appears.
    pub fn exact_divide(&self, divisor: &Polynomial) -> Result<Polynomial> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let vars = super::merge_universes(&self.vars, &divisor.vars);
        let a = self.with_universe(&vars)?;
        let b = divisor.with_universe(&vars)?;
        if a.is_zero() {
            return Ok(a);
        }
        // Cheap obstructions: per-variable degrees and the trailing terms.
        for i in 0..vars.len() {
            let da = a.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0);
            let db = b.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0);
            if db > da {
                return Err(PolyError::NotDivisible);
            }
        }
        let (a_low, _) = a.terms.iter().next().unwrap();
        let (b_low, _) = b.terms.iter().next().unwrap();
        if a_low.checked_div(b_low).is_none() {
            return Err(PolyError::NotDivisible);
        }

        let (lead_m, lead_c) = b
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let mut rem = a.terms;
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.last_key_value() {
            let qm = m.checked_div(&lead_m).ok_or(PolyError::NotDivisible)?;
            let qc = c / &lead_c;
            for (bm, bc) in b.terms.iter() {
                let key = bm.mul(&qm);
                let delta = &qc * bc;
                let slot = rem.entry(key.clone()).or_insert_with(Rational::zero);
                *slot -= delta;
                if slot.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(qm, qc);
        }
        Ok(Polynomial::from_parts(vars, quot))
    }

    /// True when `divisor` divides `self` exactly.
    pub fn divisible_by(&self, divisor: &Polynomial) -> bool {
        self.exact_divide(divisor).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    fn ring() -> (Polynomial, Polynomial, Polynomial) {
        let vars = ["u", "v"];
        (
            Polynomial::var(&vars, "u").unwrap(),
            Polynomial::var(&vars, "v").unwrap(),
            Polynomial::one(&vars),
        )
    }

    #[test]
    fn geometric_quotient() {
        let (u, v, one) = ring();
        let q = &u * &v;
        let quot = (q.pow(5) - &one).exact_divide(&(&q - &one)).unwrap();
        let expected = (0..5).fold(Polynomial::zero(&["u", "v"]), |acc, k| acc + q.pow(k));
        assert_eq!(quot, expected);
    }

    #[test]
    fn degree_obstruction() {
        let (u, v, one) = ring();
        let q = &u * &v;
        assert_eq!(
            (&q - &one).exact_divide(&(q.pow(5) - &one)),
            Err(PolyError::NotDivisible)
        );
    }

    #[test]
    fn remainder_detected() {
        let (u, v, one) = ring();
        let p = &u * &u + &v;
        assert_eq!(p.exact_divide(&(&u + &one)), Err(PolyError::NotDivisible));
        assert_eq!(
            p.exact_divide(&Polynomial::zero(&["u"])),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn rational_coefficients() {
        let (u, v, one) = ring();
        let a = u.scale(&rat(1, 2)) + v.scale(&rat(-3, 7));
        let b = &u * &v - one.scale(&rat(2, 5));
        assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }
}
