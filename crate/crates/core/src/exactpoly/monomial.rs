use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

/// Exponent vector aligned with a polynomial's variable universe.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the earliest variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(n: usize) -> Self {
        Self(alloc::vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub(crate) fn remap(&self, map: &[Option<usize>], n: usize) -> Self {
        let mut e = alloc::vec![0; n];
        for (i, j) in map.iter().enumerate() {
            if let Some(j) = j {
                e[*j] = self.0[i];
            }
        }
        Self(e)
    }

    pub(crate) fn render(&self, vars: &[String]) -> String {
        let mut out = String::new();
        for (v, &e) in vars.iter().zip(&self.0) {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(v);
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = Monomial::new(alloc::vec![2, 0]);
        let b = Monomial::new(alloc::vec![1, 1]);
        let c = Monomial::new(alloc::vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::one(2) < b);
    }

    #[test]
    fn division_and_gcd() {
        let a = Monomial::new(alloc::vec![2, 1]);
        let b = Monomial::new(alloc::vec![1, 3]);
        assert_eq!(a.gcd(&b), Monomial::new(alloc::vec![1, 1]));
        assert_eq!(a.checked_div(&b), None);
        assert_eq!(
            a.checked_div(&a.gcd(&b)),
            Some(Monomial::new(alloc::vec![1, 0]))
        );
    }
}
