//! The symmetric map `ℙ² × ℙ² → ℙ⁶` onto the locus of degenerate ternary
//! quadratic forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::exactpoly::{int, inverse_mod, ModPPolynomial, PolyError, Polynomial, Result};
use crate::report::VerificationReport;

pub fn pair_map_vars() -> [&'static str; 6] {
    ["x", "y", "z", "p", "q", "r"]
}

/// `((x:y:z),(p:q:r)) ↦ (c·xp : 2yq : 2zr : xq+yp : xr+zp : yr+zq : 0)`;
/// `first_scale = 2` is the genuine map, other values are mutants.
pub fn pair_map(first_scale: i64) -> Vec<Polynomial> {
    let vars = pair_map_vars();
    let g = |n: &str| Polynomial::var(&vars, n).expect("pair map variable");
    let (x, y, z, p, q, r) = (g("x"), g("y"), g("z"), g("p"), g("q"), g("r"));
    let two = int(2);
    alloc::vec![
        (&x * &p).scale(&int(first_scale)),
        (&y * &q).scale(&two),
        (&z * &r).scale(&two),
        &x * &q + &y * &p,
        &x * &r + &z * &p,
        &y * &r + &z * &q,
        Polynomial::zero(&vars),
    ]
}

/// True when `images` satisfy `y₇ = 0` and the symmetric-determinant cubic
/// identically.
pub fn pair_image_check(images: &[Polynomial], cubic: &Polynomial) -> Result<bool> {
    if images.len() != 7 || !images[6].is_zero() {
        return Ok(false);
    }
    let assignment: BTreeMap<_, _> = cubic
        .vars()
        .iter()
        .cloned()
        .zip(images.iter().cloned())
        .collect();
    cubic.vanishes_under(&assignment)
}

/// Bihomogeneous of bidegree `(1, 1)` in `(x,y,z)` and `(p,q,r)`; the zero
/// polynomial qualifies.
pub fn is_bihomogeneous(p: &Polynomial) -> bool {
    let p = p
        .with_universe(&pair_map_vars())
        .expect("pair map variables");
    let ok = p.terms().all(|(m, _)| {
        let e = m.exponents();
        e[..3].iter().sum::<u32>() == 1 && e[3..].iter().sum::<u32>() == 1
    });
    ok
}

/// Fibre sizes of the map over `ℙ²(F_p) × ℙ²(F_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCount {
    pub prime: u64,
    pub domain_points: u64,
    /// `size ↦ number of image points with a fibre of that size`.
    pub histogram: BTreeMap<usize, u64>,
}

impl FiberCount {
    pub fn report(&self) -> VerificationReport {
        let mut r = VerificationReport::new(format!("pair map over F_{}", self.prime));
        let hist: Vec<_> = self
            .histogram
            .iter()
            .map(|(k, n)| format!("{k}:{n}"))
            .collect();
        let witness = format!(
            "{} domain points, fibres {{{}}}",
            self.domain_points,
            hist.join(", ")
        );
        let sizes_ok = self.histogram.keys().all(|&k| k == 1 || k == 2);
        r.check("fibre sizes in {1,2}", sizes_ok, &witness);
        let ones = self.histogram.get(&1).copied().unwrap_or(0);
        let twos = self.histogram.get(&2).copied().unwrap_or(0);
        r.check(
            "generic fibre size 2",
            twos > ones,
            format!("{twos} of size 2, {ones} of size 1"),
        );
        r
    }
}

fn projective_points(p: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            out.push([1, a, b]);
        }
    }
    for b in 0..p {
        out.push([0, 1, b]);
    }
    out.push([0, 0, 1]);
    out
}

/// Scales so the first nonzero coordinate is 1.
fn normalize(v: &mut [u64], p: u64) {
    let Some(&lead) = v.iter().find(|&&c| c != 0) else {
        return;
    };
    let inv = inverse_mod(lead, p);
    for c in v.iter_mut() {
        *c = *c * inv % p;
    }
}

/// Enumerates normalized representatives of `ℙ²(F_p) × ℙ²(F_p)` and buckets
/// them by normalized image point.
pub fn pair_fiber_count(prime: u64) -> Result<FiberCount> {
    if prime == 2 {
        return Err(PolyError::InvalidPrime(prime));
    }
    let compiled = pair_map(2)
        .iter()
        .map(|h| ModPPolynomial::compile(h, prime))
        .collect::<Result<Vec<_>>>()?;
    let pts = projective_points(prime);
    let mut buckets: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for a in &pts {
        for b in &pts {
            let coords = [a[0], a[1], a[2], b[0], b[1], b[2]];
            let mut image: Vec<u64> = compiled.iter().map(|h| h.eval(&coords)).collect();
            normalize(&mut image, prime);
            *buckets.entry(image).or_default() += 1;
        }
    }
    let mut histogram = BTreeMap::new();
    for size in buckets.values() {
        *histogram.entry(*size).or_default() += 1;
    }
    Ok(FiberCount {
        prime,
        domain_points: (pts.len() * pts.len()) as u64,
        histogram,
    })
}
