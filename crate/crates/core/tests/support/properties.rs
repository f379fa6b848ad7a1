use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use stringy_core::exactpoly::{jacobian_det, FieldPoint};
use stringy_core::hodge::sign_average_rf;
use stringy_core::{rat, Polynomial, Rational, RationalFunction};

const UV: [&str; 2] = ["u", "v"];
const XYZ: [&str; 3] = ["x", "y", "z"];

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly_in(
    vars: &'static [&'static str],
    max_terms: usize,
    max_exp: u32,
) -> impl Strategy<Value = Polynomial> {
    let n = vars.len();
    prop::collection::vec(
        (coeff(), prop::collection::vec(0..=max_exp, n)),
        0..=max_terms,
    )
    .prop_map(move |terms| Polynomial::from_terms(vars, terms).unwrap())
}

fn uv_poly() -> impl Strategy<Value = Polynomial> {
    poly_in(&UV, 5, 3)
}

fn xyz_poly() -> impl Strategy<Value = Polynomial> {
    poly_in(&XYZ, 4, 2)
}

fn nonzero_uv_poly() -> impl Strategy<Value = Polynomial> {
    uv_poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Denominators that do not vanish identically; `1 + …` keeps them nonzero.
fn denominator() -> impl Strategy<Value = Polynomial> {
    poly_in(&UV, 3, 2)
        .prop_map(|p| p + Polynomial::one(&UV))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn rf() -> impl Strategy<Value = RationalFunction> {
    (uv_poly(), denominator()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

pub type Outcome = Result<(), String>;

fn check<S>(
    cases: u32,
    strategy: &S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(strategy, test).map_err(|e| e.to_string())
}

pub fn ring_axioms(cases: u32) -> Outcome {
    check(cases, &(xyz_poly(), xyz_poly(), xyz_poly()), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        let copy = a.clone();
        prop_assert!((&a - &copy).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&XYZ), a.clone());
        prop_assert_eq!(&a + &Polynomial::zero(&XYZ), a.clone());
        prop_assert_eq!(-(-a.clone()), a);
        Ok(())
    })
}

pub fn leibniz(cases: u32) -> Outcome {
    check(cases, &(xyz_poly(), xyz_poly(), 0usize..3), |(a, b, i)| {
        let x = XYZ[i];
        let lhs = (&a * &b).derivative(x).unwrap();
        let rhs = &a.derivative(x).unwrap() * &b + &a * &b.derivative(x).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn substitution_is_a_ring_homomorphism(cases: u32) -> Outcome {
    check(
        cases,
        &(xyz_poly(), xyz_poly(), prop::collection::vec(uv_poly(), 3)),
        |(a, b, images)| {
            let assignment: BTreeMap<String, Polynomial> =
                XYZ.iter().map(|s| s.to_string()).zip(images).collect();
            let s = |p: &Polynomial| p.substitute(&assignment).unwrap();
            prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
            prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
            prop_assert_eq!(s(&Polynomial::one(&XYZ)), Polynomial::one(&UV));
            Ok(())
        },
    )
}

pub fn exact_divide_round_trip(cases: u32) -> Outcome {
    check(cases, &(uv_poly(), nonzero_uv_poly()), |(a, b)| {
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_divide(&b).unwrap(), a);
        Ok(())
    })
}

pub fn exact_divide_rejects_remainders(cases: u32) -> Outcome {
    check(cases, &(nonzero_uv_poly(), nonzero_uv_poly()), |(a, b)| {
        let shifted = &(&a * &b) + &Polynomial::one(&UV);
        if !b.is_constant() {
            prop_assert!(shifted.exact_divide(&b).is_err());
        }
        Ok(())
    })
}

pub fn jacobian_chain_rule(cases: u32) -> Outcome {
    check(
        cases,
        &(
            prop::collection::vec(poly_in(&UV, 3, 2), 2),
            prop::collection::vec(poly_in(&UV, 3, 2), 2),
        ),
        |(outer, inner)| {
            // outer: (u, v) -> (outer[0], outer[1]); inner likewise; the composite
            // pulls outer back along inner.
            let assignment: BTreeMap<String, Polynomial> = UV
                .iter()
                .map(|s| s.to_string())
                .zip(inner.iter().cloned())
                .collect();
            let composite: Vec<Polynomial> = outer
                .iter()
                .map(|p| p.substitute(&assignment).unwrap())
                .collect();
            let lhs = jacobian_det(&composite, &UV).unwrap();
            let outer_det = jacobian_det(&outer, &UV)
                .unwrap()
                .substitute(&assignment)
                .unwrap();
            let rhs = &outer_det * &jacobian_det(&inner, &UV).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    )
}

pub fn rf_equal_is_an_equivalence(cases: u32) -> Outcome {
    check(cases, &(rf(), denominator(), rf()), |(f, c, g)| {
        prop_assert!(f.rf_equal(&f));
        let unreduced =
            RationalFunction::new_unreduced(f.numerator() * &c, f.denominator() * &c).unwrap();
        prop_assert!(f.rf_equal(&unreduced));
        prop_assert!(unreduced.rf_equal(&f));
        let again = RationalFunction::new_unreduced(
            unreduced.numerator() * &c,
            unreduced.denominator() * &c,
        )
        .unwrap();
        prop_assert!(unreduced.rf_equal(&again) && f.rf_equal(&again));
        prop_assert_eq!(f.rf_equal(&g), g.rf_equal(&f));
        Ok(())
    })
}

pub fn rf_field_operations(cases: u32) -> Outcome {
    check(cases, &(rf(), rf()), |(f, g)| {
        let copy = f.clone();
        prop_assert!((&f - &copy).is_zero());
        prop_assert!((&(&f + &g) - &g).rf_equal(&f));
        if !g.is_zero() {
            prop_assert!((&f * &g).checked_div(&g).unwrap().rf_equal(&f));
        }
        Ok(())
    })
}

pub fn dual_is_an_involution(cases: u32) -> Outcome {
    check(cases, &(rf(), 0u32..6), |(f, d)| {
        let once = f.dual_substitute(d).unwrap();
        let twice = once.dual_substitute(d).unwrap();
        prop_assert!(twice.rf_equal(&f));
        Ok(())
    })
}

pub fn sign_average_is_idempotent(cases: u32) -> Outcome {
    check(cases, &rf(), |f| {
        let once = sign_average_rf(&f);
        prop_assert!(sign_average_rf(&once).rf_equal(&once));
        Ok(())
    })
}

pub fn reduction_mod_p_is_a_homomorphism(cases: u32) -> Outcome {
    check(
        cases,
        &(
            poly_in(&XYZ, 4, 3),
            poly_in(&XYZ, 4, 3),
            prop::collection::vec(0u64..7, 3),
            prop::sample::select(vec![5u64, 7, 11, 13]),
        ),
        |(a, b, point, p)| {
            let pt = FieldPoint::new(p, point.iter().map(|c| c % p).collect()).unwrap();
            let ev = |q: &Polynomial| q.eval_mod_p(&pt);
            // Coefficients have denominators at most 4, invertible for p >= 5.
            let (ea, eb) = (ev(&a).unwrap(), ev(&b).unwrap());
            prop_assert_eq!(ev(&(&a * &b)).unwrap(), ea * eb % p);
            prop_assert_eq!(ev(&(&a + &b)).unwrap(), (ea + eb) % p);
            Ok(())
        },
    )
}

pub type Property = fn(u32) -> Outcome;

pub const SUITE: &[(&str, Property)] = &[
    ("ring_axioms", ring_axioms),
    ("leibniz", leibniz),
    (
        "substitution_is_a_ring_homomorphism",
        substitution_is_a_ring_homomorphism,
    ),
    ("exact_divide_round_trip", exact_divide_round_trip),
    (
        "exact_divide_rejects_remainders",
        exact_divide_rejects_remainders,
    ),
    ("jacobian_chain_rule", jacobian_chain_rule),
    ("rf_equal_is_an_equivalence", rf_equal_is_an_equivalence),
    ("rf_field_operations", rf_field_operations),
    ("dual_is_an_involution", dual_is_an_involution),
    ("sign_average_is_idempotent", sign_average_is_idempotent),
    (
        "reduction_mod_p_is_a_homomorphism",
        reduction_mod_p_is_a_homomorphism,
    ),
];
