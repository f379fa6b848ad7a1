use proptest::prelude::*;
use stringy_cli::expr::{Expr, Var};
use stringy_cli::{parse_expression, parse_rational_function};
use stringy_core::{rat, Polynomial, RationalFunction};

fn uv_poly(max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        ((-9i64..=9, 1i64..=4), prop::collection::vec(0u32..=3, 2)),
        0..=max_terms,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            &["u", "v"],
            terms.into_iter().map(|((n, d), e)| (rat(n, d), e)),
        )
        .unwrap()
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..20).prop_map(|n| Expr::Number(rat(n, 1))),
        prop_oneof![Just(Var::U), Just(Var::V), Just(Var::Q)].prop_map(Expr::Var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let b = |e| Box::new(Expr::Paren(Box::new(e)));
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), 0u32..3).prop_map(move |(x, n)| Expr::Pow(b(x), n)),
            inner.prop_map(move |x| Expr::Neg(b(x))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn rendered_rational_functions_parse_back(n in uv_poly(5), d in uv_poly(3)) {
        let d = d + Polynomial::one(&["u", "v"]);
        prop_assume!(!d.is_zero());
        let f = RationalFunction::new(n, d).unwrap();
        let parsed = parse_rational_function(&f.to_string()).unwrap();
        prop_assert!(parsed.rf_equal(&f), "{}", f);
    }

    #[test]
    fn printed_expressions_parse_to_the_same_value(e in expr()) {
        let printed = e.to_string();
        let reparsed = parse_expression(&printed).unwrap();
        prop_assert!(reparsed.eval().unwrap().rf_equal(&e.eval().unwrap()), "{}", printed);
    }
}
