use std::collections::BTreeMap;

use stringy_core::charts::*;
use stringy_core::exactpoly::{int, FieldPoint, Polynomial};

fn var(prefix: &str, i: usize) -> Polynomial {
    Polynomial::var(&chart_vars(prefix), &format!("{prefix}{i}")).unwrap()
}

#[test]
fn hypersurface_values_and_partials() {
    let f = hypersurface();
    let at = |pt: [i64; 7]| f.eval(&pt.map(int)).unwrap();
    assert_eq!(at([1, 1, 1, 0, 0, 0, 0]), int(1));
    assert_eq!(at([1, 1, 1, 1, 1, 1, 0]), int(0));
    assert_eq!(f.derivative("x7").unwrap(), var("x", 7).scale(&int(-2)));
    let d4 =
        (var("x", 5) * var("x", 6)).scale(&int(2)) - (var("x", 3) * var("x", 4)).scale(&int(2));
    assert_eq!(f.derivative("x4").unwrap(), d4);
    let origin = FieldPoint::new(3, vec![0; 7]).unwrap();
    assert_eq!(f.eval_mod_p(&origin).unwrap(), 0);
}

#[test]
fn first_blowup_strict_transform() {
    let f = hypersurface();
    let st = strict_transform(&f, &first_blowup_chart(), &["y1"]).unwrap();
    assert_eq!(st.order("y1"), 2);
    assert_eq!(st.residual, first_residual());
    assert_eq!(st.residual.vanishing_order("y1").unwrap(), 0);
    let pulled = first_blowup_chart().pull_back(&f).unwrap();
    assert_eq!(
        pulled.exact_divide(&st.residual).unwrap(),
        var("y", 1).pow(2)
    );
}

#[test]
fn side_chart_strict_transform() {
    let st = strict_transform(&hypersurface(), &first_blowup_side_chart(), &["y5"]).unwrap();
    assert_eq!(st.order("y5"), 2);
    assert_eq!(st.residual, side_residual());
}

#[test]
fn straightenings_are_unimodular() {
    assert!(kummer_straightening().jacobian_det().is_one());
    assert!(cone_straightening().jacobian_det().is_one());
    assert_eq!(
        kummer_straightening().pull_back(&first_residual()).unwrap(),
        straightened_residual()
    );
    assert_eq!(
        cone_straightening().pull_back(&second_residual()).unwrap(),
        cone_residual()
    );
}

#[test]
fn side_straightening_clears_one_power_per_degree() {
    let loc = side_kummer_straightening();
    let (cleared, k) = loc.pull_back_cleared(&side_residual()).unwrap();
    assert_eq!(k, 4);
    assert_eq!(cleared, var("w", 1).pow(k) * side_straightened_residual());
}

#[test]
fn second_blowup_strict_transform() {
    let st = strict_transform(&straightened_residual(), &second_blowup_chart(), &["t2"]).unwrap();
    assert_eq!(st.order("t2"), 2);
    assert_eq!(st.residual, second_residual());
    assert_eq!(
        second_residual().derivative("t7").unwrap(),
        var("t", 7).scale(&int(-2))
    );
}

#[test]
fn third_blowup_strict_transform() {
    let st = strict_transform(&cone_residual(), &third_blowup_chart(), &["a3"]).unwrap();
    assert_eq!(st.order("a3"), 2);
    assert_eq!(st.residual, final_residual());
}

#[test]
fn jacobians_of_blowup_charts() {
    assert_eq!(first_blowup_chart().jacobian_det(), var("y", 1).pow(6));
    assert_eq!(second_blowup_chart().jacobian_det(), var("t", 2).pow(3));
    assert_eq!(third_blowup_chart().jacobian_det(), var("a", 3).pow(2));
    let composite = resolution_pipeline().compose();
    let expected = var("a", 1).pow(6) * var("a", 2).pow(3) * var("a", 3).pow(8);
    assert_eq!(composite.jacobian_det(), expected);
}

#[test]
fn discrepancies_by_stage() {
    let f = hypersurface();
    let full = discrepancy(&resolution_pipeline(), &f).unwrap();
    let orders: Vec<(u32, u32)> = full
        .iter()
        .map(|e| (e.jacobian_order, e.pullback_order))
        .collect();
    assert_eq!(orders, [(6, 2), (3, 2), (8, 4)]);
    let map = discrepancy_map(&full);
    let expected: BTreeMap<String, _> = [("D1", 4), ("D2", 1), ("D3", 4)]
        .map(|(k, a)| (k.to_string(), int(a)))
        .into();
    assert_eq!(map, expected);

    let first = discrepancy(&first_stage_pipeline(), &f).unwrap();
    assert_eq!(first[0].discrepancy(), int(4));
    let second = discrepancy_map(&discrepancy(&second_stage_pipeline(), &f).unwrap());
    assert_eq!(second["D1"], int(4));
    assert_eq!(second["D2"], int(1));
}

#[test]
fn discrepancy_invariant_under_extra_unimodular_change() {
    let a = chart_vars("a");
    let b = chart_vars("b");
    let images = (1..=7)
        .map(|i| {
            let bi = Polynomial::var(&b, &b[i - 1]).unwrap();
            if i == 4 {
                bi + Polynomial::var(&b, "b5").unwrap().pow(2)
            } else {
                bi
            }
        })
        .collect();
    let shear = PolyMap::new("shear", &b, &a, images).unwrap();
    assert!(shear.jacobian_det().is_one());
    let mut stages = resolution_pipeline().stages().to_vec();
    stages.push(shear);
    let p =
        ChartPipeline::with_markers(stages, &[("D1", "b1"), ("D2", "b2"), ("D3", "b3")]).unwrap();
    let got: Vec<_> = discrepancy(&p, &hypersurface())
        .unwrap()
        .iter()
        .map(|e| e.discrepancy())
        .collect();
    assert_eq!(got, [int(4), int(1), int(4)]);
}

#[test]
fn composition_of_single_stage_is_itself() {
    let one = ChartPipeline::new(vec![first_blowup_chart()], vec![]).unwrap();
    assert_eq!(one.compose().images(), first_blowup_chart().images());
    let id = PolyMap::identity("id", &chart_vars("x"));
    let p = ChartPipeline::new(vec![id.clone()], vec![]).unwrap();
    assert_eq!(p.compose().images(), id.images());
}

#[test]
fn jacobian_chain_rule_on_resolution() {
    let stages = resolution_pipeline().stages().to_vec();
    let mut composite = stages[0].clone();
    for stage in &stages[1..] {
        let next = stage.then_pull(&composite).unwrap();
        let lhs = next.jacobian_det();
        let rhs = stage.pull_back(&composite.jacobian_det()).unwrap() * stage.jacobian_det();
        assert_eq!(lhs, rhs, "after {}", stage.name());
        composite = next;
    }
}

#[test]
fn singular_components_contained() {
    let cases = [
        (first_residual(), delta_main_chart(), 0),
        (first_residual(), kummer_main_chart(), 0),
        (side_residual(), delta_side_chart(), 4),
        (side_residual(), kummer_side_chart(), 4),
        (second_residual(), delta_second_chart(), 0),
    ];
    for (g, comp, clearing) in cases {
        let check = singular_component_check(&g, &comp).unwrap();
        assert!(check.holds, "{}: {:?}", comp.name, check.nonvanishing);
        assert_eq!(check.clearing, clearing, "{}", comp.name);
    }
}

#[test]
fn singular_check_detects_non_singular_component() {
    // y7 = 0 alone is not inside the singular locus
    let comp = ComponentParametrization::new("y7 = 0", vec![("y7", Polynomial::zero(&["y7"]))]);
    let check = singular_component_check(&first_residual(), &comp).unwrap();
    assert!(!check.holds);
    assert!(check.nonvanishing.contains(&"g".to_string()));
}

#[test]
fn bruteforce_first_residual_over_f3() {
    let bf = singular_bruteforce(
        &first_residual(),
        3,
        &[delta_main_equations(), kummer_main_equations()],
    )
    .unwrap();
    assert_eq!(bf.candidates, 2187);
    assert_eq!(bf.singular, 99);
    assert!(bf.stray.is_empty());
    assert!(bf.report("g1").all_passed());
}

#[test]
fn bruteforce_reports_stray_points_when_component_missing() {
    let bf = singular_bruteforce(&first_residual(), 3, &[delta_main_equations()]).unwrap();
    assert!(!bf.stray.is_empty());
    assert!(!bf.report("g1").all_passed());
}

#[test]
fn bruteforce_smooth_quadric_control() {
    let bf = singular_bruteforce(&smooth_quadric(), 3, &[]).unwrap();
    assert_eq!(bf.singular, 0);
    assert!(bf.on_hypersurface > 0);
}

#[test]
fn golden_residue_of_first_residual() {
    let pt = FieldPoint::new(5, vec![1, 2, 3, 4, 0, 1, 2]).unwrap();
    assert_eq!(first_residual().eval_mod_p(&pt).unwrap(), 3);
}

#[test]
fn pair_map_identity_and_mutant() {
    let cubic = degenerate_forms_cubic();
    assert!(pair_image_check(&pair_map(2), &cubic).unwrap());
    assert!(!pair_image_check(&pair_map(1), &cubic).unwrap());
    assert!(pair_map(2).iter().all(is_bihomogeneous));
}

#[test]
fn pair_map_is_symmetric() {
    let vars = pair_map_vars();
    let g = |n: &str| Polynomial::var(&vars, n).unwrap();
    let swap: BTreeMap<String, Polynomial> = [
        ("x", "p"),
        ("y", "q"),
        ("z", "r"),
        ("p", "x"),
        ("q", "y"),
        ("r", "z"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), g(b)))
    .collect();
    for img in pair_map(2) {
        assert_eq!(img.substitute(&swap).unwrap(), img);
    }
}

#[test]
fn pair_map_fibres() {
    let f3 = pair_fiber_count(3).unwrap();
    assert_eq!(f3.domain_points, 169);
    assert_eq!(f3.histogram, BTreeMap::from([(1, 13), (2, 78)]));
    let f5 = pair_fiber_count(5).unwrap();
    assert_eq!(f5.domain_points, 961);
    assert_eq!(f5.histogram, BTreeMap::from([(1, 31), (2, 465)]));
    assert!(f5.report().all_passed());
    assert!(pair_fiber_count(2).is_err());
}

#[test]
fn normal_crossings_in_final_chart() {
    let r = normal_crossing_probe().unwrap();
    assert!(r.all_passed(), "{r}");
}

/// Determinant by summing over all permutations, independent of the library's
/// elimination.
fn permutation_det(m: &[Vec<Polynomial>], vars: &[String]) -> Polynomial {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Polynomial::zero(vars);
    loop {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let mut term = Polynomial::one(vars);
        for (row, &col) in perm.iter().enumerate() {
            term = term * m[row][col].clone();
        }
        total = if inversions % 2 == 0 {
            total + term
        } else {
            total - term
        };
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            return total;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

fn jacobian_matrix(map: &PolyMap) -> Vec<Vec<Polynomial>> {
    map.images()
        .iter()
        .map(|h| {
            map.source()
                .iter()
                .map(|s| {
                    h.with_universe(map.source())
                        .unwrap()
                        .derivative(s)
                        .unwrap()
                })
                .collect()
        })
        .collect()
}

#[test]
fn blowup_jacobians_by_permutation_expansion() {
    for (map, expected) in [
        (first_blowup_chart(), var("y", 1).pow(6)),
        (second_blowup_chart(), var("t", 2).pow(3)),
        (third_blowup_chart(), var("a", 3).pow(2)),
        (kummer_straightening(), Polynomial::one(&chart_vars("w"))),
        (cone_straightening(), Polynomial::one(&chart_vars("r"))),
    ] {
        let det = permutation_det(&jacobian_matrix(&map), map.source());
        assert_eq!(det, expected, "{}", map.name());
    }
}
