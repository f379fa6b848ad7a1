//! Local data of the hypersurface `sl(2)³ // SL(2) ⊂ ℂ⁷` and the charts of
//! its three-step resolution.
//!
//! Coordinates are `x1..x7` on `ℂ⁷`, `y1..y7` on the first blow-up charts,
//! `w1..w7` after straightening the Kummer locus, `t1..t7` on the second
//! blow-up chart, `r1..r7` after straightening the cone, and `a1..a7` on the
//! third blow-up chart.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exactpoly::{determinant, int, rat, Polynomial};
use crate::report::VerificationReport;

use super::{
    singular_component_check, strict_transform, ChartPipeline, ComponentEquations,
    ComponentParametrization, PolyMap, Result,
};

/// `prefix1, …, prefix7`.
pub fn chart_vars(prefix: &str) -> Vec<String> {
    (1..=7).map(|i| format!("{prefix}{i}")).collect()
}

/// Accessor for the variables of one chart.
struct Chart(Vec<String>);

impl Chart {
    fn new(prefix: &str) -> Self {
        Chart(chart_vars(prefix))
    }

    /// The `i`-th coordinate, 1-based.
    fn v(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.0, &self.0[i - 1]).expect("chart variable")
    }

    fn c(&self, n: i64) -> Polynomial {
        Polynomial::constant(&self.0, int(n))
    }

    fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.0)
    }
}

fn params(names: &[&str]) -> impl Fn(&str) -> Polynomial {
    let names: Vec<String> = names.iter().map(|s| String::from(*s)).collect();
    move |n| Polynomial::var(&names, n).expect("parameter")
}

/// `x1x2x3 + 2x4x5x6 − x1x6² − x2x5² − x3x4² − x7²`.
pub fn hypersurface() -> Polynomial {
    let x = Chart::new("x");
    symmetric_cubic(&x, &x.v(1)) - x.v(7).pow(2)
}

/// Determinant of the symmetric matrix `[[a,v4,v5],[v4,v2,v6],[v5,v6,v3]]`
/// with `a` standing in the top-left corner.
fn symmetric_cubic(ch: &Chart, a: &Polynomial) -> Polynomial {
    let v = |i| ch.v(i);
    a * &v(2) * v(3) + (v(4) * v(5) * v(6)).scale(&int(2))
        - a * &v(6).pow(2)
        - v(2) * v(5).pow(2)
        - v(3) * v(4).pow(2)
}

/// The cubic cutting out degenerate quadratic forms in `ℙ⁶`, on `y1..y7`.
pub fn degenerate_forms_cubic() -> Polynomial {
    let y = Chart::new("y");
    symmetric_cubic(&y, &y.v(1))
}

/// First blow-up, chart `x1 ≠ 0`: `(y1, y1y2, …, y1y7)`.
pub fn first_blowup_chart() -> PolyMap {
    let y = Chart::new("y");
    let images = (1..=7)
        .map(|i| if i == 1 { y.v(1) } else { y.v(1) * y.v(i) })
        .collect();
    PolyMap::new("first blow-up", &y.0, &chart_vars("x"), images).expect("square")
}

/// First blow-up, chart `x5 ≠ 0`.
pub fn first_blowup_side_chart() -> PolyMap {
    let y = Chart::new("y");
    let images = (1..=7)
        .map(|i| if i == 5 { y.v(5) } else { y.v(5) * y.v(i) })
        .collect();
    PolyMap::new("first blow-up (side)", &y.0, &chart_vars("x"), images).expect("square")
}

/// Strict transform of the hypersurface in the main first blow-up chart.
pub fn first_residual() -> Polynomial {
    let y = Chart::new("y");
    y.v(1) * first_exceptional_cubic() - y.v(7).pow(2)
}

/// The bracket of [`first_residual`]: the exceptional divisor's cubic.
pub fn first_exceptional_cubic() -> Polynomial {
    let y = Chart::new("y");
    y.v(2) * y.v(3) + (y.v(4) * y.v(5) * y.v(6)).scale(&int(2))
        - y.v(6).pow(2)
        - y.v(2) * y.v(5).pow(2)
        - y.v(3) * y.v(4).pow(2)
}

/// The cubic factor of the strict transform in the side chart.
pub fn side_exceptional_cubic() -> Polynomial {
    let y = Chart::new("y");
    y.v(1) * y.v(2) * y.v(3) + (y.v(4) * y.v(6)).scale(&int(2))
        - y.v(1) * y.v(6).pow(2)
        - y.v(2)
        - y.v(3) * y.v(4).pow(2)
}

/// Strict transform of the hypersurface in the side chart.
pub fn side_residual() -> Polynomial {
    let y = Chart::new("y");
    y.v(5) * side_exceptional_cubic() - y.v(7).pow(2)
}

/// `y` in terms of `w = (y1, y2 − y4², y3 − y5², y4, y5, y6 − y4y5, y7)`.
pub fn kummer_straightening() -> PolyMap {
    let w = Chart::new("w");
    let images = alloc::vec![
        w.v(1),
        w.v(2) + w.v(4).pow(2),
        w.v(3) + w.v(5).pow(2),
        w.v(4),
        w.v(5),
        w.v(6) + w.v(4) * w.v(5),
        w.v(7),
    ];
    PolyMap::new("straighten Kummer locus", &w.0, &chart_vars("y"), images).expect("square")
}

/// `w1(w2w3 − w6²) − w7²`.
pub fn straightened_residual() -> Polynomial {
    let w = Chart::new("w");
    w.v(1) * (w.v(2) * w.v(3) - w.v(6).pow(2)) - w.v(7).pow(2)
}

/// A coordinate change defined on the open set where `denominator ≠ 0`:
/// every target coordinate is `numerator / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedMap {
    pub numerators: PolyMap,
    pub denominator: Polynomial,
}

impl LocalizedMap {
    /// `(denominator^k · p∘map, k)` with `k` the degree needed to clear.
    pub fn pull_back_cleared(&self, p: &Polynomial) -> Result<(Polynomial, u32)> {
        let m = &self.numerators;
        let p = p.with_universe(m.target())?;
        let assignment: BTreeMap<String, Polynomial> = m
            .target()
            .iter()
            .cloned()
            .zip(m.images().iter().cloned())
            .collect();
        let (cleared, k) = p.substitute_cleared(&assignment, &self.denominator)?;
        Ok((cleared.with_universe(m.source())?, k))
    }
}

/// Side-chart straightening `w2 = y2 − y4²/y1, w3 = y3 − 1/y1,
/// w6 = y6 − y4/y1` on `y1 ≠ 0`, as `y` over the common denominator `w1`.
pub fn side_kummer_straightening() -> LocalizedMap {
    let w = Chart::new("w");
    let d = w.v(1);
    let images = alloc::vec![
        d.pow(2),
        &d * &w.v(2) + w.v(4).pow(2),
        &d * &w.v(3) + w.c(1),
        &d * &w.v(4),
        &d * &w.v(5),
        &d * &w.v(6) + w.v(4),
        &d * &w.v(7),
    ];
    let numerators = PolyMap::new(
        "straighten Kummer locus (side)",
        &w.0,
        &chart_vars("y"),
        images,
    )
    .expect("square");
    LocalizedMap {
        numerators,
        denominator: d,
    }
}

/// `w1w5(w2w3 − w6²) − w7²`.
pub fn side_straightened_residual() -> Polynomial {
    let w = Chart::new("w");
    w.v(1) * w.v(5) * (w.v(2) * w.v(3) - w.v(6).pow(2)) - w.v(7).pow(2)
}

/// Second blow-up along `w2 = w3 = w6 = w7 = 0`, chart `w2 ≠ 0`.
pub fn second_blowup_chart() -> PolyMap {
    let t = Chart::new("t");
    let images = alloc::vec![
        t.v(1),
        t.v(2),
        t.v(2) * t.v(3),
        t.v(4),
        t.v(5),
        t.v(2) * t.v(6),
        t.v(2) * t.v(7),
    ];
    PolyMap::new("second blow-up", &t.0, &chart_vars("w"), images).expect("square")
}

/// `t1(t3 − t6²) − t7²`.
pub fn second_residual() -> Polynomial {
    let t = Chart::new("t");
    t.v(1) * (t.v(3) - t.v(6).pow(2)) - t.v(7).pow(2)
}

/// `t` in terms of `r = (t1, t2, t3 − t6², t4, t5, t6, t7)`.
pub fn cone_straightening() -> PolyMap {
    let r = Chart::new("r");
    let images = (1..=7)
        .map(|i| {
            if i == 3 {
                r.v(3) + r.v(6).pow(2)
            } else {
                r.v(i)
            }
        })
        .collect();
    PolyMap::new("straighten cone", &r.0, &chart_vars("t"), images).expect("square")
}

/// `r1r3 − r7²`.
pub fn cone_residual() -> Polynomial {
    let r = Chart::new("r");
    r.v(1) * r.v(3) - r.v(7).pow(2)
}

/// Third blow-up along `r1 = r3 = r7 = 0`, chart `r3 ≠ 0`.
pub fn third_blowup_chart() -> PolyMap {
    let a = Chart::new("a");
    let images = (1..=7)
        .map(|i| match i {
            1 | 7 => a.v(3) * a.v(i),
            _ => a.v(i),
        })
        .collect();
    PolyMap::new("third blow-up", &a.0, &chart_vars("r"), images).expect("square")
}

/// `a1 − a7²`.
pub fn final_residual() -> Polynomial {
    let a = Chart::new("a");
    a.v(1) - a.v(7).pow(2)
}

/// All five maps from `x` to `a`, with the three exceptional divisors.
pub fn resolution_pipeline() -> ChartPipeline {
    ChartPipeline::with_markers(
        alloc::vec![
            first_blowup_chart(),
            kummer_straightening(),
            second_blowup_chart(),
            cone_straightening(),
            third_blowup_chart(),
        ],
        &[("D1", "a1"), ("D2", "a2"), ("D3", "a3")],
    )
    .expect("stages compose")
}

/// The first blow-up alone.
pub fn first_stage_pipeline() -> ChartPipeline {
    ChartPipeline::with_markers(alloc::vec![first_blowup_chart()], &[("D1", "y1")])
        .expect("single stage")
}

/// The first two blow-ups, ending in `t` coordinates.
pub fn second_stage_pipeline() -> ChartPipeline {
    ChartPipeline::with_markers(
        alloc::vec![
            first_blowup_chart(),
            kummer_straightening(),
            second_blowup_chart()
        ],
        &[("D1", "t1"), ("D2", "t2")],
    )
    .expect("stages compose")
}

/// Exceptional-locus component in the main chart, through the pair map
/// with `x = 1, p = 1/2`.
pub fn delta_main_chart() -> ComponentParametrization {
    let g = params(&["a", "b", "c", "d"]);
    let half = rat(1, 2);
    ComponentParametrization::new(
        "degenerate-forms locus (main chart)",
        alloc::vec![
            ("y1", g("a").scale(&int(0))),
            ("y2", (g("a") * g("c")).scale(&int(2))),
            ("y3", (g("b") * g("d")).scale(&int(2))),
            ("y4", g("c") + g("a").scale(&half)),
            ("y5", g("d") + g("b").scale(&half)),
            ("y6", g("a") * g("d") + g("b") * g("c")),
            ("y7", g("a").scale(&int(0))),
        ],
    )
}

/// Proper transform of the Kummer locus in the main chart.
pub fn kummer_main_chart() -> ComponentParametrization {
    let y = Chart::new("y");
    ComponentParametrization::new(
        "Kummer locus (main chart)",
        alloc::vec![
            ("y2", y.v(4).pow(2)),
            ("y3", y.v(5).pow(2)),
            ("y6", y.v(4) * y.v(5)),
            ("y7", y.zero()),
        ],
    )
}

/// Exceptional-locus component in the side chart, on `y1 = s ≠ 0`.
pub fn delta_side_chart() -> ComponentParametrization {
    let g = params(&["s", "c", "a", "b"]);
    let s = g("s");
    ComponentParametrization::new(
        "degenerate-forms locus (side chart)",
        alloc::vec![
            ("y1", s.pow(2)),
            ("y2", &s * &g("a").pow(2) + g("c").pow(2)),
            ("y3", &s * &g("b").pow(2) + Polynomial::one(&["s"])),
            ("y4", &s * &g("c")),
            ("y5", s.scale(&int(0))),
            ("y6", &s * &g("a") * g("b") + g("c")),
            ("y7", s.scale(&int(0))),
        ],
    )
    .localized(s)
}

/// Proper transform of the Kummer locus in the side chart, on `y1 = s ≠ 0`.
pub fn kummer_side_chart() -> ComponentParametrization {
    let g = params(&["s", "c", "e"]);
    let s = g("s");
    ComponentParametrization::new(
        "Kummer locus (side chart)",
        alloc::vec![
            ("y1", s.pow(2)),
            ("y2", g("c").pow(2)),
            ("y3", Polynomial::one(&["s"])),
            ("y4", &s * &g("c")),
            ("y5", &s * &g("e")),
            ("y6", g("c")),
            ("y7", s.scale(&int(0))),
        ],
    )
    .localized(s)
}

/// Proper transform of the degenerate-forms locus after the second blow-up.
pub fn delta_second_chart() -> ComponentParametrization {
    let t = Chart::new("t");
    ComponentParametrization::new(
        "degenerate-forms locus (second blow-up)",
        alloc::vec![("t1", t.zero()), ("t3", t.v(6).pow(2)), ("t7", t.zero())],
    )
}

pub fn delta_main_equations() -> ComponentEquations {
    let y = Chart::new("y");
    ComponentEquations::new(
        "degenerate-forms locus",
        alloc::vec![y.v(1), y.v(7), first_exceptional_cubic()],
    )
}

pub fn kummer_main_equations() -> ComponentEquations {
    let y = Chart::new("y");
    ComponentEquations::new(
        "Kummer locus",
        alloc::vec![
            y.v(7),
            y.v(2) - y.v(4).pow(2),
            y.v(3) - y.v(5).pow(2),
            y.v(6) - y.v(4) * y.v(5),
        ],
    )
}

pub fn delta_second_equations() -> ComponentEquations {
    let t = Chart::new("t");
    ComponentEquations::new(
        "degenerate-forms locus",
        alloc::vec![t.v(1), t.v(7), t.v(3) - t.v(6).pow(2)],
    )
}

/// `x1² + … + x7² − 1`, smooth over every odd prime field.
pub fn smooth_quadric() -> Polynomial {
    let x = Chart::new("x");
    (1..=7).fold(-x.c(1), |acc, i| acc + x.v(i).pow(2))
}

/// Smoothness and normal crossings of the three divisors in the final chart.
pub fn normal_crossing_probe() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("normal crossings");
    let a = Chart::new("a");
    let tail = ChartPipeline::new(
        alloc::vec![cone_straightening(), third_blowup_chart()],
        Vec::new(),
    )?
    .compose();
    let st = strict_transform(&second_residual(), &tail, &["a3"])?;
    let expected = a.v(3).pow(2) * final_residual();
    r.check(
        "second residual in final chart",
        &st.factor_poly() * &st.residual == expected && st.residual == final_residual(),
        format!("{} · ({})", st.factor_poly(), st.residual),
    );

    let grad = st.residual.gradient();
    let unit = grad
        .iter()
        .position(|d| d.as_constant().is_some_and(|c| c != int(0)));
    r.check(
        "final residual smooth",
        unit.is_some(),
        unit.map_or(String::from("no constant partial"), |i| {
            format!("∂/∂{} = {}", a.0[i], grad[i])
        }),
    );

    // On the graph a1 = a7², coordinates are (a2, …, a7).
    let graph: Vec<&str> = a.0[1..].iter().map(String::as_str).collect();
    let on_graph = |p: &Polynomial| -> Result<Polynomial> {
        Ok(p.substitute_pairs(&[("a1", a.v(7).pow(2))])?
            .with_universe(&graph)?)
    };
    let d1 = on_graph(&a.v(1))?;
    r.check(
        "D1 is a7 = 0 on the graph",
        d1 == on_graph(&a.v(7))?.pow(2),
        format!("a1 = {d1}"),
    );
    let cuts = [a.v(7), a.v(2), a.v(3)];
    let rows: Vec<Vec<Polynomial>> = cuts
        .iter()
        .map(|c| {
            let c = on_graph(c)?;
            ["a7", "a2", "a3"]
                .iter()
                .map(|v| Ok(c.derivative(v)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let minor = determinant(&rows)?;
    r.check(
        "divisor equations independent",
        minor.as_constant().is_some_and(|c| c != int(0)),
        format!("minor = {minor}"),
    );

    let inner = ChartPipeline::new(
        alloc::vec![
            kummer_straightening(),
            second_blowup_chart(),
            cone_straightening(),
            third_blowup_chart()
        ],
        Vec::new(),
    )?
    .compose();
    let y1 = inner.image("y1").expect("y1").clone();
    r.check("y1 pulls back to a3·a1", y1 == a.v(3) * a.v(1), &y1);
    let t2 = tail.image("t2").expect("t2").clone();
    r.check("t2 pulls back to a2", t2 == a.v(2), &t2);

    let control = singular_component_check(&second_residual(), &delta_second_chart())?;
    r.check(
        "second residual singular before third blow-up",
        control.holds,
        &control.component,
    );
    Ok(r)
}
