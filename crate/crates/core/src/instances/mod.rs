//! The concrete resolutions of the genus-3 rank-2 moduli spaces and their
//! verification suites.

mod series;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{Signed, Zero};

use crate::charts::{self, ChartError};
use crate::exactpoly::{int, rat, Polynomial, Rational};
use crate::hodge::{blowup_correction, proj_space, symmetric_square, EPolynomial, HODGE_VARS};
use crate::ratfunc::RationalFunction;
use crate::report::VerificationReport;
use crate::stringy::{duality_outcome, Divisor, StratifiedResolution, Stratum};

pub use series::*;
use series::{c, geometric, jac, jac_even_odd, one, poly, q, weight1, weight4};

/// Name of the opaque variable standing for the E-polynomial of the smooth
/// part of the local quotient.
pub const SMOOTH_PART_VAR: &str = "Es";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InstanceId {
    /// Fixed-determinant moduli space.
    N,
    /// The local quotient `ℂ⁹ // SL(2)`.
    X,
    /// Moduli space without fixed determinant.
    M,
}

impl InstanceId {
    pub const ALL: [InstanceId; 3] = [InstanceId::N, InstanceId::X, InstanceId::M];
}

impl fmt::Display for InstanceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceId::N => "N",
            InstanceId::X => "X",
            InstanceId::M => "M",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown instance `{0}` (expected N, X or M)")]
pub struct UnknownInstance(pub String);

impl FromStr for InstanceId {
    type Err = UnknownInstance;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "N" | "n" => Ok(InstanceId::N),
            "X" | "x" => Ok(InstanceId::X),
            "M" | "m" => Ok(InstanceId::M),
            other => Err(UnknownInstance(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("stratum {stratum}: displayed value is not a polynomial after removing its weights")]
pub struct TranscriptionError {
    pub stratum: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliInstance {
    pub id: InstanceId,
    pub resolution: StratifiedResolution,
    pub closed_form: RationalFunction,
    /// Whether the variety is compact, so that Poincaré duality applies.
    pub compact: bool,
}

impl ModuliInstance {
    pub fn dimension(&self) -> u32 {
        self.resolution.dimension
    }

    /// Replaces the discrepancy of one divisor.
    pub fn with_discrepancy(mut self, divisor: &str, a: Rational) -> Self {
        for d in &mut self.resolution.divisors {
            if d.id == divisor {
                d.discrepancy = a.clone();
            }
        }
        self
    }
}

fn divisors() -> Vec<Divisor> {
    alloc::vec![
        Divisor::new("D1", int(4)),
        Divisor::new("D2", int(1)),
        Divisor::new("D3", int(4)),
    ]
}

/// Product of the weights of the divisors in `ids`.
fn weights(ids: &[&str]) -> RationalFunction {
    ids.iter()
        .fold(RationalFunction::one(&HODGE_VARS), |acc, id| {
            acc * if *id == "D2" { weight1() } else { weight4() }
        })
}

/// Divides a displayed product `E(D⁰_J)·Π weights` by the weights of `J`.
fn recover(ids: &[&str], displayed: RationalFunction) -> Result<Stratum, TranscriptionError> {
    let label = format!("{{{}}}", ids.join(","));
    let e = displayed
        .checked_div(&weights(ids))
        .ok()
        .and_then(|f| f.is_polynomial().ok())
        .ok_or(TranscriptionError { stratum: label })?;
    Ok(Stratum::new(ids.iter().copied(), EPolynomial::variety(e)))
}

/// `E(D2⁰)` for the compact instances, with `shift` copies of the first
/// exceptional locus removed.
fn second_open(shift: i64) -> Polynomial {
    let (even, odd) = jac_even_odd();
    (even - c(shift)) * geometric(2) + odd * q()
}

/// The displayed right-hand sides for the exceptional strata, each scaled by
/// `count` copies and multiplied by `base`.
fn exceptional_strata(
    count: i64,
    base: &Polynomial,
    second: Polynomial,
) -> Result<Vec<Stratum>, TranscriptionError> {
    let n = |p: Polynomial| base * &p.scale(&int(count));
    let w1 = weight1;
    let w4 = weight4;
    let d2 = base * &second;
    alloc::vec![
        recover(&["D1"], poly(n(q().pow(5) - q().pow(2))) * w4()),
        recover(&["D2"], poly(d2) * w1()),
        recover(&["D3"], poly(n(q().pow(3) * geometric(2))) * w4()),
        recover(
            &["D1", "D2"],
            poly(n(q().pow(2) * geometric(2))) * w4() * w1()
        ),
        recover(
            &["D1", "D3"],
            poly(n(q().pow(2) * geometric(2))) * w4().pow(2)
        ),
        recover(&["D2", "D3"], poly(n(q() * geometric(2))) * w4()),
        recover(&["D1", "D2", "D3"], poly(n(geometric(2))) * w4().pow(2)),
    ]
    .into_iter()
    .collect()
}

pub fn build_instance(id: InstanceId) -> Result<ModuliInstance, TranscriptionError> {
    let empty: [&str; 0] = [];
    let (dimension, open, strata, closed_form, compact) = match id {
        InstanceId::N => (
            6,
            EPolynomial::variety(hodge_smooth_part()),
            exceptional_strata(64, &one(), second_open(64))?,
            stringy_closed_form(64),
            true,
        ),
        InstanceId::X => {
            let es = Polynomial::var(&[SMOOTH_PART_VAR], SMOOTH_PART_VAR).expect("symbol");
            let closed = RationalFunction::from_poly(es.clone()) + local_correction();
            (
                6,
                EPolynomial::variety(es),
                exceptional_strata(1, &one(), (q().pow(3) - one()) * geometric(2))?,
                closed,
                false,
            )
        }
        InstanceId::M => (
            9,
            EPolynomial::variety(poly(jac()) * hodge_smooth_part()),
            exceptional_strata(1, &jac(), second_open(1))?,
            stringy_closed_form_full(),
            true,
        ),
    };
    let mut all = alloc::vec![Stratum::new(empty, open)];
    all.extend(strata);
    Ok(ModuliInstance {
        id,
        resolution: StratifiedResolution::new(dimension, divisors(), all),
        closed_form,
        compact,
    })
}

fn expected_euler(id: InstanceId) -> Option<Rational> {
    match id {
        InstanceId::N => Some(rat(784, 25)),
        InstanceId::M => Some(Rational::zero()),
        InstanceId::X => None,
    }
}

/// Assembly, duality, Euler number and polynomiality checks for one instance.
pub fn verify_instance(inst: &ModuliInstance) -> VerificationReport {
    let mut r = VerificationReport::new(format!("instance {}", inst.id));
    let validation = inst.resolution.validate();
    r.check(
        "resolution valid",
        validation.all_passed(),
        format!("{} checks", validation.checks().len()),
    );

    let est = match inst.resolution.assemble() {
        Ok(e) => e,
        Err(e) => {
            r.fail("assemble", e);
            return r;
        }
    };
    r.check(
        "assembly equals closed form",
        est.rf_equal(&inst.closed_form),
        &est,
    );

    if inst.compact {
        match duality_outcome(&est, inst.dimension()) {
            Ok(o) => {
                r.check(
                    format!("Poincaré duality (d = {})", inst.dimension()),
                    o.holds(),
                    &o,
                );
            }
            Err(e) => r.fail("Poincaré duality", e),
        }
    } else {
        r.skip("Poincaré duality", "noncompact");
    }

    match inst.id {
        InstanceId::X => {
            let es = Polynomial::var(&[SMOOTH_PART_VAR], SMOOTH_PART_VAR).expect("symbol");
            let correction = &est - &RationalFunction::from_poly(es);
            r.check(
                "correction terms equal displayed form",
                correction.rf_equal(&local_correction()),
                &correction,
            );
            r.check(
                "correction terms not a polynomial",
                correction.is_polynomial().is_err(),
                "",
            );
            r.skip("stringy Euler number", "smooth part is symbolic");
        }
        id => {
            r.check("not a polynomial", est.is_polynomial().is_err(), "");
            euler_checks(&mut r, inst, &est, expected_euler(id));
        }
    }

    if inst.id == InstanceId::M {
        let structural = poly(jac()) * stringy_closed_form(1);
        r.check(
            "Jacobian factor times reduced closed form",
            est.rf_equal(&structural),
            "",
        );
    }
    if inst.id == InstanceId::N {
        consistency_checks(&mut r, &inst.resolution);
    }
    r
}

fn euler_checks(
    r: &mut VerificationReport,
    inst: &ModuliInstance,
    est: &RationalFunction,
    expected: Option<Rational>,
) {
    let by_strata = match inst.resolution.stringy_euler() {
        Ok(b) => b,
        Err(e) => {
            r.fail("stringy Euler number", e);
            return;
        }
    };
    let parts: Vec<String> = by_strata
        .per_stratum
        .iter()
        .map(|(j, c)| format!("{j} {c}"))
        .collect();
    r.pass("Euler contributions", parts.join(", "));
    match est.diagonal_limit_at_one() {
        Ok(limit) => {
            r.check(
                "Euler number by two paths",
                limit == by_strata.total,
                format!("strata {}, limit {}", by_strata.total, limit),
            );
        }
        Err(e) => r.fail("Euler number by two paths", e),
    }
    match expected {
        Some(e) => {
            let mixed = if by_strata.total.is_integer() || by_strata.total.is_negative() {
                String::new()
            } else {
                let whole = by_strata.total.trunc();
                format!(" (= {} {})", whole, &by_strata.total - &whole)
            };
            r.check(
                "stringy Euler number",
                by_strata.total == e,
                format!("euler = {}{}", by_strata.total, mixed),
            );
        }
        None => r.pass(
            "stringy Euler number",
            format!("euler = {}", by_strata.total),
        ),
    }
}

/// Inclusion–exclusion and bundle descriptions of the strata.
fn consistency_checks(r: &mut VerificationReport, res: &StratifiedResolution) {
    let e = |ids: &[&str]| -> RationalFunction {
        res.stratum(ids)
            .map(|s| s.e.value().clone())
            .unwrap_or_else(|| RationalFunction::zero(&HODGE_VARS))
    };
    let p2 = proj_space(2);
    let p1 = proj_space(1);
    let copies = |x: &EPolynomial| x.value().scale(&int(64));
    let lib_first = hodge_first_exceptional();
    let lib_second = hodge_second_exceptional();

    // Δ̃: the symmetric square of ℙ² blown up along its diagonal ℙ².
    let delta = symmetric_square(&p2) + blowup_correction(&p2, 2);

    let d1 = &(&lib_first - &copies(&(&p2 * &p2))) - &copies(&(symmetric_square(&p2) - p2.clone()));
    r.check(
        "E(D1⁰) by inclusion-exclusion",
        e(&["D1"]).rf_equal(&d1),
        &d1,
    );
    let d2 = &lib_second - &copies(&(&p2 * &p2));
    r.check(
        "E(D2⁰) by inclusion-exclusion",
        e(&["D2"]).rf_equal(&d2),
        "",
    );
    let affine_line = p1.clone() - EPolynomial::variety(one());
    let d3 = copies(&(&delta * &p1 - delta.clone() - &(&affine_line * &p1) * &p2));
    r.check(
        "E(D3⁰) from bundle structure",
        e(&["D3"]).rf_equal(&d3),
        &d3,
    );
    let d12 = copies(&(&(p2.clone() - p1.clone()) * &p2));
    r.check(
        "E(D12⁰) from bundle structure",
        e(&["D1", "D2"]).rf_equal(&d12),
        &d12,
    );
    let d13 = copies(&(delta.clone() - &p1 * &p2));
    r.check(
        "E(D13⁰) from bundle structure",
        e(&["D1", "D3"]).rf_equal(&d13),
        &d13,
    );
    let d23 = copies(&(&(&affine_line * &p1) * &p2));
    r.check(
        "E(D23⁰) from bundle structure",
        e(&["D2", "D3"]).rf_equal(&d23),
        &d23,
    );
    let d123 = copies(&(&p1 * &p2));
    r.check(
        "E(D123⁰) from bundle structure",
        e(&["D1", "D2", "D3"]).rf_equal(&d123),
        &d123,
    );
}

/// Cross-checks among the Poincaré and Hodge–Deligne series.
pub fn verify_series() -> VerificationReport {
    let mut r = VerificationReport::new("series");
    let lib = build_series_library();
    let p14 = lib.value("EQ14");
    r.check(
        "Hodge series specializes to Poincaré series",
        to_poincare_variable(lib.value("EQ15")).rf_equal(p14),
        "u = v = -t",
    );
    r.check(
        "grouped and expanded Poincaré series agree",
        lib.value("EQ13").rf_equal(p14),
        "",
    );
    match p14.is_polynomial() {
        Ok(p) => {
            let coeffs: Vec<String> = (0..=p.total_degree().unwrap_or(0))
                .map(|k| p.coefficient(&[k]).to_string())
                .collect();
            let ok = p.terms().all(|(_, c)| c.is_integer() && !c.is_negative());
            r.check("Betti numbers nonnegative integers", ok, coeffs.join(" "));
        }
        Err(_) => r.fail("Betti numbers nonnegative integers", "not a polynomial"),
    }
    for key in ["EQ15", "EQ16", "EQ17", "EQ18"] {
        let entry = lib.get(key).expect("library entry");
        r.check(
            format!("{} polynomial", entry.name),
            entry.value.as_polynomial().is_ok(),
            "",
        );
    }
    let smooth = lib.value("EQ18");
    let expected = lib.value("EQ15")
        - lib.value("EQ16")
        - (lib.value("EQ17") - &poly(geometric(2).pow(2).scale(&int(64))));
    r.check("smooth part by subtraction", smooth.rf_equal(&expected), "");
    let at_one = smooth.eval(&[int(1), int(1)]).ok().flatten();
    r.check(
        "smooth part at u = v = 1",
        at_one == Some(int(-16)) && smooth.diagonal_limit_at_one().ok() == Some(int(-16)),
        at_one.map_or("undefined".to_string(), |v| v.to_string()),
    );
    let d16 = poly((geometric(2) * geometric(3)).scale(&int(64)));
    r.check(
        "first exceptional product form",
        lib.value("EQ16").rf_equal(&d16),
        "",
    );
    r
}

/// Options for [`verify_charts`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartOptions {
    pub bruteforce_primes: Vec<u64>,
}

impl Default for ChartOptions {
    fn default() -> Self {
        Self {
            bruteforce_primes: alloc::vec![3, 5],
        }
    }
}

/// Strict transforms, singular loci, the pair map, brute-force oracles,
/// discrepancies and normal crossings.
pub fn verify_charts(opts: &ChartOptions) -> VerificationReport {
    let mut r = VerificationReport::new("charts");
    if let Err(e) = chart_checks(&mut r, opts) {
        r.fail("chart algebra", e);
    }
    r
}

fn chart_checks(r: &mut VerificationReport, opts: &ChartOptions) -> Result<(), ChartError> {
    use charts::*;
    let f = hypersurface();

    let st = strict_transform(&f, &first_blowup_chart(), &["y1"])?;
    r.check(
        "strict transform, first blow-up",
        st.order("y1") == 2 && st.residual == first_residual(),
        format!("{} · ({})", st.factor_poly(), st.residual),
    );
    let st = strict_transform(&f, &first_blowup_side_chart(), &["y5"])?;
    r.check(
        "strict transform, first blow-up side chart",
        st.order("y5") == 2 && st.residual == side_residual(),
        format!("{} · ({})", st.factor_poly(), st.residual),
    );
    let straight = kummer_straightening().pull_back(&first_residual())?;
    r.check(
        "Kummer locus straightened",
        straight == straightened_residual(),
        &straight,
    );
    let (cleared, k) = side_kummer_straightening().pull_back_cleared(&side_residual())?;
    let w1 = Polynomial::var(&chart_vars("w"), "w1")?;
    r.check(
        "Kummer locus straightened, side chart",
        cleared == w1.pow(k) * side_straightened_residual(),
        format!("cleared with w1^{k}"),
    );
    let st = strict_transform(&straightened_residual(), &second_blowup_chart(), &["t2"])?;
    r.check(
        "strict transform, second blow-up",
        st.order("t2") == 2 && st.residual == second_residual(),
        format!("{} · ({})", st.factor_poly(), st.residual),
    );
    let cone = cone_straightening().pull_back(&second_residual())?;
    r.check("cone straightened", cone == cone_residual(), &cone);
    let st = strict_transform(&cone_residual(), &third_blowup_chart(), &["a3"])?;
    r.check(
        "strict transform, third blow-up",
        st.order("a3") == 2 && st.residual == final_residual(),
        format!("{} · ({})", st.factor_poly(), st.residual),
    );

    for m in [kummer_straightening(), cone_straightening()] {
        let det = m.jacobian_det();
        r.check(format!("unimodular: {}", m.name()), det.is_one(), &det);
    }
    for m in [
        first_blowup_chart(),
        second_blowup_chart(),
        third_blowup_chart(),
    ] {
        r.pass(format!("Jacobian: {}", m.name()), m.jacobian_det());
    }

    for (title, pipeline, expected) in [
        ("first blow-up", first_stage_pipeline(), alloc::vec![4]),
        ("second blow-up", second_stage_pipeline(), alloc::vec![4, 1]),
        (
            "full resolution",
            resolution_pipeline(),
            alloc::vec![4, 1, 4],
        ),
    ] {
        let table = discrepancy(&pipeline, &f)?;
        let got: Vec<Rational> = table.iter().map(|e| e.discrepancy()).collect();
        let want: Vec<Rational> = expected.into_iter().map(int).collect();
        let witness: Vec<String> = table
            .iter()
            .map(|e| {
                format!(
                    "{}: {} - {} = {}",
                    e.divisor,
                    e.jacobian_order,
                    e.pullback_order,
                    e.discrepancy()
                )
            })
            .collect();
        r.check(
            format!("discrepancy, {title}"),
            got == want,
            witness.join(", "),
        );
    }

    for (g, comp) in [
        (first_residual(), delta_main_chart()),
        (first_residual(), kummer_main_chart()),
        (side_residual(), delta_side_chart()),
        (side_residual(), kummer_side_chart()),
        (second_residual(), delta_second_chart()),
    ] {
        let c = singular_component_check(&g, &comp)?;
        let witness = if c.holds {
            format!("g and ∇g vanish (cleared with power {})", c.clearing)
        } else {
            format!("nonzero: {}", c.nonvanishing.join(", "))
        };
        r.check(format!("singular along {}", c.component), c.holds, witness);
    }

    let cubic = degenerate_forms_cubic();
    r.check(
        "pair map lands in degenerate forms",
        pair_image_check(&pair_map(2), &cubic)?,
        "",
    );
    r.check(
        "mutated pair map rejected",
        !pair_image_check(&pair_map(1), &cubic)?,
        "",
    );
    r.check(
        "pair map bidegree (1,1)",
        pair_map(2).iter().all(is_bihomogeneous),
        "",
    );
    for p in [3, 5] {
        r.absorb(pair_fiber_count(p)?.report());
    }

    for &p in &opts.bruteforce_primes {
        let bf = singular_bruteforce(
            &first_residual(),
            p,
            &[delta_main_equations(), kummer_main_equations()],
        )?;
        r.absorb(bf.report(format!("singular points of first residual over F_{p}")));
        let bf = singular_bruteforce(&second_residual(), p, &[delta_second_equations()])?;
        r.absorb(bf.report(format!("singular points of second residual over F_{p}")));
    }

    r.absorb(normal_crossing_probe()?);
    Ok(())
}
