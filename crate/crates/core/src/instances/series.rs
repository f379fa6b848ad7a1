//! Poincaré and Hodge–Deligne series of the partial desingularization.

use alloc::string::String;
use alloc::vec::Vec;

use crate::exactpoly::{int, rat, Polynomial};
use crate::hodge::{self, jacobian, proj_space, EPolynomial};
use crate::ratfunc::RationalFunction;

pub(crate) fn q() -> Polynomial {
    hodge::uv()
}

pub(crate) fn one() -> Polynomial {
    hodge::one()
}

pub(crate) fn c(n: i64) -> Polynomial {
    hodge::constant(n)
}

/// `1 + q + … + q^n` as a polynomial.
pub(crate) fn geometric(n: u32) -> Polynomial {
    proj_space(n).as_polynomial().expect("polynomial")
}

/// `(1−u)³(1−v)³`.
pub(crate) fn jac() -> Polynomial {
    jacobian(3).as_polynomial().expect("polynomial")
}

/// `(1+u)³(1+v)³`.
pub(crate) fn jac_flipped() -> Polynomial {
    (one() + hodge::u()).pow(3) * (one() + hodge::v()).pow(3)
}

pub(crate) fn rf(num: Polynomial, den: Polynomial) -> RationalFunction {
    RationalFunction::new(num, den).expect("nonzero denominator")
}

pub(crate) fn poly(p: Polynomial) -> RationalFunction {
    RationalFunction::from_poly(p)
}

fn half(f: RationalFunction) -> RationalFunction {
    f.scale(&rat(1, 2))
}

/// `(uv−1)/((uv)^5−1)`, the weight of a divisor with discrepancy 4.
pub(crate) fn weight4() -> RationalFunction {
    rf(q() - one(), q().pow(5) - one())
}

/// `(uv−1)/((uv)^2−1)`, the weight of a divisor with discrepancy 1.
pub(crate) fn weight1() -> RationalFunction {
    rf(q() - one(), q().pow(2) - one())
}

fn t() -> Polynomial {
    Polynomial::var(&["t"], "t").expect("t")
}

fn t_one() -> Polynomial {
    Polynomial::one(&["t"])
}

/// `Σ_{k=lo..=hi, step} t^k`.
fn t_sum(lo: u32, hi: u32, step: usize) -> Polynomial {
    (lo..=hi)
        .step_by(step)
        .fold(Polynomial::zero(&["t"]), |acc, k| acc + t().pow(k))
}

fn t_rf(num: Polynomial, den: Polynomial) -> RationalFunction {
    rf(num, den)
}

/// Equivariant Poincaré series of the semistable stratum.
pub fn equivariant_poincare() -> RationalFunction {
    let num = (t_one() + t().pow(3)).pow(6) - t().pow(8) * (t_one() + t()).pow(6);
    t_rf(num, (t_one() - t().pow(2)) * (t_one() - t().pow(4)))
}

fn poincare_first_correction() -> RationalFunction {
    let a = t_rf(t_sum(2, 16, 2), t_one() - t().pow(4));
    let b = t_rf(t().pow(10) * t_sum(0, 4, 2), t_one() - t().pow(2));
    (a - b).scale(&int(64))
}

fn poincare_second_correction() -> RationalFunction {
    let inner = half(t_rf((t_one() + t()).pow(6), t_one() - t().pow(2)))
        + half(t_rf((t_one() - t()).pow(6), t_one() + t().pow(2)))
        + t_rf(t_sum(2, 4, 2), t_one() - t().pow(4)).scale(&int(64));
    let added = poly(t_sum(2, 6, 2)) * inner;
    let removed = t_rf(t().pow(4) * (t_one() + t().pow(2)), t_one() - t().pow(2))
        * poly((t_one() + t()).pow(6) + t_sum(2, 4, 2).scale(&int(64)));
    added - removed
}

/// After the first blow-up and deletion of unstable strata.
pub fn equivariant_poincare_first() -> RationalFunction {
    equivariant_poincare() + poincare_first_correction()
}

/// After the second blow-up and deletion of unstable strata.
pub fn equivariant_poincare_second() -> RationalFunction {
    equivariant_poincare_first() + poincare_second_correction()
}

/// Poincaré series of the partial desingularization, summed term by term.
pub fn poincare_partial() -> RationalFunction {
    [
        equivariant_poincare(),
        poincare_first_correction(),
        poincare_second_correction(),
    ]
    .into_iter()
    .fold(RationalFunction::zero(&["t"]), |acc, x| acc + x)
}

/// Hodge–Deligne series of the equivariant cohomology.
pub fn equivariant_hodge() -> RationalFunction {
    let u = hodge::u();
    let v = hodge::v();
    let num = (one() - u.pow(2) * &v).pow(3) * (one() - &u * v.pow(2)).pow(3) - q().pow(4) * jac();
    rf(num, (one() - q()) * (one() - q().pow(2)))
}

/// Added by the first blow-up and deletion of unstable points.
pub fn first_blowup_correction() -> RationalFunction {
    let a = rf(q() * geometric(7), one() - q().pow(2));
    let b = rf(q().pow(5) * geometric(2), one() - q());
    (a - b).scale(&int(64))
}

/// Added by the second blow-up and deletion of unstable points.
pub fn second_blowup_correction() -> RationalFunction {
    let inner = half(rf(jac(), one() - q()))
        + half(rf(jac_flipped(), one() + q()))
        + rf(q() + q().pow(2), one() - q().pow(2)).scale(&int(64));
    let added = poly(q() * geometric(2)) * inner;
    let removed = rf(q().pow(2) * (one() + q()), one() - q())
        * poly(jac() + (q() + q().pow(2)).scale(&int(64)));
    added - removed
}

/// E-polynomial of the partial desingularization.
pub fn hodge_partial() -> RationalFunction {
    equivariant_hodge() + first_blowup_correction() + second_blowup_correction()
}

/// E-polynomial of the partially desingularized first exceptional divisor.
pub fn hodge_first_exceptional() -> RationalFunction {
    poly((geometric(2) * geometric(3)).scale(&int(64)))
}

/// `½J + ½J̄` and `½J − ½J̄` for the genus-3 Jacobian `J`.
pub(crate) fn jac_even_odd() -> (Polynomial, Polynomial) {
    let h = rat(1, 2);
    let even = (jac() + jac_flipped()).scale(&h);
    let odd = (jac() - jac_flipped()).scale(&h);
    (even, odd)
}

/// E-polynomial of the second exceptional divisor.
pub fn hodge_second_exceptional() -> RationalFunction {
    let (even, odd) = jac_even_odd();
    poly((even + (q() + q().pow(2)).scale(&int(64))) * geometric(2) + odd * q())
}

/// E-polynomial of the smooth part.
pub fn hodge_smooth_part() -> RationalFunction {
    let bracket = rf(jac(), one() - q()) + rf(jac_flipped(), one() + q());
    equivariant_hodge() - half(bracket)
}

/// `(uv)^5(1+uv+(uv)^2)(1+(uv)^2)((uv−1)/((uv)^5−1))²`.
pub(crate) fn deepest_term() -> RationalFunction {
    poly(q().pow(5) * geometric(2) * (one() + q().pow(2))) * weight4().pow(2)
}

/// Closed form of the stringy E-function of the moduli space, with the
/// last term scaled by `last`.
pub fn stringy_closed_form(last: i64) -> RationalFunction {
    let middle = rf(jac(), one() - q()) - rf(jac_flipped(), one() + q());
    equivariant_hodge() - half(poly(q().pow(2)) * middle) + deepest_term().scale(&int(last))
}

/// Correction terms of the local quotient: its stringy E-function minus the
/// E-polynomial of its smooth part.
pub fn local_correction() -> RationalFunction {
    rf(q().pow(3) * geometric(2), one() + q()) + deepest_term()
}

/// Closed form for the moduli space without fixed determinant.
pub fn stringy_closed_form_full() -> RationalFunction {
    poly(jac()) * stringy_closed_form(1)
}

/// A named library entry; `alias` is the short upper-case handle.
#[derive(Debug, Clone)]
pub struct SeriesEntry {
    pub name: &'static str,
    pub alias: &'static str,
    pub description: &'static str,
    pub value: EPolynomial,
}

#[derive(Debug, Clone)]
pub struct SeriesLibrary {
    entries: Vec<SeriesEntry>,
}

impl SeriesLibrary {
    pub fn entries(&self) -> &[SeriesEntry] {
        &self.entries
    }

    /// Looks an entry up by name or alias, ignoring ASCII case.
    pub fn get(&self, key: &str) -> Option<&SeriesEntry> {
        self.entries
            .iter()
            .find(|e| e.name.eq_ignore_ascii_case(key) || e.alias.eq_ignore_ascii_case(key))
    }

    pub fn value(&self, key: &str) -> &RationalFunction {
        self.get(key)
            .unwrap_or_else(|| panic!("no series `{key}`"))
            .value
            .value()
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| String::from(e.alias)).collect()
    }
}

pub fn build_series_library() -> SeriesLibrary {
    let formal = EPolynomial::formal;
    let variety = EPolynomial::variety;
    let entry = |name, alias, description, value| SeriesEntry {
        name,
        alias,
        description,
        value,
    };
    SeriesLibrary {
        entries: alloc::vec![
            entry(
                "equivariant-poincare",
                "PG_XSS",
                "equivariant Poincaré series of the semistable stratum",
                formal(equivariant_poincare()),
            ),
            entry(
                "equivariant-poincare-first",
                "PG_X1",
                "equivariant Poincaré series after the first blow-up",
                formal(equivariant_poincare_first()),
            ),
            entry(
                "equivariant-poincare-second",
                "EQ13",
                "equivariant Poincaré series after the second blow-up",
                formal(equivariant_poincare_second()),
            ),
            entry(
                "poincare-partial",
                "EQ14",
                "Poincaré polynomial of the partial desingularization",
                variety(poincare_partial()),
            ),
            entry(
                "equivariant-hodge",
                "HD_ASS",
                "Hodge–Deligne series of the equivariant cohomology",
                formal(equivariant_hodge()),
            ),
            entry(
                "first-blowup-correction",
                "CORR1",
                "correction from the first blow-up",
                formal(first_blowup_correction()),
            ),
            entry(
                "second-blowup-correction",
                "CORR2",
                "correction from the second blow-up",
                formal(second_blowup_correction()),
            ),
            entry(
                "hodge-partial",
                "EQ15",
                "E-polynomial of the partial desingularization",
                variety(hodge_partial()),
            ),
            entry(
                "hodge-first-exceptional",
                "EQ16",
                "E-polynomial of the first exceptional divisor, partially desingularized",
                variety(hodge_first_exceptional()),
            ),
            entry(
                "hodge-second-exceptional",
                "EQ17",
                "E-polynomial of the second exceptional divisor",
                variety(hodge_second_exceptional()),
            ),
            entry(
                "hodge-smooth-part",
                "EQ18",
                "E-polynomial of the smooth part",
                variety(hodge_smooth_part()),
            ),
            entry(
                "stringy-moduli",
                "EST_N",
                "stringy E-function of the moduli space",
                formal(stringy_closed_form(64)),
            ),
            entry(
                "stringy-local-correction",
                "EST_X_CORR",
                "stringy E-function of the local quotient minus its smooth part",
                formal(local_correction()),
            ),
            entry(
                "stringy-moduli-full",
                "EQ22",
                "stringy E-function without fixed determinant",
                formal(stringy_closed_form_full()),
            ),
        ],
    }
}

/// `u ↦ −t, v ↦ −t`.
pub fn to_poincare_variable(e: &RationalFunction) -> RationalFunction {
    let mt = -t();
    e.substitute_pairs(&[("u", mt.clone()), ("v", mt)])
        .expect("denominator survives the specialization")
}
