//! Blow-up chart algebra: polynomial maps between affine charts, strict
//! transforms, discrepancies and singular-locus checks.
//!
//! A [`PolyMap`] expresses the coordinates of a *target* chart as polynomials
//! in the coordinates of a *source* chart, so pulling a polynomial back is a
//! substitution. Pipelines list maps from the original space inward: the
//! source of stage `k` is the target of stage `k + 1`.

mod model;
mod pair_map;
mod singular;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::exactpoly::{jacobian_det, Monomial, PolyError, Polynomial, Rational};

pub use model::*;
pub use pair_map::{
    is_bihomogeneous, pair_fiber_count, pair_image_check, pair_map, pair_map_vars, FiberCount,
};
pub use singular::{
    singular_bruteforce, singular_component_check, BruteForce, ComponentCheck, ComponentEquations,
    ComponentParametrization,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChartError {
    #[error("map `{name}`: {sources} source variables, {targets} targets, {images} images")]
    Arity {
        name: String,
        sources: usize,
        targets: usize,
        images: usize,
    },
    #[error("map `{map}`: image uses `{var}`, which is not a source variable")]
    ForeignVariable { map: String, var: String },
    #[error("cannot compose `{outer}` after `{inner}`: coordinates do not match")]
    CompositionMismatch { outer: String, inner: String },
    #[error("empty pipeline")]
    EmptyPipeline,
    #[error("marker {divisor} names `{coordinate}`, which is not a final chart coordinate")]
    UnknownMarker { divisor: String, coordinate: String },
    #[error("the pulled-back polynomial is zero")]
    ZeroPullback,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T, E = ChartError> = core::result::Result<T, E>;

/// `target_i = images_i(source)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    name: String,
    source: Vec<String>,
    target: Vec<String>,
    images: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(
        name: impl Into<String>,
        source: &[S],
        target: &[T],
        images: Vec<Polynomial>,
    ) -> Result<Self> {
        let name = name.into();
        let source: Vec<String> = source.iter().map(|s| s.as_ref().to_string()).collect();
        let target: Vec<String> = target.iter().map(|s| s.as_ref().to_string()).collect();
        if source.len() != target.len() || images.len() != target.len() {
            return Err(ChartError::Arity {
                name,
                sources: source.len(),
                targets: target.len(),
                images: images.len(),
            });
        }
        let mut lifted = Vec::with_capacity(images.len());
        for p in images {
            if let Some(v) = p
                .support_vars()
                .into_iter()
                .find(|v| !source.iter().any(|s| s == v))
            {
                return Err(ChartError::ForeignVariable {
                    map: name,
                    var: v.to_string(),
                });
            }
            lifted.push(p.with_universe(&source)?);
        }
        Ok(Self {
            name,
            source,
            target,
            images: lifted,
        })
    }

    pub fn identity<S: AsRef<str>>(name: impl Into<String>, vars: &[S]) -> Self {
        let images = vars
            .iter()
            .map(|v| Polynomial::var(vars, v.as_ref()).expect("own variable"))
            .collect();
        Self::new(name, vars, vars, images).expect("identity is square")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &[String] {
        &self.source
    }

    pub fn target(&self) -> &[String] {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, target_var: &str) -> Option<&Polynomial> {
        self.target
            .iter()
            .position(|t| t == target_var)
            .map(|i| &self.images[i])
    }

    fn assignment(&self) -> BTreeMap<String, Polynomial> {
        self.target
            .iter()
            .cloned()
            .zip(self.images.iter().cloned())
            .collect()
    }

    /// `p ∘ self`: a polynomial in target coordinates rewritten in source
    /// coordinates.
    pub fn pull_back(&self, p: &Polynomial) -> Result<Polynomial> {
        let p = p.with_universe(&self.target)?;
        Ok(p.substitute(&self.assignment())?
            .with_universe(&self.source)?)
    }

    /// `outer ∘ self`, where `outer.source` equals `self.target`.
    pub fn then_pull(&self, outer: &PolyMap) -> Result<PolyMap> {
        if outer.source != self.target {
            return Err(ChartError::CompositionMismatch {
                outer: outer.name.clone(),
                inner: self.name.clone(),
            });
        }
        let images = outer
            .images
            .iter()
            .map(|p| self.pull_back(p))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(
            format!("{}∘{}", outer.name, self.name),
            &self.source,
            &outer.target,
            images,
        )
    }

    /// Determinant of `∂target_i/∂source_j`.
    pub fn jacobian_det(&self) -> Polynomial {
        jacobian_det(&self.images, &self.source)
            .expect("square by construction")
            .with_universe(&self.source)
            .expect("images live in the source chart")
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({}) -> (", self.name, self.source.join(", "))?;
        for (i, p) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Maps listed from the original chart inward, with exceptional divisors
/// marked by the final-chart coordinate that cuts them out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPipeline {
    stages: Vec<PolyMap>,
    markers: Vec<(String, String)>,
}

impl ChartPipeline {
    pub fn new(stages: Vec<PolyMap>, markers: Vec<(String, String)>) -> Result<Self> {
        let Some(last) = stages.last() else {
            return Err(ChartError::EmptyPipeline);
        };
        for w in stages.windows(2) {
            if w[0].source != w[1].target {
                return Err(ChartError::CompositionMismatch {
                    outer: w[0].name.clone(),
                    inner: w[1].name.clone(),
                });
            }
        }
        for (divisor, coordinate) in &markers {
            if !last.source.contains(coordinate) {
                return Err(ChartError::UnknownMarker {
                    divisor: divisor.clone(),
                    coordinate: coordinate.clone(),
                });
            }
        }
        Ok(Self { stages, markers })
    }

    /// Convenience constructor for `(&str, &str)` markers.
    pub fn with_markers(stages: Vec<PolyMap>, markers: &[(&str, &str)]) -> Result<Self> {
        let markers = markers
            .iter()
            .map(|(d, c)| (d.to_string(), c.to_string()))
            .collect();
        Self::new(stages, markers)
    }

    pub fn stages(&self) -> &[PolyMap] {
        &self.stages
    }

    pub fn markers(&self) -> &[(String, String)] {
        &self.markers
    }

    /// The composite map from the final chart to the original coordinates.
    pub fn compose(&self) -> PolyMap {
        let mut it = self.stages.iter();
        let first = it.next().expect("nonempty").clone();
        it.fold(first, |acc, stage| {
            stage
                .then_pull(&acc)
                .expect("stages compose by construction")
        })
    }
}

/// `pullback = Π var^k · residual`, with `residual` not divisible by any of
/// the listed variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictTransform {
    pub factor: Vec<(String, u32)>,
    pub residual: Polynomial,
}

impl StrictTransform {
    pub fn factor_poly(&self) -> Polynomial {
        let vars = self.residual.vars();
        self.factor
            .iter()
            .fold(Polynomial::one(vars), |acc, (v, k)| {
                acc * Polynomial::var(vars, v).expect("chart variable").pow(*k)
            })
    }

    pub fn order(&self, var: &str) -> u32 {
        self.factor
            .iter()
            .find(|(v, _)| v == var)
            .map_or(0, |(_, k)| *k)
    }
}

/// Pulls `p` back along `map` and strips the listed exceptional variables.
pub fn strict_transform<S: AsRef<str>>(
    p: &Polynomial,
    map: &PolyMap,
    exceptional: &[S],
) -> Result<StrictTransform> {
    let pulled = map.pull_back(p)?;
    strip_exceptional(&pulled, exceptional)
}

/// Divides out the largest power of each listed variable.
pub fn strip_exceptional<S: AsRef<str>>(p: &Polynomial, vars: &[S]) -> Result<StrictTransform> {
    if p.is_zero() {
        return Err(ChartError::ZeroPullback);
    }
    let n = p.vars().len();
    let mut exps = alloc::vec![0u32; n];
    let mut factor = Vec::with_capacity(vars.len());
    for v in vars {
        let v = v.as_ref();
        let i = p
            .index_of(v)
            .ok_or_else(|| PolyError::UnknownVariable(v.to_string()))?;
        let k = p.vanishing_order(v)?;
        exps[i] = k;
        factor.push((v.to_string(), k));
    }
    let residual = p.div_monomial(&Monomial::new(exps))?;
    Ok(StrictTransform { factor, residual })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyEntry {
    pub divisor: String,
    pub coordinate: String,
    pub jacobian_order: u32,
    pub pullback_order: u32,
}

impl DiscrepancyEntry {
    pub fn discrepancy(&self) -> Rational {
        Rational::from_integer((self.jacobian_order as i64 - self.pullback_order as i64).into())
    }
}

/// Discrepancy of every marked divisor of `pipeline` over the hypersurface
/// `f = 0`: the order of the Jacobian determinant minus the order of the
/// exceptional part of `f`'s pullback, along the marking coordinate.
pub fn discrepancy(pipeline: &ChartPipeline, f: &Polynomial) -> Result<Vec<DiscrepancyEntry>> {
    let composite = pipeline.compose();
    let jac = composite.jacobian_det();
    let pulled = composite.pull_back(f)?;
    if pulled.is_zero() {
        return Err(ChartError::ZeroPullback);
    }
    pipeline
        .markers
        .iter()
        .map(|(divisor, coordinate)| {
            Ok(DiscrepancyEntry {
                divisor: divisor.clone(),
                coordinate: coordinate.clone(),
                jacobian_order: jac.vanishing_order(coordinate)?,
                pullback_order: pulled.vanishing_order(coordinate)?,
            })
        })
        .collect()
}

/// `{divisor: a}` view of a discrepancy table.
pub fn discrepancy_map(entries: &[DiscrepancyEntry]) -> BTreeMap<String, Rational> {
    entries
        .iter()
        .map(|e| (e.divisor.clone(), e.discrepancy()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    fn v(vars: &[&str], name: &str) -> Polynomial {
        Polynomial::var(vars, name).unwrap()
    }

    #[test]
    fn map_rejects_foreign_variables() {
        let err = PolyMap::new("bad", &["a"], &["b"], alloc::vec![v(&["c"], "c")]);
        assert!(matches!(err, Err(ChartError::ForeignVariable { .. })));
        let err = PolyMap::new("bad", &["a", "b"], &["c"], alloc::vec![v(&["a"], "a")]);
        assert!(matches!(err, Err(ChartError::Arity { .. })));
    }

    #[test]
    fn pull_back_and_compose() {
        // plane blow-up chart (s, t) -> (s, s t), then a shear t -> t + s
        let chart = PolyMap::new(
            "chart",
            &["s", "t"],
            &["x", "y"],
            alloc::vec![
                v(&["s", "t"], "s"),
                v(&["s", "t"], "s") * v(&["s", "t"], "t")
            ],
        )
        .unwrap();
        let shear = PolyMap::new(
            "shear",
            &["a", "b"],
            &["s", "t"],
            alloc::vec![
                v(&["a", "b"], "a"),
                v(&["a", "b"], "b") + v(&["a", "b"], "a")
            ],
        )
        .unwrap();
        let pipeline =
            ChartPipeline::with_markers(alloc::vec![chart.clone(), shear], &[("E", "a")]).unwrap();
        let comp = pipeline.compose();
        assert_eq!(comp.source(), &["a", "b"]);
        let ab = ["a", "b"];
        assert_eq!(
            comp.images()[1],
            v(&ab, "a") * v(&ab, "b") + v(&ab, "a").pow(2)
        );
        assert_eq!(comp.jacobian_det(), v(&ab, "a"));

        // cusp y^2 = x^3 pulls back to s^2 (t^2 - s)
        let cusp = v(&["x", "y"], "y").pow(2) - v(&["x", "y"], "x").pow(3);
        let st = strict_transform(&cusp, &chart, &["s"]).unwrap();
        assert_eq!(st.factor, alloc::vec![("s".to_string(), 2)]);
        assert_eq!(
            st.residual,
            v(&["s", "t"], "t").pow(2) - v(&["s", "t"], "s")
        );
        assert_eq!(
            &st.factor_poly() * &st.residual,
            chart.pull_back(&cusp).unwrap()
        );
    }

    #[test]
    fn pipeline_shape_errors() {
        let id = PolyMap::identity("id", &["a"]);
        let other = PolyMap::identity("other", &["b"]);
        assert!(matches!(
            ChartPipeline::new(alloc::vec![id.clone(), other], Vec::new()),
            Err(ChartError::CompositionMismatch { .. })
        ));
        assert!(matches!(
            ChartPipeline::with_markers(alloc::vec![id], &[("E", "z")]),
            Err(ChartError::UnknownMarker { .. })
        ));
        assert_eq!(
            ChartPipeline::new(Vec::new(), Vec::new()),
            Err(ChartError::EmptyPipeline)
        );
    }

    #[test]
    fn identity_has_no_discrepancy() {
        let vars = ["a", "b"];
        let smooth = v(&vars, "a") + v(&vars, "b").pow(2);
        let p =
            ChartPipeline::with_markers(alloc::vec![PolyMap::identity("id", &vars)], &[("E", "a")])
                .unwrap();
        let table = discrepancy(&p, &smooth).unwrap();
        assert_eq!(table[0].discrepancy(), int(0));
        assert!(PolyMap::identity("id", &vars).jacobian_det().is_one());
    }
}
