use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{merge_universes, universe, Monomial, PolyError, Polynomial, Rational, Result};

impl Polynomial {
    /// Formal partial derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self.require(var)?;
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms_map() {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            terms.insert(Monomial::new(exps), c * Rational::from_integer(e.into()));
        }
        Ok(Polynomial::from_parts(self.universe_arc().clone(), terms))
    }

    /// Gradient in universe order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        self.vars()
            .iter()
            .map(|v| self.derivative(v).expect("own variable"))
            .collect()
    }

    /// Ring-homomorphism image under `assignment`; unassigned variables map
    /// to themselves.
    pub fn substitute(&self, assignment: &BTreeMap<String, Polynomial>) -> Result<Polynomial> {
        let (p, _) = self.substitute_inner(assignment, None)?;
        Ok(p)
    }

    /// Convenience wrapper taking `(name, image)` pairs.
    pub fn substitute_pairs(&self, pairs: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let map = pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        self.substitute(&map)
    }

    /// Substitutes `var ↦ numerator / denominator` for every assigned variable
    /// and clears denominators.
    ///
    /// Returns `(c, k)` with `c = denominator^k · self(assignment / denominator)`,
    /// where `k` is the largest total degree of a term in the assigned
    /// variables; `c` is then a polynomial.
    pub fn substitute_cleared(
        &self,
        assignment: &BTreeMap<String, Polynomial>,
        denominator: &Polynomial,
    ) -> Result<(Polynomial, u32)> {
        if denominator.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        self.substitute_inner(assignment, Some(denominator))
    }

    fn substitute_inner(
        &self,
        assignment: &BTreeMap<String, Polynomial>,
        denominator: Option<&Polynomial>,
    ) -> Result<(Polynomial, u32)> {
        for key in assignment.keys() {
            self.require(key)?;
        }
        let vars = self.vars();
        let images: Vec<Option<&Polynomial>> = vars.iter().map(|v| assignment.get(v)).collect();

        // Result universe: own variables that stay meaningful, then every
        // variable the images introduce.
        let image_vars: Vec<&String> = images
            .iter()
            .flatten()
            .flat_map(|p| p.vars().iter())
            .collect();
        let mut out_vars: Vec<String> = vars
            .iter()
            .zip(&images)
            .filter(|(v, img)| img.is_none() || image_vars.contains(v))
            .map(|(v, _)| v.clone())
            .collect();
        for v in image_vars {
            if !out_vars.contains(v) {
                out_vars.push(v.clone());
            }
        }
        let mut out_u: Arc<[String]> = out_vars.into();
        if let Some(d) = denominator {
            out_u = merge_universes(&out_u, d.universe_arc());
        }
        let lift = |p: &Polynomial| p.with_universe(&out_u).expect("universe covers image");

        let lifted: Vec<Option<Polynomial>> = images.iter().map(|o| o.map(lift)).collect();
        let den = denominator.map(lift);
        let free_index: Vec<Option<usize>> = vars
            .iter()
            .zip(&images)
            .map(|(v, img)| {
                if img.is_none() {
                    out_u.iter().position(|o| o == v)
                } else {
                    None
                }
            })
            .collect();

        let clearing = match den {
            Some(_) => self
                .terms_map()
                .keys()
                .map(|m| assigned_degree(m, &images))
                .max()
                .unwrap_or(0),
            None => 0,
        };

        let mut powers: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        let mut den_powers: BTreeMap<u32, Polynomial> = BTreeMap::new();
        let mut acc = Polynomial::zero(&out_u);
        for (m, c) in self.terms_map() {
            let mut free = alloc::vec![0u32; out_u.len()];
            let mut term = Polynomial::constant(&out_u, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &lifted[i] {
                    Some(img) => {
                        let pw = powers.entry((i, e)).or_insert_with(|| img.pow(e));
                        term = &term * &*pw;
                    }
                    None => free[free_index[i].expect("free variable kept")] += e,
                }
            }
            if let Some(d) = &den {
                let k = clearing - assigned_degree(m, &images);
                if k > 0 {
                    let pw = den_powers.entry(k).or_insert_with(|| d.pow(k));
                    term = &term * &*pw;
                }
            }
            let term = term.mul_monomial(&Monomial::new(free), &Rational::from_integer(1.into()));
            for (tm, tc) in term.into_terms() {
                acc.add_term(tm, tc);
            }
        }
        Ok((acc, clearing))
    }
}

fn assigned_degree(m: &Monomial, images: &[Option<&Polynomial>]) -> u32 {
    m.exponents()
        .iter()
        .zip(images)
        .filter(|(_, img)| img.is_some())
        .map(|(e, _)| *e)
        .sum()
}

/// Determinant of a square matrix of polynomials by Laplace expansion with
/// memoized minors over column subsets (`O(n·2^n)` polynomial products).
pub fn determinant(matrix: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = matrix.len();
    for row in matrix {
        if row.len() != n {
            return Err(PolyError::NonSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    if n == 0 {
        return Ok(Polynomial::one::<&str>(&[]));
    }
    let u = matrix
        .iter()
        .flatten()
        .fold(matrix[0][0].universe_arc().clone(), |acc, p| {
            merge_universes(&acc, p.universe_arc())
        });
    let zero = Polynomial::zero(&u);

    // minors[mask] = det of the first popcount(mask) rows restricted to the
    // columns in mask.
    let mut minors: BTreeMap<u32, Polynomial> = BTreeMap::new();
    minors.insert(0, Polynomial::one(&u));
    for (k, row) in matrix.iter().enumerate() {
        let mut next = BTreeMap::new();
        for (&mask, minor) in &minors {
            if minor.is_zero() {
                continue;
            }
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let full = mask | (1 << c);
                // Position of column c inside the sorted column set `full`.
                let pos = (full & ((1u32 << c) - 1)).count_ones() as usize;
                let prod = entry * minor;
                let slot = next.entry(full).or_insert_with(|| zero.clone());
                if (pos + k).is_multiple_of(2) {
                    *slot = &*slot + &prod;
                } else {
                    *slot = &*slot - &prod;
                }
            }
        }
        minors = next;
    }
    Ok(minors
        .remove(&((1u32 << n) - 1))
        .unwrap_or(zero)
        .with_universe(&u)
        .expect("same universe"))
}

/// Determinant of the matrix `∂images[i]/∂vars[j]`.
pub fn jacobian_det<S: AsRef<str>>(images: &[Polynomial], vars: &[S]) -> Result<Polynomial> {
    if images.len() != vars.len() {
        return Err(PolyError::NonSquare {
            rows: images.len(),
            cols: vars.len(),
        });
    }
    let mut u = universe(vars);
    for p in images {
        u = merge_universes(&u, p.universe_arc());
    }
    let mut matrix = Vec::with_capacity(images.len());
    for p in images {
        let p = p.with_universe(&u)?;
        let row = vars
            .iter()
            .map(|v| p.derivative(v.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        matrix.push(row);
    }
    determinant(&matrix)
}

impl Polynomial {
    /// True if every coefficient is zero after the substitution; used for
    /// identity checks where only vanishing matters.
    pub fn vanishes_under(&self, assignment: &BTreeMap<String, Polynomial>) -> Result<bool> {
        Ok(self.substitute(assignment)?.is_zero())
    }
}
