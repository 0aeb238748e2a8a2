//! Formal sums of generators with polynomial coefficients, the differential,
//! and the product, generic over the two generator families.
//!
//! Both families share the same algebraic skeleton: generators compose when
//! image and domain idempotents match; the product of two generators
//! survives only when their crossing counts add up under composition; the
//! differential resolves one crossing at a time and keeps only resolutions
//! dropping the crossing count by exactly one.  In both operations the
//! coefficient monomial is pinned by conservation of the weight vector.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// Common interface of pong and asteroids generators.
pub trait StrandGenerator:
    Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + Sized
{
    /// Name used in JSON records.
    fn algebra_name() -> &'static str;

    /// The width parameter `m` (also the number of formal variables).
    fn m_value(&self) -> i64;

    /// The number of strands `k`.
    fn strand_count(&self) -> usize;

    /// The chosen orbit representatives, strictly increasing.
    fn domain_reps(&self) -> &[i64];

    /// Images of the representatives, in domain order.
    fn image_values(&self) -> &[i64];

    /// Rebuilds a generator from raw parts, validating them.
    fn from_parts(m: i64, k: usize, domain: Vec<i64>, values: Vec<i64>) -> Result<Self>;

    /// The idempotent generator on the given sorted label set.
    fn identity_on(m: i64, labels: Vec<i64>) -> Result<Self>;

    /// Range of labels idempotent states draw from.
    fn idempotent_label_range(m: i64) -> std::ops::RangeInclusive<i64>;

    /// All generators moving each representative at most `max_disp`.
    fn enumerate_bounded(m: i64, k: usize, max_disp: i64) -> Result<Vec<Self>>;

    /// Sorted labels of the domain orbits.
    fn domain_idem(&self) -> Vec<i64>;

    /// Sorted labels of the image orbits.
    fn image_idem(&self) -> Vec<i64>;

    /// Composite with `g` (self acts first), when idempotents match.
    fn then(&self, g: &Self) -> Option<Self>;

    /// Canonical representatives of all crossing classes, sorted.
    fn crossing_reps(&self) -> Vec<(i64, i64)>;

    /// Number of crossing classes.
    fn crossing_count(&self) -> usize {
        self.crossing_reps().len()
    }

    /// Resolves the crossing class with the given canonical representative.
    fn resolve_rep(&self, rep: (i64, i64)) -> Result<Self>;

    /// Doubled weight vector, one slot per formal variable.
    fn weights_doubled(&self) -> Vec<i64>;

    /// Largest distance any strand travels.
    fn max_displacement(&self) -> i64;

    /// Relative grading: the crossing count.
    fn maslov(&self) -> i64 {
        self.crossing_count() as i64
    }

    fn is_idempotent(&self) -> bool {
        self.domain_reps() == self.image_values()
    }
}

/// All idempotent generators for the given parameters, sorted.
pub fn idempotents<G: StrandGenerator>(m: i64, k: usize) -> Result<Vec<G>> {
    G::idempotent_label_range(m)
        .combinations(k)
        .map(|labels| G::identity_on(m, labels))
        .collect()
}

/// Doubled weight of a term `mono * g`: each variable contributes its
/// exponent (doubled: two per power) on top of the generator's weight.
pub fn term_weight_doubled<G: StrandGenerator>(g: &G, mono: &Monomial) -> Vec<i64> {
    g.weights_doubled()
        .iter()
        .zip(mono.exponents())
        .map(|(w, e)| w + 2 * e)
        .collect()
}

/// Halves a doubled weight drop into a monomial exponent vector, insisting
/// that every entry is a nonnegative even doubled value.  A violation is a
/// theorem-level bug, not bad input.
fn exponents_from_doubled_drop(
    upper: &[i64],
    lower: &[i64],
    what: &dyn Fn() -> String,
) -> Result<Vec<i64>> {
    upper
        .iter()
        .zip(lower)
        .map(|(u, l)| {
            let d = u - l;
            if d < 0 || d % 2 != 0 {
                Err(Error::Internal(format!(
                    "{}: weight drop {d} is not a nonnegative even doubled value \
                     (upper {upper:?}, lower {lower:?})",
                    what()
                )))
            } else {
                Ok(d / 2)
            }
        })
        .collect()
}

/// Product of two generators: `None` when the idempotents do not match or
/// the crossing defect is positive; otherwise the composite together with
/// its correction monomial.
pub fn generator_product<G: StrandGenerator>(f: &G, g: &G) -> Result<Option<(G, Monomial)>> {
    let Some(h) = f.then(g) else {
        return Ok(None);
    };
    let cf = f.crossing_count();
    let cg = g.crossing_count();
    let ch = h.crossing_count();
    if ch > cf + cg {
        return Err(Error::Internal(format!(
            "crossing count is not subadditive: {f} ({cf}) then {g} ({cg}) gave {h} ({ch})"
        )));
    }
    if ch < cf + cg {
        return Ok(None);
    }
    let wf = f.weights_doubled();
    let wg = g.weights_doubled();
    let wh = h.weights_doubled();
    let sum: Vec<i64> = wf.iter().zip(&wg).map(|(a, b)| a + b).collect();
    let exps = exponents_from_doubled_drop(&sum, &wh, &|| format!("product of {f} and {g}"))?;
    Ok(Some((h, Monomial::new(exps)?)))
}

/// Differential of a single generator: one candidate term per crossing
/// class, kept when the resolution drops the crossing count by exactly one.
pub fn generator_differential<G: StrandGenerator>(f: &G) -> Result<Vec<(G, Monomial)>> {
    let cf = f.crossing_count();
    let wf = f.weights_doubled();
    let mut out = Vec::new();
    for rep in f.crossing_reps() {
        let res = f.resolve_rep(rep)?;
        let cres = res.crossing_count();
        if cres + 1 > cf {
            return Err(Error::Internal(format!(
                "resolving <{}, {}> of {f} did not decrease the crossing count \
                 ({cf} -> {cres})",
                rep.0, rep.1
            )));
        }
        if cres + 1 < cf {
            continue;
        }
        let wres = res.weights_doubled();
        let exps = exponents_from_doubled_drop(&wf, &wres, &|| {
            format!("differential term <{}, {}> of {f}", rep.0, rep.1)
        })?;
        out.push((res, Monomial::new(exps)?));
    }
    Ok(out)
}

/// A finite formal sum of generators with `F_2[v_1, ..., v_m]` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element<G: StrandGenerator> {
    terms: BTreeMap<G, Polynomial>,
}

impl<G: StrandGenerator> Element<G> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    /// The generator with coefficient `1`.
    pub fn generator(g: G) -> Self {
        let vars = g.m_value() as usize;
        Element::term(g, Polynomial::one(vars))
    }

    pub fn term(g: G, poly: Polynomial) -> Self {
        let mut out = Element::zero();
        out.add_term(g, poly);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&G, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &G) -> Option<&Polynomial> {
        self.terms.get(g)
    }

    /// Adds `poly * g`, cancelling mod 2.
    pub fn add_term(&mut self, g: G, poly: Polynomial) {
        if poly.is_zero() {
            return;
        }
        let entry = self.terms.entry(g);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(poly);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&poly);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, poly) in &other.terms {
            out.add_term(g.clone(), poly.clone());
        }
        out
    }

    /// Multiplies every coefficient by `poly`.
    pub fn scale(&self, poly: &Polynomial) -> Self {
        let mut out = Element::zero();
        for (g, p) in &self.terms {
            out.add_term(g.clone(), p.mul(poly));
        }
        out
    }

    /// The differential, extended linearly over the coefficient ring.
    pub fn diff(&self) -> Result<Self> {
        let mut out = Element::zero();
        for (g, poly) in &self.terms {
            for (res, mono) in generator_differential(g)? {
                out.add_term(res, poly.mul(&mono.into()));
            }
        }
        Ok(out)
    }

    /// The product (self acts first), extended bilinearly.
    pub fn mu2(&self, other: &Self) -> Result<Self> {
        let mut out = Element::zero();
        for (f, pf) in &self.terms {
            for (g, pg) in &other.terms {
                if let Some((h, mono)) = generator_product(f, g)? {
                    out.add_term(h, pf.mul(pg).mul(&mono.into()));
                }
            }
        }
        Ok(out)
    }
}

impl<G: StrandGenerator> fmt::Display for Element<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (t, (g, poly)) in self.terms.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            if poly.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "({poly})*{g}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Context;
    use crate::perm::LiftedPermutation;

    fn gen(m: i64, domain: &[i64], values: &[i64]) -> LiftedPermutation {
        let ctx = Context::new(m, domain.len()).unwrap();
        LiftedPermutation::new(ctx, domain.to_vec(), values.to_vec()).unwrap()
    }

    fn mono(exps: &[i64]) -> Monomial {
        Monomial::new(exps.to_vec()).unwrap()
    }

    #[test]
    fn differential_of_bigon_generator() {
        let f = gen(3, &[2], &[-1]);
        let d = Element::generator(f).diff().unwrap();
        let expected = Element::term(gen(3, &[2], &[2]), mono(&[1, 1, 0]).into());
        assert_eq!(d, expected);
    }

    #[test]
    fn differential_two_terms() {
        let f = gen(2, &[1], &[-1]);
        let d = Element::generator(f).diff().unwrap();
        let mut expected = Element::zero();
        expected.add_term(gen(2, &[1], &[2]), mono(&[1, 0]).into());
        expected.add_term(gen(2, &[1], &[0]), mono(&[0, 1]).into());
        assert_eq!(d, expected);
    }

    #[test]
    fn differential_of_idempotent_is_zero() {
        let e = gen(3, &[2], &[2]);
        assert!(Element::generator(e).diff().unwrap().is_zero());
    }

    #[test]
    fn product_unit_law() {
        let e = gen(3, &[2], &[2]);
        let f = gen(3, &[2], &[-1]);
        let ef = Element::generator(e.clone())
            .mu2(&Element::generator(f.clone()))
            .unwrap();
        assert_eq!(ef, Element::generator(f.clone()));
        // f's image idempotent is {2}, so the same idempotent is a right unit.
        let fe = Element::generator(f.clone())
            .mu2(&Element::generator(e))
            .unwrap();
        assert_eq!(fe, Element::generator(f));
    }

    #[test]
    fn product_surviving_composition() {
        let f = gen(3, &[2], &[1]);
        let g = gen(3, &[1], &[0]);
        assert_eq!(f.maslov(), 0);
        assert_eq!(g.maslov(), 1);
        let p = Element::generator(f).mu2(&Element::generator(g)).unwrap();
        assert_eq!(p, Element::generator(gen(3, &[2], &[0])));
    }

    #[test]
    fn product_idempotent_mismatch_is_zero() {
        let f = gen(3, &[2], &[-1]); // image idempotent {2}
        let g = gen(3, &[1], &[0]); // domain idempotent {1}
        let p = Element::generator(f).mu2(&Element::generator(g)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn grading_and_weight_bookkeeping() {
        // Every differential term drops the grading by one and preserves the
        // doubled weight of the term.
        let f = gen(2, &[1], &[-1]);
        let wf = f.weights_doubled();
        let mf = f.maslov();
        let d = Element::generator(f).diff().unwrap();
        assert_eq!(d.num_terms(), 2);
        for (g, poly) in d.terms() {
            assert_eq!(g.maslov(), mf - 1);
            for mono in poly.monomials() {
                assert_eq!(term_weight_doubled(g, mono), wf);
            }
        }
    }

    #[test]
    fn element_arithmetic() {
        let f = Element::generator(gen(3, &[2], &[-1]));
        let sum = f.add(&f);
        assert!(sum.is_zero());
        let scaled = f.scale(&mono(&[0, 0, 1]).into());
        assert_eq!(scaled.num_terms(), 1);
        let (_, poly) = scaled.terms().next().unwrap();
        assert_eq!(poly.to_string(), "v3");
    }

    #[test]
    fn idempotent_enumeration() {
        let idems: Vec<LiftedPermutation> = idempotents(4, 2).unwrap();
        assert_eq!(idems.len(), 3); // {1,2}, {1,3}, {2,3}
        for e in &idems {
            assert!(e.is_idempotent());
            assert_eq!(e.maslov(), 0);
            assert_eq!(e.weights_doubled(), vec![0, 0, 0, 0]);
        }
    }

    #[test]
    fn display_element() {
        let mut e = Element::zero();
        e.add_term(gen(3, &[2], &[2]), mono(&[1, 1, 0]).into());
        assert_eq!(e.to_string(), "(v1*v2)*{2->2}");
        assert_eq!(Element::<LiftedPermutation>::zero().to_string(), "0");
    }
}
