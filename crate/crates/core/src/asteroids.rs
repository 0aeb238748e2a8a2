//! The cyclic generator family: partial permutations of the integer line
//! equivariant under translation by `m` only (no reflections).
//!
//! A generator is determined by the images of one representative per residue
//! class in its domain; it extends by `f(x + m) = f(x) + m`.  Everything
//! else (weights, crossings, differential, product) mirrors the dihedral
//! family with the simpler symmetry group.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::algebra::StrandGenerator;
use crate::error::{Error, Result};

/// Residue of `x` normalized into `{1, ..., m}`.
pub fn residue(m: i64, x: i64) -> i64 {
    (x - 1).rem_euclid(m) + 1
}

/// A translation-equivariant partial permutation: `domain[t] -> values[t]`
/// on representatives chosen in `{1, ..., m}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicLiftedPermutation {
    m: i64,
    domain: Vec<i64>,
    values: Vec<i64>,
}

impl CyclicLiftedPermutation {
    /// Builds a generator, requiring `m >= 1`, a strictly increasing domain
    /// inside `{1, ..., m}`, and values with pairwise distinct residues.
    pub fn new(m: i64, domain: Vec<i64>, values: Vec<i64>) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidInput(format!(
                "width parameter m must be at least 1, got {m}"
            )));
        }
        if domain.is_empty() || domain.len() as i64 > m {
            return Err(Error::InvalidInput(format!(
                "strand count must satisfy 1 <= k <= m = {m}, got {}",
                domain.len()
            )));
        }
        if values.len() != domain.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} values, got {}",
                domain.len(),
                values.len()
            )));
        }
        for pair in domain.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::InvalidInput(format!(
                    "domain representatives must be strictly increasing, got {domain:?}"
                )));
            }
        }
        for &x in &domain {
            if x < 1 || x > m {
                return Err(Error::InvalidInput(format!(
                    "domain representative {x} lies outside 1..={m}"
                )));
            }
        }
        let residues: BTreeSet<i64> = values.iter().map(|&v| residue(m, v)).collect();
        if residues.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "image residues must be pairwise distinct, got values {values:?}"
            )));
        }
        Ok(CyclicLiftedPermutation { m, domain, values })
    }

    pub fn idempotent(m: i64, subset: Vec<i64>) -> Result<Self> {
        let values = subset.clone();
        CyclicLiftedPermutation::new(m, subset, values)
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn domain(&self) -> &[i64] {
        &self.domain
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn in_closure(&self, x: i64) -> bool {
        self.domain.binary_search(&residue(self.m, x)).is_ok()
    }

    pub fn evaluate(&self, x: i64) -> Result<i64> {
        let r = residue(self.m, x);
        let idx = self
            .domain
            .binary_search(&r)
            .map_err(|_| Error::OutsideDomain { x })?;
        Ok(self.values[idx] + (x - r))
    }

    pub fn max_displacement(&self) -> i64 {
        self.domain
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| (v - x).abs())
            .max()
            .unwrap_or(0)
    }

    /// Doubled weight vector: slot `a` counts strand crossings of the level
    /// `a - 1/2`, each worth one half.
    pub fn weights_doubled(&self) -> Vec<i64> {
        let d = self.max_displacement();
        let mut out = Vec::with_capacity(self.m as usize);
        for a in 1..=self.m {
            let level2 = 2 * a - 1;
            let lo = a - 1 - (d + 1);
            let hi = a + (d + 1);
            let mut count = 0i64;
            for b in lo..=hi {
                if !self.in_closure(b) {
                    continue;
                }
                let fb = self.evaluate(b).expect("closure point");
                if (2 * b < level2 && level2 < 2 * fb) || (2 * fb < level2 && level2 < 2 * b) {
                    count += 1;
                }
            }
            out.push(count);
        }
        out
    }

    /// Canonical crossing representatives: inversions `(i, j)` with `i`
    /// normalized into `{1, ..., m}` by simultaneous translation.
    pub fn crossings(&self) -> BTreeSet<(i64, i64)> {
        let mut out = BTreeSet::new();
        let d = self.max_displacement();
        if d == 0 {
            return out;
        }
        for i in 1..=self.m {
            if !self.in_closure(i) {
                continue;
            }
            let fi = self.evaluate(i).expect("closure point");
            for j in i + 1..=i + 2 * d {
                if !self.in_closure(j) {
                    continue;
                }
                let fj = self.evaluate(j).expect("closure point");
                if fi > fj {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    /// Normalizes `(i, j)` by translation and checks that it indexes a
    /// crossing class.
    pub fn crossing_class(&self, i: i64, j: i64) -> Result<(i64, i64)> {
        if !self.in_closure(i) {
            return Err(Error::OutsideDomain { x: i });
        }
        if !self.in_closure(j) {
            return Err(Error::OutsideDomain { x: j });
        }
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let t = (lo - 1).div_euclid(self.m);
        let rep = (lo - t * self.m, hi - t * self.m);
        if self.crossings().contains(&rep) {
            Ok(rep)
        } else {
            Err(Error::NotACrossing { i, j })
        }
    }

    /// Resolves one crossing class: the two strands trade endpoints,
    /// translation-equivariantly.
    pub fn resolve(&self, rep: (i64, i64)) -> Result<CyclicLiftedPermutation> {
        let (i, j) = rep;
        let ri = residue(self.m, i);
        let rj = residue(self.m, j);
        let fi = self.evaluate(i)?;
        let fj = self.evaluate(j)?;
        let mut values = Vec::with_capacity(self.values.len());
        for (&x, &v) in self.domain.iter().zip(&self.values) {
            if x == ri {
                values.push(fj + (x - i));
            } else if x == rj {
                values.push(fi + (x - j));
            } else {
                values.push(v);
            }
        }
        CyclicLiftedPermutation::new(self.m, self.domain.clone(), values).map_err(|e| {
            Error::Internal(format!(
                "resolving crossing <{i}, {j}> of {self} produced an invalid generator: {e}"
            ))
        })
    }

    /// Composite `g . f` (this generator acts first).
    pub fn then(&self, g: &CyclicLiftedPermutation) -> Option<CyclicLiftedPermutation> {
        if self.m != g.m || self.domain.len() != g.domain.len() || self.image_residues() != g.domain
        {
            return None;
        }
        let values = self
            .values
            .iter()
            .map(|&v| g.evaluate(v).expect("image lies in the closure of g"))
            .collect();
        Some(
            CyclicLiftedPermutation::new(self.m, self.domain.clone(), values)
                .expect("composite of injective extensions is injective"),
        )
    }

    fn image_residues(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.values.iter().map(|&v| residue(self.m, v)).collect();
        out.sort_unstable();
        out
    }

    pub fn enumerate(m: i64, k: usize, max_disp: i64) -> Result<Vec<CyclicLiftedPermutation>> {
        if max_disp < 0 {
            return Err(Error::InvalidInput(format!(
                "max displacement must be nonnegative, got {max_disp}"
            )));
        }
        if m < 1 || k == 0 || k as i64 > m {
            return Err(Error::InvalidInput(format!(
                "parameters must satisfy m >= 1 and 1 <= k <= m, got m={m}, k={k}"
            )));
        }
        let mut out = Vec::new();
        for domain in (1..=m).combinations(k) {
            let ranges = domain
                .iter()
                .map(|&x| x - max_disp..=x + max_disp)
                .collect::<Vec<_>>();
            for values in ranges.into_iter().multi_cartesian_product() {
                let residues: BTreeSet<i64> = values.iter().map(|&v| residue(m, v)).collect();
                if residues.len() != values.len() {
                    continue;
                }
                out.push(
                    CyclicLiftedPermutation::new(m, domain.clone(), values)
                        .expect("enumerated data is valid by construction"),
                );
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CyclicLiftedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (t, (x, v)) in self.domain.iter().zip(&self.values).enumerate() {
            if t > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}->{v}")?;
        }
        write!(f, "}}")
    }
}

impl StrandGenerator for CyclicLiftedPermutation {
    fn algebra_name() -> &'static str {
        "asteroids"
    }

    fn m_value(&self) -> i64 {
        self.m
    }

    fn strand_count(&self) -> usize {
        self.domain.len()
    }

    fn domain_reps(&self) -> &[i64] {
        &self.domain
    }

    fn image_values(&self) -> &[i64] {
        &self.values
    }

    fn from_parts(m: i64, k: usize, domain: Vec<i64>, values: Vec<i64>) -> Result<Self> {
        if domain.len() != k {
            return Err(Error::InvalidInput(format!(
                "domain must list exactly k = {k} representatives, got {}",
                domain.len()
            )));
        }
        CyclicLiftedPermutation::new(m, domain, values)
    }

    fn identity_on(m: i64, labels: Vec<i64>) -> Result<Self> {
        CyclicLiftedPermutation::idempotent(m, labels)
    }

    fn idempotent_label_range(m: i64) -> std::ops::RangeInclusive<i64> {
        1..=m
    }

    fn enumerate_bounded(m: i64, k: usize, max_disp: i64) -> Result<Vec<Self>> {
        CyclicLiftedPermutation::enumerate(m, k, max_disp)
    }

    fn domain_idem(&self) -> Vec<i64> {
        self.domain.clone()
    }

    fn image_idem(&self) -> Vec<i64> {
        self.image_residues()
    }

    fn then(&self, g: &Self) -> Option<Self> {
        self.then(g)
    }

    fn crossing_reps(&self) -> Vec<(i64, i64)> {
        self.crossings().into_iter().collect()
    }

    fn resolve_rep(&self, rep: (i64, i64)) -> Result<Self> {
        self.resolve(rep)
    }

    fn weights_doubled(&self) -> Vec<i64> {
        self.weights_doubled()
    }

    fn max_displacement(&self) -> i64 {
        self.max_displacement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Element;
    use crate::poly::Monomial;

    fn gen(m: i64, domain: &[i64], values: &[i64]) -> CyclicLiftedPermutation {
        CyclicLiftedPermutation::new(m, domain.to_vec(), values.to_vec()).unwrap()
    }

    fn mono(exps: &[i64]) -> Monomial {
        Monomial::new(exps.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(CyclicLiftedPermutation::new(0, vec![1], vec![1]).is_err());
        assert!(CyclicLiftedPermutation::new(3, vec![1, 2], vec![6, 1]).is_ok());
        // Residues collide: 4 and 1 are both 1 mod 3.
        assert!(CyclicLiftedPermutation::new(3, vec![1, 2], vec![4, 1]).is_err());
        // k = m is allowed here.
        assert!(CyclicLiftedPermutation::new(2, vec![1, 2], vec![2, 3]).is_ok());
        assert!(CyclicLiftedPermutation::new(3, vec![1, 4], vec![1, 4]).is_err());
    }

    #[test]
    fn evaluate_extends_by_translation() {
        let f = gen(3, &[1, 2], &[6, 1]);
        assert_eq!(f.evaluate(1).unwrap(), 6);
        assert_eq!(f.evaluate(2).unwrap(), 1);
        assert_eq!(f.evaluate(4).unwrap(), 9);
        assert_eq!(f.evaluate(-2).unwrap(), 3);
        assert_eq!(f.evaluate(5).unwrap(), 4);
        assert!(f.evaluate(3).is_err());
    }

    #[test]
    fn sample_state_crossings_and_weights() {
        let f = gen(3, &[1, 2], &[6, 1]);
        let crossings: Vec<(i64, i64)> = f.crossings().into_iter().collect();
        assert_eq!(crossings, vec![(1, 2), (1, 5)]);
        assert_eq!(f.weights_doubled(), vec![1, 3, 2]);
    }

    #[test]
    fn single_strand_weights() {
        let f = gen(3, &[1], &[4]);
        assert_eq!(f.weights_doubled(), vec![1, 1, 1]);
        let id = gen(3, &[1], &[1]);
        assert_eq!(id.weights_doubled(), vec![0, 0, 0]);
        assert!(gen(1, &[1], &[1]).crossings().is_empty());
    }

    #[test]
    fn resolve_examples() {
        let f = gen(3, &[1, 2], &[6, 1]);
        assert_eq!(f.resolve((1, 2)).unwrap(), gen(3, &[1, 2], &[1, 6]));
        assert_eq!(f.resolve((1, 5)).unwrap(), gen(3, &[1, 2], &[4, 3]));
    }

    #[test]
    fn differential_both_terms_carry_v2() {
        let f = gen(3, &[1, 2], &[6, 1]);
        let d = Element::generator(f).diff().unwrap();
        let mut expected = Element::zero();
        expected.add_term(gen(3, &[1, 2], &[1, 6]), mono(&[0, 1, 0]).into());
        expected.add_term(gen(3, &[1, 2], &[4, 3]), mono(&[0, 1, 0]).into());
        assert_eq!(d, expected);
    }

    #[test]
    fn unit_law_and_composition() {
        let f = gen(3, &[1, 2], &[6, 1]);
        let e = gen(3, &[1, 2], &[1, 2]);
        let p = Element::generator(e)
            .mu2(&Element::generator(f.clone()))
            .unwrap();
        assert_eq!(p, Element::generator(f));
    }

    #[test]
    fn one_residue_algebra_is_polynomial() {
        // With m = 1 there is a single residue class; opposite unit shifts
        // multiply to the variable times the idempotent.
        let up = gen(1, &[1], &[2]);
        let down = gen(1, &[1], &[0]);
        let p = Element::generator(up)
            .mu2(&Element::generator(down))
            .unwrap();
        let expected = Element::term(gen(1, &[1], &[1]), mono(&[1]).into());
        assert_eq!(p, expected);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(
            CyclicLiftedPermutation::enumerate(3, 2, 0).unwrap().len(),
            3
        );
        assert_eq!(
            CyclicLiftedPermutation::enumerate(1, 1, 3).unwrap().len(),
            7
        );
        let gens = CyclicLiftedPermutation::enumerate(3, 1, 2).unwrap();
        for f in &gens {
            assert!(f.max_displacement() <= 2);
        }
    }

    #[test]
    fn crossing_class_normalization() {
        let f = gen(3, &[1, 2], &[6, 1]);
        assert_eq!(f.crossing_class(4, 5).unwrap(), (1, 2));
        assert_eq!(f.crossing_class(8, 4).unwrap(), (1, 5));
        assert!(f.crossing_class(2, 4).is_err());
    }
}
