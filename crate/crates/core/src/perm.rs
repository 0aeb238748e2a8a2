//! Equivariant partial permutations of the integer line: the generators of
//! the pong algebra.
//!
//! A generator is determined by where it sends one representative of each of
//! `k` orbits chosen from the labels `{1, ..., m-1}`; it extends to the full
//! orbit closure by equivariance.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::group::{canonical_pair, orbit_map, q1, Context};

/// A crossing class of a generator, stored by its canonical representative
/// pair (minimum coordinate in the window `{1, ..., p}`, lexicographically
/// least).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub i: i64,
    pub j: i64,
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.i, self.j)
    }
}

/// An equivariant partial permutation: `domain[t] -> values[t]` on the
/// chosen orbit representatives, extended equivariantly elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiftedPermutation {
    ctx: Context,
    domain: Vec<i64>,
    values: Vec<i64>,
}

impl LiftedPermutation {
    /// Builds a generator from representative points and their images.
    ///
    /// `domain` must be strictly increasing, contained in `{1, ..., m-1}`,
    /// of length `k`; the image labels `q1(values)` must be pairwise
    /// distinct so that the extension is injective.
    pub fn new(ctx: Context, domain: Vec<i64>, values: Vec<i64>) -> Result<Self> {
        if domain.len() != ctx.k() {
            return Err(Error::InvalidInput(format!(
                "domain must list exactly k = {} orbit representatives, got {}",
                ctx.k(),
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
            if x < 1 || x > ctx.m() - 1 {
                return Err(Error::InvalidInput(format!(
                    "domain representative {x} lies outside 1..={}",
                    ctx.m() - 1
                )));
            }
        }
        let labels: BTreeSet<i64> = values.iter().map(|&v| q1(&ctx, v)).collect();
        if labels.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "image labels must be pairwise distinct, got values {values:?}"
            )));
        }
        Ok(LiftedPermutation {
            ctx,
            domain,
            values,
        })
    }

    /// The idempotent generator fixing each representative of `subset`.
    pub fn idempotent(ctx: Context, subset: Vec<i64>) -> Result<Self> {
        let values = subset.clone();
        LiftedPermutation::new(ctx, subset, values)
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn domain(&self) -> &[i64] {
        &self.domain
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Sorted labels of the image orbits.
    pub fn image_idem(&self) -> Vec<i64> {
        let mut labels: Vec<i64> = self.values.iter().map(|&v| q1(&self.ctx, v)).collect();
        labels.sort_unstable();
        labels
    }

    /// Whether `x` lies on one of the domain orbits.
    pub fn in_closure(&self, x: i64) -> bool {
        self.domain.binary_search(&q1(&self.ctx, x)).is_ok()
    }

    /// Applies the permutation to any point of the orbit closure.
    pub fn evaluate(&self, x: i64) -> Result<i64> {
        let r = q1(&self.ctx, x);
        let idx = self
            .domain
            .binary_search(&r)
            .map_err(|_| Error::OutsideDomain { x })?;
        let v = self.values[idx];
        if (x - r).rem_euclid(self.ctx.period()) == 0 {
            Ok(v + (x - r))
        } else {
            Ok(x + r - v)
        }
    }

    /// Largest distance any strand travels: `max |f(x) - x|` over the
    /// closure, which is attained on the representatives.
    pub fn max_displacement(&self) -> i64 {
        self.domain
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| (v - x).abs())
            .max()
            .unwrap_or(0)
    }

    /// Doubled weight vector `(2*w_1, ..., 2*w_m)`.
    ///
    /// `2*w_j` counts the strands of the closure crossing the horizontal
    /// level `j - 1/2`; each crossing carries weight one half.  Only strands
    /// starting within `max_displacement + 1` of the level can cross it.
    pub fn weights_doubled(&self) -> Vec<i64> {
        let d = self.max_displacement();
        let m = self.ctx.m();
        let mut out = Vec::with_capacity(m as usize);
        for j in 1..=m {
            let level2 = 2 * j - 1; // doubled half-integer level
            let lo = j - 1 - (d + 1);
            let hi = j + (d + 1);
            let mut count = 0i64;
            for a in lo..=hi {
                if !self.in_closure(a) {
                    continue;
                }
                let fa = self.evaluate(a).expect("closure point");
                if (2 * a < level2 && level2 < 2 * fa) || (2 * fa < level2 && level2 < 2 * a) {
                    count += 1;
                }
            }
            out.push(count);
        }
        out
    }

    /// All crossing classes, keyed by canonical representative pairs.
    ///
    /// A class is witnessed by some inversion `(i, j)` with `i` in the
    /// window `{1, ..., p}`; the partner satisfies `j - i < 2 *
    /// max_displacement` because both strands must out-travel each other.
    pub fn crossings(&self) -> BTreeSet<Crossing> {
        let mut out = BTreeSet::new();
        let d = self.max_displacement();
        if d == 0 {
            return out;
        }
        for i in 1..=self.ctx.period() {
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
                    let (a, b) = canonical_pair(&self.ctx, i, j);
                    debug_assert!(
                        self.evaluate(a).unwrap() > self.evaluate(b).unwrap(),
                        "canonical representative of a crossing is an inversion"
                    );
                    out.insert(Crossing { i: a, j: b });
                }
            }
        }
        out
    }

    /// Number of crossing classes.
    pub fn crossing_number(&self) -> usize {
        self.crossings().len()
    }

    /// Canonicalizes `(i, j)` and checks that it indexes a crossing class of
    /// this generator.
    pub fn crossing_class(&self, i: i64, j: i64) -> Result<Crossing> {
        if !self.in_closure(i) {
            return Err(Error::OutsideDomain { x: i });
        }
        if !self.in_closure(j) {
            return Err(Error::OutsideDomain { x: j });
        }
        let (a, b) = canonical_pair(&self.ctx, i, j);
        let c = Crossing { i: a, j: b };
        if self.crossings().contains(&c) {
            Ok(c)
        } else {
            Err(Error::NotACrossing { i, j })
        }
    }

    /// Resolves (smooths) one crossing class: the two strands trade their
    /// endpoints, equivariantly across the whole closure.
    pub fn resolve(&self, c: &Crossing) -> Result<LiftedPermutation> {
        let ctx = self.ctx;
        let li = q1(&ctx, c.i);
        let lj = q1(&ctx, c.j);
        let fi = self.evaluate(c.i)?;
        let fj = self.evaluate(c.j)?;
        let mut values = Vec::with_capacity(self.values.len());
        for (&x, &v) in self.domain.iter().zip(&self.values) {
            if x == li {
                let g = orbit_map(&ctx, c.i, x).expect("same orbit by label equality");
                values.push(g.apply(&ctx, fj));
            } else if x == lj {
                let g = orbit_map(&ctx, c.j, x).expect("same orbit by label equality");
                values.push(g.apply(&ctx, fi));
            } else {
                values.push(v);
            }
        }
        LiftedPermutation::new(ctx, self.domain.clone(), values).map_err(|e| {
            Error::Internal(format!(
                "resolving crossing {c} of {self} produced an invalid generator: {e}"
            ))
        })
    }

    /// Composite `g . f` (this generator acts first), defined when the image
    /// orbits of `self` are exactly the domain orbits of `g`.
    pub fn then(&self, g: &LiftedPermutation) -> Option<LiftedPermutation> {
        if self.ctx != g.ctx || self.image_idem() != g.domain {
            return None;
        }
        let values = self
            .values
            .iter()
            .map(|&v| g.evaluate(v).expect("image lies in the closure of g"))
            .collect();
        Some(
            LiftedPermutation::new(self.ctx, self.domain.clone(), values)
                .expect("composite of injective extensions is injective"),
        )
    }

    /// All generators whose strands travel at most `max_disp`, in
    /// lexicographic order of `(domain, values)`.
    pub fn enumerate(ctx: Context, max_disp: i64) -> Result<Vec<LiftedPermutation>> {
        if max_disp < 0 {
            return Err(Error::InvalidInput(format!(
                "max displacement must be nonnegative, got {max_disp}"
            )));
        }
        let mut out = Vec::new();
        for domain in (1..=ctx.m() - 1).combinations(ctx.k()) {
            let ranges = domain
                .iter()
                .map(|&x| x - max_disp..=x + max_disp)
                .collect::<Vec<_>>();
            for values in ranges.into_iter().multi_cartesian_product() {
                let labels: BTreeSet<i64> = values.iter().map(|&v| q1(&ctx, v)).collect();
                if labels.len() != values.len() {
                    continue;
                }
                out.push(
                    LiftedPermutation::new(ctx, domain.clone(), values)
                        .expect("enumerated data is valid by construction"),
                );
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LiftedPermutation {
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

impl crate::algebra::StrandGenerator for LiftedPermutation {
    fn algebra_name() -> &'static str {
        "pong"
    }

    fn m_value(&self) -> i64 {
        self.ctx.m()
    }

    fn strand_count(&self) -> usize {
        self.ctx.k()
    }

    fn domain_reps(&self) -> &[i64] {
        &self.domain
    }

    fn image_values(&self) -> &[i64] {
        &self.values
    }

    fn from_parts(m: i64, k: usize, domain: Vec<i64>, values: Vec<i64>) -> Result<Self> {
        let ctx = Context::new(m, k)?;
        LiftedPermutation::new(ctx, domain, values)
    }

    fn identity_on(m: i64, labels: Vec<i64>) -> Result<Self> {
        let ctx = Context::new(m, labels.len())?;
        LiftedPermutation::idempotent(ctx, labels)
    }

    fn idempotent_label_range(m: i64) -> std::ops::RangeInclusive<i64> {
        1..=m - 1
    }

    fn enumerate_bounded(m: i64, k: usize, max_disp: i64) -> Result<Vec<Self>> {
        let ctx = Context::new(m, k)?;
        LiftedPermutation::enumerate(ctx, max_disp)
    }

    fn domain_idem(&self) -> Vec<i64> {
        self.domain.clone()
    }

    fn image_idem(&self) -> Vec<i64> {
        self.image_idem()
    }

    fn then(&self, g: &Self) -> Option<Self> {
        self.then(g)
    }

    fn crossing_reps(&self) -> Vec<(i64, i64)> {
        self.crossings().into_iter().map(|c| (c.i, c.j)).collect()
    }

    fn resolve_rep(&self, rep: (i64, i64)) -> Result<Self> {
        let (i, j) = canonical_pair(&self.ctx, rep.0, rep.1);
        self.resolve(&Crossing { i, j })
    }

    fn weights_doubled(&self) -> Vec<i64> {
        self.weights_doubled()
    }

    fn max_displacement(&self) -> i64 {
        self.max_displacement()
    }
}
