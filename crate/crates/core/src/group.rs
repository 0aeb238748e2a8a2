//! The infinite dihedral symmetry group acting on the integer line, together
//! with the quotient maps and canonical representatives used throughout the
//! pong algebra.
//!
//! For a width parameter `m >= 2` the period is `p = 2m - 2`.  The group is
//! generated by the translation `x -> x + p` and the reflection `x -> 1 - x`;
//! a general element is `x -> x + n*p` or `x -> 1 - x + n*p`.

use crate::error::{Error, Result};

/// Parameters of a pong algebra: the width `m` and the strand count `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    m: i64,
    k: usize,
}

impl Context {
    /// Creates a context, requiring `m >= 2` and `1 <= k <= m - 1`.
    pub fn new(m: i64, k: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput(format!(
                "width parameter m must be at least 2, got {m}"
            )));
        }
        if k == 0 || k as i64 > m - 1 {
            return Err(Error::InvalidInput(format!(
                "strand count k must satisfy 1 <= k <= m - 1 = {}, got {k}",
                m - 1
            )));
        }
        Ok(Context { m, k })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Translation period `p = 2m - 2`.
    pub fn period(&self) -> i64 {
        2 * self.m - 2
    }
}

/// An element of the symmetry group: `x -> x + shift*p` when `reflect` is
/// false, and `x -> 1 - x + shift*p` when it is true.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub reflect: bool,
    pub shift: i64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        reflect: false,
        shift: 0,
    };

    pub fn translation(shift: i64) -> Self {
        GroupElement {
            reflect: false,
            shift,
        }
    }

    pub fn reflection(shift: i64) -> Self {
        GroupElement {
            reflect: true,
            shift,
        }
    }

    /// Applies the element to a point of the line.
    pub fn apply(&self, ctx: &Context, x: i64) -> i64 {
        let base = if self.reflect { 1 - x } else { x };
        base + self.shift * ctx.period()
    }

    /// Function composition `self . other`: `other` acts first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            reflect: self.reflect ^ other.reflect,
            shift: self.shift
                + if self.reflect {
                    -other.shift
                } else {
                    other.shift
                },
        }
    }

    pub fn inverse(&self) -> GroupElement {
        if self.reflect {
            *self
        } else {
            GroupElement::translation(-self.shift)
        }
    }
}

/// Orbit label of an integer point, normalized into `{1, ..., m-1}`.
///
/// Two integers have the same label exactly when some group element maps one
/// to the other.
pub fn q1(ctx: &Context, x: i64) -> i64 {
    let p = ctx.period();
    let mut r = x.rem_euclid(p);
    if r == 0 {
        r = p;
    }
    if r < ctx.m() {
        r
    } else {
        2 * ctx.m() - 1 - r
    }
}

/// Orbit label of a half-integer point, normalized into `{1, ..., m}`.
///
/// Half-integers are passed doubled, so the argument must be odd.  These
/// labels index the formal variables `v_1, ..., v_m` of the algebra.
pub fn q2(ctx: &Context, doubled_half: i64) -> i64 {
    debug_assert_eq!(
        doubled_half.rem_euclid(2),
        1,
        "q2 expects a doubled half-integer (odd), got {doubled_half}"
    );
    let p = ctx.period();
    let j = (doubled_half + 1) / 2;
    let mut r = j.rem_euclid(p);
    if r == 0 {
        r = p;
    }
    if r <= ctx.m() {
        r
    } else {
        2 * ctx.m() - r
    }
}

/// The unique group element sending `from` to `to`, if the two points lie on
/// the same orbit; `None` otherwise.
///
/// At most one of the translation and reflection cases can hold because the
/// period is even.
pub fn orbit_map(ctx: &Context, from: i64, to: i64) -> Option<GroupElement> {
    let p = ctx.period();
    if (to - from).rem_euclid(p) == 0 {
        Some(GroupElement::translation((to - from) / p))
    } else if (to - 1 + from).rem_euclid(p) == 0 {
        Some(GroupElement::reflection((to - 1 + from) / p))
    } else {
        None
    }
}

/// The two points of the orbit of `x` that land in the window `{1, ..., p}`:
/// the translate of `x` and the translate of its reflection.
pub fn window_positions(ctx: &Context, x: i64) -> [i64; 2] {
    let p = ctx.period();
    let normalize = |v: i64| {
        let r = v.rem_euclid(p);
        if r == 0 {
            p
        } else {
            r
        }
    };
    [normalize(x), normalize(1 - x)]
}

/// Canonical representative of the unordered pair class of `(i, j)` under the
/// diagonal group action.
///
/// Among all images `(g(i), g(j))`, sorted ascending, whose minimum lies in
/// the window `{1, ..., p}`, this returns the lexicographically smallest.
/// Such an image always exists: translating the smaller point into the window
/// keeps it the minimum.
pub fn canonical_pair(ctx: &Context, i: i64, j: i64) -> (i64, i64) {
    let p = ctx.period();
    let mut best: Option<(i64, i64)> = None;
    for &(a, b) in &[(i, j), (j, i)] {
        for w in window_positions(ctx, a) {
            let Some(g) = orbit_map(ctx, a, w) else {
                continue;
            };
            let pa = g.apply(ctx, a);
            let pb = g.apply(ctx, b);
            let pair = (pa.min(pb), pa.max(pb));
            if pair.0 < 1 || pair.0 > p {
                continue;
            }
            if best.is_none_or(|cur| pair < cur) {
                best = Some(pair);
            }
        }
    }
    best.expect("a window representative always exists")
}
