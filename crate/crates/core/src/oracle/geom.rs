//! Exact rational planar geometry: points, convex polygons, half-plane
//! clipping, and point location.  No floating point anywhere.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

pub type Rat = Rational64;

/// Shorthand for an exact rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Formats a rational as `p/q` (or just `p` when integral).
pub fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pt {
    pub x: Rat,
    pub y: Rat,
}

impl Pt {
    pub fn new(x: Rat, y: Rat) -> Self {
        Pt { x, y }
    }

    pub fn of_ints(x: i64, y: i64) -> Self {
        Pt::new(rat_int(x), rat_int(y))
    }
}

/// Cross product of `(b - a)` and `(c - a)`: positive when `a, b, c` turn
/// counterclockwise.
fn orient(a: &Pt, b: &Pt, c: &Pt) -> Rat {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Where a point sits relative to a convex polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A closed half-plane `a*x + b*y <= c`.
#[derive(Clone, Copy, Debug)]
pub struct HalfPlane {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl HalfPlane {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Self {
        HalfPlane { a, b, c }
    }

    /// Signed slack: negative strictly inside, zero on the line.
    fn side(&self, p: &Pt) -> Rat {
        self.a * p.x + self.b * p.y - self.c
    }

    /// The complementary half-plane `a*x + b*y >= c`.
    pub fn flipped(&self) -> HalfPlane {
        HalfPlane {
            a: -self.a,
            b: -self.b,
            c: -self.c,
        }
    }
}

/// A convex polygon with positive area, vertices in counterclockwise order,
/// no repeated and no collinear-consecutive vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    verts: Vec<Pt>,
}

impl ConvexPolygon {
    /// Normalizes a vertex loop; returns `None` when the region is
    /// degenerate (fewer than three corners or zero area).
    pub fn new(verts: Vec<Pt>) -> Option<Self> {
        // Drop consecutive duplicates (cyclically).
        let mut cleaned: Vec<Pt> = Vec::with_capacity(verts.len());
        for v in verts {
            if cleaned.last() != Some(&v) {
                cleaned.push(v);
            }
        }
        while cleaned.len() > 1 && cleaned.first() == cleaned.last() {
            cleaned.pop();
        }
        // Drop vertices that are collinear with their neighbours; repeat
        // until stable since removals create new adjacencies.
        loop {
            let n = cleaned.len();
            if n < 3 {
                return None;
            }
            let mut removed = false;
            let mut kept: Vec<Pt> = Vec::with_capacity(n);
            for i in 0..n {
                let prev = &cleaned[(i + n - 1) % n];
                let next = &cleaned[(i + 1) % n];
                if orient(prev, &cleaned[i], next).is_zero() {
                    removed = true;
                } else {
                    kept.push(cleaned[i]);
                }
            }
            cleaned = kept;
            if !removed {
                break;
            }
        }
        if cleaned.len() < 3 {
            return None;
        }
        let mut poly = ConvexPolygon { verts: cleaned };
        if poly.area_doubled().is_negative() {
            poly.verts.reverse();
        }
        if poly.area_doubled().is_zero() {
            return None;
        }
        debug_assert!(poly.is_convex_ccw());
        Some(poly)
    }

    pub fn triangle(a: Pt, b: Pt, c: Pt) -> Option<Self> {
        ConvexPolygon::new(vec![a, b, c])
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.verts
    }

    /// Number of corners (true direction changes).
    pub fn corner_count(&self) -> usize {
        self.verts.len()
    }

    pub fn area_doubled(&self) -> Rat {
        let mut sum = Rat::zero();
        let n = self.verts.len();
        for i in 0..n {
            let p = &self.verts[i];
            let q = &self.verts[(i + 1) % n];
            sum += p.x * q.y - q.x * p.y;
        }
        sum
    }

    fn is_convex_ccw(&self) -> bool {
        let n = self.verts.len();
        (0..n).all(|i| {
            orient(
                &self.verts[i],
                &self.verts[(i + 1) % n],
                &self.verts[(i + 2) % n],
            )
            .is_positive()
        })
    }

    /// Exact point location against the closed region.
    pub fn locate(&self, p: &Pt) -> Location {
        let n = self.verts.len();
        let mut on_edge = false;
        for i in 0..n {
            let a = &self.verts[i];
            let b = &self.verts[(i + 1) % n];
            let o = orient(a, b, p);
            if o.is_negative() {
                return Location::Outside;
            }
            if o.is_zero() {
                on_edge = true;
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Inside
        }
    }

    /// Intersection with a closed half-plane (Sutherland–Hodgman); `None`
    /// when the intersection has no area.
    pub fn clip(&self, h: &HalfPlane) -> Option<ConvexPolygon> {
        let n = self.verts.len();
        let mut out: Vec<Pt> = Vec::with_capacity(n + 2);
        for i in 0..n {
            let p = &self.verts[i];
            let q = &self.verts[(i + 1) % n];
            let sp = h.side(p);
            let sq = h.side(q);
            if sp <= Rat::zero() {
                out.push(*p);
            }
            if (sp.is_negative() && sq.is_positive()) || (sp.is_positive() && sq.is_negative()) {
                let t = sp / (sp - sq);
                out.push(Pt::new(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)));
            }
        }
        ConvexPolygon::new(out)
    }

    /// Splits along a line into the `<=` and `>=` parts (either may vanish).
    pub fn split(&self, h: &HalfPlane) -> (Option<ConvexPolygon>, Option<ConvexPolygon>) {
        (self.clip(h), self.clip(&h.flipped()))
    }

    /// Axis-aligned bounding box `(x_min, y_min, x_max, y_max)`.
    pub fn bbox(&self) -> (Rat, Rat, Rat, Rat) {
        let mut x_min = self.verts[0].x;
        let mut x_max = x_min;
        let mut y_min = self.verts[0].y;
        let mut y_max = y_min;
        for v in &self.verts[1..] {
            x_min = x_min.min(v.x);
            x_max = x_max.max(v.x);
            y_min = y_min.min(v.y);
            y_max = y_max.max(v.y);
        }
        (x_min, y_min, x_max, y_max)
    }

    /// Applies an affine map to every vertex.
    pub fn map(&self, f: impl Fn(&Pt) -> Pt) -> ConvexPolygon {
        ConvexPolygon::new(self.verts.iter().map(f).collect())
            .expect("affine images of convex polygons stay convex")
    }
}

/// Floor of a rational as an integer.
pub fn rat_floor(r: &Rat) -> i64 {
    r.floor().to_integer()
}

/// Ceiling of a rational as an integer.
pub fn rat_ceil(r: &Rat) -> i64 {
    r.ceil().to_integer()
}
