//! Planar-diagram oracle for the pong algebra.
//!
//! A generator is drawn in the plane as the set of lattice points `(a, f(a))`
//! over its domain closure.  Differentials and products are then recomputed
//! by counting embedded regions of this picture — rectangles between two
//! marked corners, and right triangles bounded by vertical, horizontal, and
//! slanted lines — with exact rational arithmetic throughout.  None of the
//! counts here reuse the combinatorial rules from [`crate::algebra`], so the
//! two routes check each other.

pub mod geom;

use std::collections::HashSet;

use num_traits::Zero;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::group::{q2, window_positions, Context};
use crate::perm::{Crossing, LiftedPermutation};
use crate::poly::Monomial;
use geom::{rat, rat_ceil, rat_floor, rat_int, ConvexPolygon, HalfPlane, Location, Pt, Rat};

/// Label in `{1, ..., m}` of the diagonal marked point `(t + 1/2, t + 1/2)`.
pub fn marking_label(ctx: &Context, t: i64) -> i64 {
    q2(ctx, 2 * t + 1)
}

/// Whether marked points with this label sit at half-turn centers of the
/// symmetry group.  Those points have half-sized orbits, so region counts
/// there are doubled.
pub fn is_half_turn_label(ctx: &Context, label: i64) -> bool {
    label == 1 || label == ctx.m()
}

/// Sign of the diagonal nudge applied to the slanted line at integer level
/// `level`: `+1` on the first half of each period window and `-1` on the
/// second.  The anti-symmetry makes the slanted family invariant under the
/// whole symmetry group.
pub fn beta_offset_sign(ctx: &Context, level: i64) -> i64 {
    if window_positions(ctx, level)[0] < ctx.m() {
        1
    } else {
        -1
    }
}

/// Coordinate sum `x + y` cut out by the slanted (slope `-1`) line at
/// integer level `level`.  The line is nudged off the lattice diagonal by a
/// quarter step so that it avoids every lattice point, marked point, and
/// half-turn center.
pub fn beta_line_sum(ctx: &Context, level: i64) -> Rat {
    rat(4 * level + beta_offset_sign(ctx, level), 2)
}

/// A symmetry of the plane acting diagonally: translation by whole periods,
/// or a half-turn about a center on the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanarMotion {
    Translate(i64),
    HalfTurn(i64),
}

impl PlanarMotion {
    pub fn apply(&self, ctx: &Context, pt: &Pt) -> Pt {
        let p = rat_int(ctx.period());
        match *self {
            PlanarMotion::Translate(t) => {
                let d = rat_int(t) * p;
                Pt::new(pt.x + d, pt.y + d)
            }
            PlanarMotion::HalfTurn(t) => {
                let c = rat_int(1) + rat_int(t) * p;
                Pt::new(c - pt.x, c - pt.y)
            }
        }
    }

    /// Sign picked up by the legs of a triangle moved by this motion.
    fn leg_sign(&self) -> i64 {
        match self {
            PlanarMotion::Translate(_) => 1,
            PlanarMotion::HalfTurn(_) => -1,
        }
    }
}

/// The marked lattice points of a state over one period window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeState {
    points: Vec<(i64, i64)>,
}

impl LatticeState {
    pub fn of(f: &LiftedPermutation) -> Result<Self> {
        let mut points = Vec::new();
        for a in 1..=f.ctx().period() {
            if f.in_closure(a) {
                points.push((a, f.evaluate(a)?));
            }
        }
        Ok(LatticeState { points })
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }
}

/// Shape of the quotient image of an embedded empty rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RectangleShape {
    /// The rectangle is carried onto itself by one half-turn, so its image
    /// folds onto a bigon.
    Bigon,
    /// The rectangle meets none of its symmetry copies and embeds as is.
    Rectangle,
}

/// A rectangle spanned by two marked corners of a state, supporting one
/// differential term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarRectangle {
    pub crossing: Crossing,
    pub upper_left: (i64, i64),
    pub lower_right: (i64, i64),
    pub shape: RectangleShape,
}

/// The rectangles of `f` that support differential terms: for each crossing
/// class `(i, j)` the rectangle `[i, j] x [f(j), f(i)]` qualifies when its
/// interior avoids every state point and every nonidentity symmetry copy of
/// itself.  The single self-fold half-turn is allowed and classifies the
/// image as a bigon.
pub fn empty_rectangles(f: &LiftedPermutation) -> Result<Vec<PlanarRectangle>> {
    let p = f.ctx().period();
    let mut out = Vec::new();
    'classes: for rep in f.crossings() {
        let (i, j) = (rep.i, rep.j);
        let fi = f.evaluate(i)?;
        let fj = f.evaluate(j)?;
        debug_assert!(fi > fj, "crossing corners must invert");
        // A state point strictly inside blocks the rectangle.
        for a in (i + 1)..j {
            if f.in_closure(a) {
                let fa = f.evaluate(a)?;
                if fj < fa && fa < fi {
                    continue 'classes;
                }
            }
        }
        // Translates overlap the interior exactly when one period is shorter
        // than both side lengths.
        if p < (j - i).min(fi - fj) {
            continue 'classes;
        }
        // Half-turn copies: the image of `x in (i, j)` is `1 + tp - x`, so
        // the interiors overlap exactly when `tp` lies strictly between
        // `2i - 1` and `2j - 1` horizontally, and likewise vertically.
        let lo = (2 * i - 1).max(2 * fj - 1);
        let hi = (2 * j - 1).min(2 * fi - 1);
        let mut fold = false;
        for t in lo.div_euclid(p)..=hi.div_euclid(p) + 1 {
            let tp = t * p;
            if tp <= lo || tp >= hi {
                continue;
            }
            if 1 + tp == i + j && 1 + tp == fi + fj {
                fold = true;
            } else {
                continue 'classes;
            }
        }
        debug_assert_eq!(fold, (i + j - 1).rem_euclid(p) == 0);
        out.push(PlanarRectangle {
            crossing: rep,
            upper_left: (i, fi),
            lower_right: (j, fj),
            shape: if fold {
                RectangleShape::Bigon
            } else {
                RectangleShape::Rectangle
            },
        });
    }
    Ok(out)
}

fn require_connecting(f: &LiftedPermutation, g: &LiftedPermutation) -> Result<()> {
    if f.ctx() != g.ctx() || f.domain() != g.domain() || f.image_idem() != g.image_idem() {
        return Err(Error::NoConnectingDomain);
    }
    Ok(())
}

/// Multiplicity of the connecting domain from `f` to `g` at the region
/// containing `(i + 1/2, j + 1/2)`: the signed count of strands to the left
/// that separate the two states at that level.
pub fn local_multiplicity(
    f: &LiftedPermutation,
    g: &LiftedPermutation,
    i: i64,
    j: i64,
) -> Result<i64> {
    require_connecting(f, g)?;
    Ok(local_multiplicity_raw(f, g, i, j))
}

fn local_multiplicity_raw(f: &LiftedPermutation, g: &LiftedPermutation, i: i64, j: i64) -> i64 {
    let d = f.max_displacement().max(g.max_displacement());
    let mut count = 0;
    for a in (j - d - 1)..=i.min(j + d + 1) {
        if !f.in_closure(a) {
            continue;
        }
        let fa = f.evaluate(a).expect("closure point");
        let ga = g.evaluate(a).expect("closure point");
        if ga <= j && j < fa {
            count += 1;
        } else if fa <= j && j < ga {
            count -= 1;
        }
    }
    count
}

/// Net region multiplicities at the `m` marked points between two states
/// with the same source and target idempotents.  Computed twice — from the
/// level-crossing weights and from the planar picture — and cross-checked.
pub fn o_multiplicities(f: &LiftedPermutation, g: &LiftedPermutation) -> Result<Vec<i64>> {
    require_connecting(f, g)?;
    let wf = f.weights_doubled();
    let wg = g.weights_doubled();
    let mut out = Vec::with_capacity(wf.len());
    for t in 1..=f.ctx().m() {
        let diff = wf[(t - 1) as usize] - wg[(t - 1) as usize];
        if diff.rem_euclid(2) != 0 {
            return Err(Error::Internal(format!(
                "weight difference at marked point {t} is odd for {f} vs {g}"
            )));
        }
        let geo = local_multiplicity_raw(f, g, t - 1, t - 1);
        if geo != diff / 2 {
            return Err(Error::Internal(format!(
                "marked-point multiplicity {geo} disagrees with weight drop {} at {t} for {f} vs {g}",
                diff / 2
            )));
        }
        out.push(geo);
    }
    Ok(out)
}

/// Differential recomputed from the planar picture alone: one term per
/// empty rectangle, with exponents read off as region multiplicities at the
/// marked points.
pub fn oracle_differential(f: &LiftedPermutation) -> Result<Element<LiftedPermutation>> {
    let m = f.ctx().m();
    let mut out = Element::zero();
    for rect in empty_rectangles(f)? {
        let res = f.resolve(&rect.crossing)?;
        let mut exps = Vec::with_capacity(m as usize);
        for t in 1..=m {
            let e = local_multiplicity(f, &res, t - 1, t - 1)?;
            if e < 0 {
                return Err(Error::Internal(format!(
                    "negative marked-point multiplicity {e} for rectangle {} of {f}",
                    rect.crossing
                )));
            }
            exps.push(e);
        }
        out.add_term(res, Monomial::new(exps)?.into());
    }
    Ok(out)
}

/// Comparison of two states with matching idempotents under the
/// positive-domain partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    Equal,
    /// `f` strictly dominates `g`, witnessed by a sequence of
    /// single-crossing resolutions carrying `f` down to `g`.
    Greater {
        path: Vec<Crossing>,
    },
    Incomparable,
}

/// Decides whether the connecting domain from `f` to `g` is positive, by two
/// independent routes: scanning every region multiplicity, and searching for
/// a chain of crossing resolutions.  Disagreement between the routes is an
/// internal error.
pub fn positivity(f: &LiftedPermutation, g: &LiftedPermutation) -> Result<Positivity> {
    require_connecting(f, g)?;
    if f == g {
        return Ok(Positivity::Equal);
    }
    let nonneg = dominates(f, g);
    let path = resolution_path(f, g)?;
    match (nonneg, path) {
        (true, Some(path)) => {
            debug_assert_eq!(path.len(), f.crossing_number() - g.crossing_number());
            Ok(Positivity::Greater { path })
        }
        (false, None) => Ok(Positivity::Incomparable),
        (true, None) => Err(Error::Internal(format!(
            "positive connecting domain from {f} to {g} admits no resolution path"
        ))),
        (false, Some(_)) => Err(Error::Internal(format!(
            "resolution path from {f} to {g} despite a negative region"
        ))),
    }
}

/// All region multiplicities from `f` to `g` are nonnegative.  One period of
/// levels together with a displacement-sized column window covers every
/// region class.
fn dominates(f: &LiftedPermutation, g: &LiftedPermutation) -> bool {
    let p = f.ctx().period();
    let d = f.max_displacement().max(g.max_displacement());
    for j in 0..p {
        for i in (j - d - 2)..=(j + d + 2) {
            if local_multiplicity_raw(f, g, i, j) < 0 {
                return false;
            }
        }
    }
    true
}

/// Searches depth-first for single-crossing resolutions carrying `f` to `g`
/// while keeping every intermediate state above `g`.
fn resolution_path(f: &LiftedPermutation, g: &LiftedPermutation) -> Result<Option<Vec<Crossing>>> {
    fn dfs(
        cur: &LiftedPermutation,
        target: &LiftedPermutation,
        failed: &mut HashSet<LiftedPermutation>,
        path: &mut Vec<Crossing>,
    ) -> Result<bool> {
        for rep in cur.crossings() {
            let next = cur.resolve(&rep)?;
            if next.crossing_number() + 1 != cur.crossing_number() {
                continue;
            }
            if failed.contains(&next) || !dominates(&next, target) {
                continue;
            }
            path.push(rep);
            if &next == target || dfs(&next, target, failed, path)? {
                return Ok(true);
            }
            path.pop();
        }
        failed.insert(cur.clone());
        Ok(false)
    }

    if f == g {
        return Ok(Some(Vec::new()));
    }
    let mut failed = HashSet::new();
    let mut path = Vec::new();
    if dfs(f, g, &mut failed, &mut path)? {
        Ok(Some(path))
    } else {
        Ok(None)
    }
}

/// One right isosceles triangle of a product domain: apex at a lattice
/// point, axis-parallel legs of signed length `lambda`, hypotenuse on a
/// slanted line.
#[derive(Clone, Debug)]
pub struct Triangle {
    strand: i64,
    apex: Pt,
    lambda: Rat,
    poly: ConvexPolygon,
}

impl Triangle {
    /// Triangle of the strand starting at `s`: its hypotenuse lies on the
    /// slanted line at level `through_level` and its apex at the lattice
    /// point `(s, apex_level)`.
    fn new(ctx: &Context, s: i64, through_level: i64, apex_level: i64) -> Self {
        let c = beta_line_sum(ctx, through_level);
        let apex = Pt::of_ints(s, apex_level);
        let lambda = c - apex.x - apex.y;
        let on_alpha = Pt::new(apex.x, c - apex.x);
        let on_gamma = Pt::new(c - apex.y, apex.y);
        let poly = ConvexPolygon::triangle(apex, on_alpha, on_gamma)
            .expect("strand triangles are never degenerate");
        Triangle {
            strand: s,
            apex,
            lambda,
            poly,
        }
    }

    pub fn strand(&self) -> i64 {
        self.strand
    }

    pub fn apex(&self) -> &Pt {
        &self.apex
    }

    /// Signed leg length; its sign records which way the triangle opens.
    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    pub fn polygon(&self) -> &ConvexPolygon {
        &self.poly
    }
}

/// Everything the planar picture knows about the product domain of a
/// composable pair: its triangles, marked-point counts, extra count from
/// scaled diagonal pairs, Euler measure, and the resulting grading.
#[derive(Clone, Debug)]
pub struct TriangleDomain {
    pub triangles: Vec<Triangle>,
    pub o_counts: Vec<i64>,
    pub diagonal_count: i64,
    pub euler: Rat,
    pub maslov: i64,
}

/// Builds the product domain for `(f, g)`, or `None` when the pair does not
/// compose.  All internal identities — marked-point counts against weight
/// sums, and the Euler measure against its closed form — are recomputed
/// geometrically and enforced.
pub fn triangle_domain(
    f: &LiftedPermutation,
    g: &LiftedPermutation,
) -> Result<Option<TriangleDomain>> {
    let Some(h) = f.then(g) else {
        return Ok(None);
    };
    let ctx = f.ctx();
    let m = ctx.m() as usize;
    let mut triangles = Vec::with_capacity(f.domain().len());
    for &s in f.domain() {
        triangles.push(Triangle::new(ctx, s, f.evaluate(s)?, h.evaluate(s)?));
    }
    let wf = f.weights_doubled();
    let wg = g.weights_doubled();
    let wh = h.weights_doubled();
    let mut o_counts = Vec::with_capacity(m);
    for t in 0..m {
        let num = wf[t] + wg[t] - wh[t];
        if num < 0 || num.rem_euclid(2) != 0 {
            return Err(Error::Internal(format!(
                "weight identity violated at marked point {} for {f} * {g}",
                t + 1
            )));
        }
        o_counts.push(num / 2);
    }
    let geo = marked_point_counts(ctx, &triangles)?;
    if geo != o_counts {
        return Err(Error::Internal(format!(
            "triangle marked-point counts {geo:?} disagree with weights {o_counts:?} for {f} * {g}"
        )));
    }
    let diagonal_count = diagonal_count(ctx, &triangles)?;
    let euler = euler_measure(ctx, &triangles)?;
    let k = triangles.len() as i64;
    let expected = rat(k, 4) + rat(o_counts[0] + o_counts[m - 1], 2);
    if euler != expected {
        return Err(Error::Internal(format!(
            "euler measure {} differs from closed form {} for {f} * {g}",
            geom::rat_string(&euler),
            geom::rat_string(&expected)
        )));
    }
    let maslov = o_counts[0] + o_counts[m - 1] + diagonal_count;
    debug_assert_eq!(
        rat_int(maslov),
        euler * rat_int(2) - rat(k, 2) + rat_int(diagonal_count),
    );
    Ok(Some(TriangleDomain {
        triangles,
        o_counts,
        diagonal_count,
        euler,
        maslov,
    }))
}

/// Product recomputed from the planar picture alone: the composite state
/// decorated with the domain's marked-point exponents, kept exactly when the
/// domain's grading vanishes.
pub fn oracle_product(
    f: &LiftedPermutation,
    g: &LiftedPermutation,
) -> Result<Element<LiftedPermutation>> {
    let Some(domain) = triangle_domain(f, g)? else {
        return Ok(Element::zero());
    };
    if domain.maslov != 0 {
        return Ok(Element::zero());
    }
    let h = f.then(g).expect("triangle domain implies composability");
    Ok(Element::term(h, Monomial::new(domain.o_counts)?.into()))
}

/// Marked points strictly inside each triangle, tallied by label.  Points at
/// half-turn centers (labels 1 and `m`) count twice.
fn marked_point_counts(ctx: &Context, triangles: &[Triangle]) -> Result<Vec<i64>> {
    let mut counts = vec![0; ctx.m() as usize];
    let half = rat(1, 2);
    for tri in triangles {
        let (x0, y0, x1, y1) = tri.polygon().bbox();
        let lo = rat_ceil(&(x0.max(y0) - half));
        let hi = rat_floor(&(x1.min(y1) - half));
        for u in lo..=hi {
            let coord = rat(2 * u + 1, 2);
            match tri.polygon().locate(&Pt::new(coord, coord)) {
                Location::Inside => {
                    let label = marking_label(ctx, u);
                    counts[(label - 1) as usize] +=
                        if is_half_turn_label(ctx, label) { 2 } else { 1 };
                }
                Location::Boundary => {
                    return Err(Error::Internal(format!(
                        "marked point ({c}, {c}) on a triangle boundary",
                        c = geom::rat_string(&coord)
                    )));
                }
                Location::Outside => {}
            }
        }
    }
    Ok(counts)
}

/// Inclusive range of motion indices `t` whose translate of `b2` can meet
/// `b1`, judged by bounding boxes.
fn translate_range(
    period: i64,
    b1: &(Rat, Rat, Rat, Rat),
    b2: &(Rat, Rat, Rat, Rat),
) -> (i64, i64) {
    let p = rat_int(period);
    let lo = (b1.0 - b2.2).max(b1.1 - b2.3) / p;
    let hi = (b1.2 - b2.0).min(b1.3 - b2.1) / p;
    (rat_ceil(&lo), rat_floor(&hi))
}

/// Same for half-turn images of `b2`.
fn half_turn_range(
    period: i64,
    b1: &(Rat, Rat, Rat, Rat),
    b2: &(Rat, Rat, Rat, Rat),
) -> (i64, i64) {
    let p = rat_int(period);
    let one = rat_int(1);
    let lo = (b1.0 + b2.0 - one).max(b1.1 + b2.1 - one) / p;
    let hi = (b1.2 + b2.2 - one).min(b1.3 + b2.3 - one) / p;
    (rat_ceil(&lo), rat_floor(&hi))
}

/// Counts configurations of two triangle copies related by a genuine scaling
/// (ratio different from 1) whose fixed point lies strictly inside both.
/// Each qualifying configuration contributes 2.  Unordered pairs are
/// enumerated with the first triangle pinned in place: same-strand pairs use
/// positive translates plus every half-turn, distinct strands use every
/// motion.
fn diagonal_count(ctx: &Context, triangles: &[Triangle]) -> Result<i64> {
    let p = ctx.period();
    let mut total = 0;
    for a in 0..triangles.len() {
        for b in a..triangles.len() {
            let (t1, t2) = (&triangles[a], &triangles[b]);
            let b1 = t1.polygon().bbox();
            let b2 = t2.polygon().bbox();
            let (lo, hi) = translate_range(p, &b1, &b2);
            for t in lo..=hi {
                if a == b && t <= 0 {
                    continue;
                }
                total += scaled_pair_count(ctx, t1, t2, PlanarMotion::Translate(t))?;
            }
            let (lo, hi) = half_turn_range(p, &b1, &b2);
            for t in lo..=hi {
                total += scaled_pair_count(ctx, t1, t2, PlanarMotion::HalfTurn(t))?;
            }
        }
    }
    Ok(total)
}

/// Contribution of one configuration: the affine map carrying the pinned
/// copy of `t1` onto the moved copy of `t2` is a scalar dilation (possibly
/// through a half-turn) about its fixed point; the configuration counts
/// exactly when that fixed point is interior to both copies.
fn scaled_pair_count(
    ctx: &Context,
    t1: &Triangle,
    t2: &Triangle,
    motion: PlanarMotion,
) -> Result<i64> {
    let one = rat_int(1);
    let ratio = rat_int(motion.leg_sign()) * *t2.lambda() / *t1.lambda();
    if ratio == one {
        return Ok(0);
    }
    let apex2 = motion.apply(ctx, t2.apex());
    let q = Pt::new(
        (apex2.x - ratio * t1.apex().x) / (one - ratio),
        (apex2.y - ratio * t1.apex().y) / (one - ratio),
    );
    let loc1 = t1.polygon().locate(&q);
    if loc1 == Location::Outside {
        return Ok(0);
    }
    let moved = t2.polygon().map(|v| motion.apply(ctx, v));
    let loc2 = moved.locate(&q);
    if loc2 == Location::Outside {
        return Ok(0);
    }
    if loc1 == Location::Boundary || loc2 == Location::Boundary {
        return Err(Error::Internal(
            "scaling fixed point on a triangle boundary".to_string(),
        ));
    }
    Ok(2)
}

/// Euler measure of the product domain: each triangle is cut into cells by
/// the vertical, horizontal, and slanted line families, and each cell
/// contributes `1 - corners/4`, bumped to `2 - corners/4` when it strictly
/// contains a half-turn center.
fn euler_measure(ctx: &Context, triangles: &[Triangle]) -> Result<Rat> {
    let mut total = Rat::zero();
    for tri in triangles {
        total += triangle_euler(ctx, tri)?;
    }
    Ok(total)
}

fn split_cells(cells: Vec<ConvexPolygon>, h: &HalfPlane) -> Vec<ConvexPolygon> {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for cell in cells {
        let (below, above) = cell.split(h);
        out.extend(below);
        out.extend(above);
    }
    out
}

fn triangle_euler(ctx: &Context, tri: &Triangle) -> Result<Rat> {
    let (x0, y0, x1, y1) = tri.polygon().bbox();
    let one = rat_int(1);
    let zero = Rat::zero();
    let mut cells = vec![tri.polygon().clone()];
    for n in rat_ceil(&x0)..=rat_floor(&x1) {
        cells = split_cells(cells, &HalfPlane::new(one, zero, rat_int(n)));
    }
    for n in rat_ceil(&y0)..=rat_floor(&y1) {
        cells = split_cells(cells, &HalfPlane::new(zero, one, rat_int(n)));
    }
    let two = rat_int(2);
    for level in rat_floor(&((x0 + y0) / two)) - 1..=rat_ceil(&((x1 + y1) / two)) + 1 {
        let c = beta_line_sum(ctx, level);
        if c > x0 + y0 && c < x1 + y1 {
            cells = split_cells(cells, &HalfPlane::new(one, one, c));
        }
    }
    let mut e = Rat::zero();
    for cell in cells {
        let centers = cell_half_turn_centers(ctx, &cell)?;
        debug_assert!(centers <= 1, "cells are too small to hold two centers");
        e += rat_int(1 + centers) - rat(cell.corner_count() as i64, 4);
    }
    Ok(e)
}

/// Number of half-turn centers strictly inside a cell (0 or 1).  Centers are
/// exactly the marked points with labels 1 and `m`.
fn cell_half_turn_centers(ctx: &Context, cell: &ConvexPolygon) -> Result<i64> {
    let (x0, y0, x1, y1) = cell.bbox();
    let half = rat(1, 2);
    let mut count = 0;
    for u in rat_ceil(&(x0.max(y0) - half))..=rat_floor(&(x1.min(y1) - half)) {
        if !is_half_turn_label(ctx, marking_label(ctx, u)) {
            continue;
        }
        let coord = rat(2 * u + 1, 2);
        match cell.locate(&Pt::new(coord, coord)) {
            Location::Inside => count += 1,
            Location::Boundary => {
                return Err(Error::Internal(format!(
                    "half-turn center ({c}, {c}) on a cell boundary",
                    c = geom::rat_string(&coord)
                )));
            }
            Location::Outside => {}
        }
    }
    Ok(count)
}

/// Level-crossing weights of a state recomputed from the slanted-line
/// picture: the strand at `s` spans the diagonal between `s` and the
/// slanted line's diagonal intercept `f(s) + sign/4`, and each marked point
/// strictly inside that span counts once.
pub fn state_weights_doubled_planar(f: &LiftedPermutation) -> Vec<i64> {
    let ctx = f.ctx();
    let d = f.max_displacement();
    let mut out = vec![0; ctx.m() as usize];
    for t in 1..=ctx.m() {
        let u = t - 1;
        debug_assert_eq!(marking_label(ctx, u), t);
        let point4 = 4 * u + 2;
        for s in (u - d)..=(u + d + 1) {
            if !f.in_closure(s) {
                continue;
            }
            let fs = f.evaluate(s).expect("closure point");
            let start4 = 4 * s;
            let end4 = 4 * fs + beta_offset_sign(ctx, fs);
            if (start4 < point4 && point4 < end4) || (end4 < point4 && point4 < start4) {
                out[(t - 1) as usize] += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: i64, k: usize) -> Context {
        Context::new(m, k).unwrap()
    }

    fn gen(m: i64, domain: Vec<i64>, values: Vec<i64>) -> LiftedPermutation {
        let c = ctx(m, domain.len());
        LiftedPermutation::new(c, domain, values).unwrap()
    }

    #[test]
    fn beta_signs_and_lines() {
        let c = ctx(3, 1);
        assert_eq!(beta_offset_sign(&c, 1), 1);
        assert_eq!(beta_offset_sign(&c, 2), 1);
        assert_eq!(beta_offset_sign(&c, 3), -1);
        assert_eq!(beta_offset_sign(&c, 0), -1);
        assert_eq!(beta_offset_sign(&c, -1), -1);
        assert_eq!(beta_offset_sign(&c, 4), -1);
        assert_eq!(beta_offset_sign(&c, 5), 1);
        // Anti-symmetry under reflection and symmetry under translation.
        for l in -6..=6 {
            assert_eq!(beta_offset_sign(&c, 1 - l), -beta_offset_sign(&c, l));
            assert_eq!(beta_offset_sign(&c, l + 4), beta_offset_sign(&c, l));
        }
        assert_eq!(beta_line_sum(&c, 1), rat(5, 2));
        assert_eq!(beta_line_sum(&c, -1), rat(-5, 2));
        let c2 = ctx(2, 1);
        assert_eq!(beta_line_sum(&c2, 0), rat(-1, 2));
    }

    #[test]
    fn marking_labels() {
        let c = ctx(3, 1);
        let labels: Vec<i64> = (0..8).map(|u| marking_label(&c, u)).collect();
        assert_eq!(labels, vec![1, 2, 3, 2, 1, 2, 3, 2]);
        assert_eq!(marking_label(&c, -1), 2);
        assert!(is_half_turn_label(&c, 1));
        assert!(is_half_turn_label(&c, 3));
        assert!(!is_half_turn_label(&c, 2));
    }

    #[test]
    fn lattice_state_points() {
        let f = gen(3, vec![2], vec![-1]);
        let state = LatticeState::of(&f).unwrap();
        assert_eq!(state.points(), &[(2, -1), (3, 6)]);
    }

    #[test]
    fn empty_rectangles_examples() {
        // One self-folding rectangle: a bigon.
        let f = gen(3, vec![2], vec![-1]);
        let rects = empty_rectangles(&f).unwrap();
        assert_eq!(rects.len(), 1);
        assert_eq!(rects[0].crossing, Crossing { i: 3, j: 6 });
        assert_eq!(rects[0].upper_left, (3, 6));
        assert_eq!(rects[0].lower_right, (6, 3));
        assert_eq!(rects[0].shape, RectangleShape::Bigon);

        // Both rectangles of this state survive.
        let f = gen(2, vec![1], vec![-1]);
        let rects = empty_rectangles(&f).unwrap();
        assert_eq!(rects.len(), 2);
        assert_eq!(rects[0].upper_left, (2, 4));
        assert_eq!(rects[0].lower_right, (3, 1));
        assert_eq!(rects[1].lower_right, (5, 3));
        assert!(rects.iter().all(|r| r.shape == RectangleShape::Bigon));

        // Four crossings, but translated copies of two of the rectangles
        // overlap themselves; only the outermost pair survives.
        let f = gen(2, vec![1], vec![-3]);
        assert_eq!(f.crossing_number(), 4);
        let rects = empty_rectangles(&f).unwrap();
        let classes: Vec<(i64, i64)> = rects.iter().map(|r| (r.crossing.i, r.crossing.j)).collect();
        assert_eq!(classes, vec![(2, 3), (2, 9)]);

        // A genuinely asymmetric rectangle.
        let f = gen(3, vec![1, 2], vec![2, 1]);
        let rects = empty_rectangles(&f).unwrap();
        assert_eq!(rects.len(), 1);
        assert_eq!(rects[0].shape, RectangleShape::Rectangle);
        assert_eq!(rects[0].upper_left, (1, 2));
        assert_eq!(rects[0].lower_right, (2, 1));
    }

    #[test]
    fn oracle_differential_matches_combinatorial() {
        for f in [
            gen(3, vec![2], vec![-1]),
            gen(2, vec![1], vec![-1]),
            gen(2, vec![1], vec![-3]),
            gen(3, vec![1, 2], vec![2, 1]),
            gen(4, vec![1, 3], vec![3, 5]),
        ] {
            let geometric = oracle_differential(&f).unwrap();
            let combinatorial = Element::generator(f.clone()).diff().unwrap();
            assert_eq!(geometric, combinatorial, "differentials differ for {f}");
        }
        // Frozen endpoint values for the displacement-3 state.
        let f = gen(2, vec![1], vec![-3]);
        let d = oracle_differential(&f).unwrap();
        assert_eq!(d.num_terms(), 2);
        let up = gen(2, vec![1], vec![4]);
        let down = gen(2, vec![1], vec![-2]);
        assert_eq!(d.coefficient(&up).unwrap().to_string(), "v1");
        assert_eq!(d.coefficient(&down).unwrap().to_string(), "v2");
    }

    #[test]
    fn local_multiplicity_values() {
        let f = gen(3, vec![2], vec![-1]);
        let e = gen(3, vec![2], vec![2]);
        assert_eq!(local_multiplicity(&f, &e, 0, 0).unwrap(), 1);
        assert_eq!(local_multiplicity(&f, &e, 1, 1).unwrap(), 1);
        assert_eq!(local_multiplicity(&f, &e, 2, 2).unwrap(), 0);
        // Far columns have settled back to zero.
        let d = f.max_displacement();
        for j in 0..4 {
            assert_eq!(local_multiplicity(&f, &e, j + d + 2, j).unwrap(), 0);
        }
        // Mismatched idempotents are rejected.
        let other = gen(3, vec![1], vec![1]);
        assert!(matches!(
            local_multiplicity(&f, &other, 0, 0),
            Err(Error::NoConnectingDomain)
        ));
    }

    #[test]
    fn o_multiplicity_values() {
        let f = gen(3, vec![2], vec![-1]);
        let e = gen(3, vec![2], vec![2]);
        assert_eq!(o_multiplicities(&f, &e).unwrap(), vec![1, 1, 0]);
        assert_eq!(o_multiplicities(&e, &f).unwrap(), vec![-1, -1, 0]);
        assert_eq!(o_multiplicities(&f, &f).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn positivity_verdicts() {
        let f = gen(3, vec![2], vec![-1]);
        let e = gen(3, vec![2], vec![2]);
        assert_eq!(positivity(&f, &f).unwrap(), Positivity::Equal);
        match positivity(&f, &e).unwrap() {
            Positivity::Greater { path } => {
                assert_eq!(path, vec![Crossing { i: 3, j: 6 }]);
            }
            other => panic!("expected Greater, got {other:?}"),
        }
        assert_eq!(positivity(&e, &f).unwrap(), Positivity::Incomparable);

        // A two-step descent.
        let f = gen(2, vec![1], vec![-1]);
        let id = gen(2, vec![1], vec![1]);
        match positivity(&f, &id).unwrap() {
            Positivity::Greater { path } => assert_eq!(path.len(), 2),
            other => panic!("expected Greater, got {other:?}"),
        }
    }

    #[test]
    fn triangle_domain_self_pair() {
        let f = gen(3, vec![2], vec![-1]);
        let td = triangle_domain(&f, &f).unwrap().unwrap();
        assert_eq!(td.o_counts, vec![2, 2, 0]);
        assert_eq!(td.diagonal_count, 2);
        assert_eq!(td.euler, rat(5, 4));
        assert_eq!(td.maslov, 4);
        assert_eq!(td.triangles.len(), 1);
        let tri = &td.triangles[0];
        assert_eq!(tri.strand(), 2);
        assert_eq!(*tri.apex(), Pt::of_ints(2, 2));
        assert_eq!(*tri.lambda(), rat(-13, 2));
    }

    #[test]
    fn triangle_domain_swap_pair() {
        let f = gen(4, vec![2, 3], vec![3, 2]);
        let td = triangle_domain(&f, &f).unwrap().unwrap();
        assert_eq!(td.o_counts, vec![0, 0, 2, 0]);
        assert_eq!(td.diagonal_count, 2);
        assert_eq!(td.euler, rat(1, 2));
        assert_eq!(td.maslov, 2);
    }

    #[test]
    fn triangle_domain_surviving_product() {
        let f = gen(3, vec![2], vec![1]);
        let g = gen(3, vec![1], vec![0]);
        let td = triangle_domain(&f, &g).unwrap().unwrap();
        assert_eq!(td.o_counts, vec![0, 0, 0]);
        assert_eq!(td.diagonal_count, 0);
        assert_eq!(td.euler, rat(1, 4));
        assert_eq!(td.maslov, 0);
        // Non-composable pairs have no domain.
        assert!(triangle_domain(&g, &f).unwrap().is_none());
    }

    #[test]
    fn triangle_domain_small_period() {
        let f = gen(2, vec![1], vec![0]);
        let td = triangle_domain(&f, &f).unwrap().unwrap();
        assert_eq!(td.o_counts, vec![2, 0]);
        assert_eq!(td.diagonal_count, 2);
        assert_eq!(td.euler, rat(5, 4));
        assert_eq!(td.maslov, 4);
    }

    #[test]
    fn oracle_product_matches_combinatorial() {
        let cases = [
            (gen(3, vec![2], vec![1]), gen(3, vec![1], vec![0])),
            (gen(3, vec![2], vec![-1]), gen(3, vec![2], vec![-1])),
            (gen(2, vec![1], vec![0]), gen(2, vec![1], vec![0])),
            (gen(2, vec![1], vec![0]), gen(2, vec![1], vec![2])),
            (
                gen(4, vec![2, 3], vec![3, 2]),
                gen(4, vec![2, 3], vec![3, 2]),
            ),
        ];
        for (f, g) in cases {
            let geometric = oracle_product(&f, &g).unwrap();
            let combinatorial = Element::generator(f.clone())
                .mu2(&Element::generator(g.clone()))
                .unwrap();
            assert_eq!(geometric, combinatorial, "products differ for {f} * {g}");
        }
        // The surviving case is the bare composite.
        let f = gen(3, vec![2], vec![1]);
        let g = gen(3, vec![1], vec![0]);
        let product = oracle_product(&f, &g).unwrap();
        let h = f.then(&g).unwrap();
        assert!(product.coefficient(&h).unwrap().is_one());
    }

    #[test]
    fn planar_weights_agree() {
        for f in [
            gen(3, vec![2], vec![-1]),
            gen(3, vec![2], vec![5]),
            gen(2, vec![1], vec![-3]),
            gen(4, vec![2, 3], vec![3, 2]),
            gen(4, vec![1, 3], vec![3, 5]),
        ] {
            assert_eq!(
                state_weights_doubled_planar(&f),
                f.weights_doubled(),
                "weights differ for {f}"
            );
        }
        assert_eq!(
            state_weights_doubled_planar(&gen(2, vec![1], vec![-3])),
            vec![4, 4]
        );
    }
}
