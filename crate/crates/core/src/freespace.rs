//! Free-space primitives: membership, the constant-time close/far
//! heuristics, free intervals on diagram boundaries and single-cell
//! propagation.
//!
//! A boundary is a horizontal or vertical line segment of the parameter
//! space. Seen geometrically it is a fixed point on one curve (the
//! `center`) against an index range `[q, q2]` of the other curve. Every
//! function here takes that geometric view, so the same code serves
//! vertical lines (`center` on π, range on σ) and horizontal lines.

use crate::curves::Curve;
use crate::geometry::{circle_segment_params, sq_dist, Point};

/// A position `(p, q)` in the parameter space `[0, n−1] × [0, m−1]`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ParamPair {
    pub p: f64,
    pub q: f64,
}

impl ParamPair {
    pub const fn new(p: f64, q: f64) -> Self {
        ParamPair { p, q }
    }
}

/// Orientation of a boundary line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    /// `{p} × [lo, hi]`: fixed position on π, range on σ.
    Vertical,
    /// `[lo, hi] × {q}`: fixed position on σ, range on π.
    Horizontal,
}

/// A closed piece of a boundary line. `lo ≤ hi` always; emptiness is
/// expressed with `Option<BoundaryInterval>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryInterval {
    pub axis: Axis,
    pub fixed: f64,
    pub lo: f64,
    pub hi: f64,
}

impl BoundaryInterval {
    pub fn new(axis: Axis, fixed: f64, lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval {lo} > {hi}");
        BoundaryInterval { axis, fixed, lo, hi }
    }

    pub fn start(&self) -> ParamPair {
        self.at(self.lo)
    }

    pub fn end(&self) -> ParamPair {
        self.at(self.hi)
    }

    pub fn at(&self, t: f64) -> ParamPair {
        match self.axis {
            Axis::Vertical => ParamPair::new(self.fixed, t),
            Axis::Horizontal => ParamPair::new(t, self.fixed),
        }
    }

    /// Lower endpoint for vertical lines, right endpoint for horizontal ones.
    pub fn lower_right(&self) -> ParamPair {
        match self.axis {
            Axis::Vertical => self.start(),
            Axis::Horizontal => self.end(),
        }
    }

    /// Upper endpoint for vertical lines, left endpoint for horizontal ones.
    pub fn upper_left(&self) -> ParamPair {
        match self.axis {
            Axis::Vertical => self.end(),
            Axis::Horizontal => self.start(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SimpleBoundaryResult {
    /// The boundary meets F in at most one interval, given in the
    /// coordinate that varies along the boundary.
    Simple(Option<(f64, f64)>),
    NotSimple,
}

/// Gap left between a free interval and the non-free segments recorded
/// next to it, in parameter units.
pub const NONFREE_MARGIN: f64 = 1e-9;

/// Center point of a boundary line.
#[inline]
pub fn boundary_center(pi: &Curve, sigma: &Curve, axis: Axis, fixed: f64) -> Point {
    match axis {
        Axis::Vertical => pi.point_at(fixed),
        Axis::Horizontal => sigma.point_at(fixed),
    }
}

/// Curve traversed along a boundary line.
#[inline]
pub fn boundary_other<'a>(pi: &'a Curve, sigma: &'a Curve, axis: Axis) -> &'a Curve {
    match axis {
        Axis::Vertical => sigma,
        Axis::Horizontal => pi,
    }
}

#[inline]
pub fn is_free(pi: &Curve, sigma: &Curve, pp: ParamPair, delta: f64) -> bool {
    sq_dist(pi.point_at(pp.p), sigma.point_at(pp.q)) <= delta * delta
}

/// Middle vertex of `c[i..=i2]` and the arc length from it to the farther
/// end.
#[inline]
fn half_spread(c: &Curve, i: usize, i2: usize) -> (usize, f64) {
    let mid = (i + i2) / 2;
    (mid, c.subcurve_len(i, mid).max(c.subcurve_len(mid, i2)))
}

#[inline]
fn close_bound(center_sq: f64, spread: f64, delta: f64) -> bool {
    let slack = delta - spread;
    slack >= 0.0 && center_sq <= slack * slack
}

/// Arc lengths are differences of prefix sums; near a tie their rounding
/// could turn a touching pair into a far one, so the reach is padded by the
/// cancellation error.
#[inline]
fn far_bound(center_sq: f64, spread: f64, delta: f64, total: f64) -> bool {
    let reach = delta + spread + 4.0 * f64::EPSILON * total;
    center_sq > reach * reach * (1.0 + 4.0 * f64::EPSILON)
}

/// Sufficient test that every point of `π[i..=i2]` is within `delta` of
/// every point of `σ[j..=j2]` (hence also `d_F ≤ delta`). `false` means
/// unknown.
pub fn heur_close(pi: &Curve, i: usize, i2: usize, sigma: &Curve, j: usize, j2: usize, delta: f64) -> bool {
    let (ic, ra) = half_spread(pi, i, i2);
    let (jc, rb) = half_spread(sigma, j, j2);
    close_bound(sq_dist(pi.vertex(ic), sigma.vertex(jc)), ra + rb, delta)
}

/// Sufficient test that every pair of points of the two subcurves is more
/// than `delta` apart. `false` means unknown.
pub fn heur_far(pi: &Curve, i: usize, i2: usize, sigma: &Curve, j: usize, j2: usize, delta: f64) -> bool {
    let (ic, ra) = half_spread(pi, i, i2);
    let (jc, rb) = half_spread(sigma, j, j2);
    let total = pi.prefix_lengths()[i2] + sigma.prefix_lengths()[j2];
    far_bound(sq_dist(pi.vertex(ic), sigma.vertex(jc)), ra + rb, delta, total)
}

/// [`heur_close`] with a single point in place of the first subcurve.
pub fn heur_close_point(center: Point, other: &Curve, j: usize, j2: usize, delta: f64) -> bool {
    let (jc, rb) = half_spread(other, j, j2);
    close_bound(sq_dist(center, other.vertex(jc)), rb, delta)
}

/// [`heur_far`] with a single point in place of the first subcurve.
pub fn heur_far_point(center: Point, other: &Curve, j: usize, j2: usize, delta: f64) -> bool {
    let (jc, rb) = half_spread(other, j, j2);
    far_bound(sq_dist(center, other.vertex(jc)), rb, delta, other.prefix_lengths()[j2])
}

/// Free part of segment `k` of `other` in global parameter coordinates.
///
/// Endpoints are nudged inward until [`Curve::point_at`] at the endpoint
/// passes the closed distance test, so anything downstream (certificates in
/// particular) can rely on endpoint freeness bit for bit.
pub fn free_piece(center: Point, other: &Curve, k: usize, delta: f64) -> Option<(f64, f64)> {
    let (a, b) = circle_segment_params(center, delta, other.segment(k)).bounds()?;
    let kf = k as f64;
    let r2 = delta * delta;
    let inside = |t: f64| sq_dist(center, other.point_at(t)) <= r2;
    let mut lo = kf + a;
    let mut hi = kf + b;
    let mut step = f64::EPSILON * (kf + 1.0);
    let mut tries = 0;
    while !inside(lo) {
        lo += step;
        step *= 2.0;
        tries += 1;
        if lo > hi || tries > 40 {
            return None;
        }
    }
    step = f64::EPSILON * (kf + 1.0);
    tries = 0;
    while !inside(hi) {
        hi -= step;
        step *= 2.0;
        tries += 1;
        if hi < lo || tries > 40 {
            return None;
        }
    }
    Some((lo, hi))
}

/// Smallest `t ≥ from` with `t ≤ hi` that passes the closed distance test,
/// searching a few ulps upward. Used after clipping a free interval at a
/// coordinate that did not come from the circle computation.
pub fn first_free_at_or_after(center: Point, other: &Curve, from: f64, hi: f64, delta: f64) -> Option<f64> {
    let r2 = delta * delta;
    let mut t = from;
    let mut step = f64::EPSILON * (from.abs() + 1.0);
    for _ in 0..40 {
        if t > hi {
            return None;
        }
        if sq_dist(center, other.point_at(t)) <= r2 {
            return Some(t);
        }
        t += step;
        step *= 2.0;
    }
    None
}

/// Collects free intervals while a boundary is scanned from low to high.
struct Collector {
    intervals: Vec<(f64, f64)>,
    limit: usize,
}

impl Collector {
    fn new(limit: usize) -> Self {
        Collector {
            intervals: Vec::with_capacity(2),
            limit,
        }
    }

    /// Returns false once more than `limit` disjoint intervals are seen.
    fn push(&mut self, lo: f64, hi: f64) -> bool {
        if let Some(last) = self.intervals.last_mut() {
            if lo <= last.1 {
                last.1 = last.1.max(hi);
                return true;
            }
        }
        self.intervals.push((lo, hi));
        self.intervals.len() <= self.limit
    }
}

/// Exact free intervals of `center` against `other[q..=q2]`, one segment at
/// a time. Used where all intervals are needed, not just simple boundaries.
pub fn free_intervals(center: Point, other: &Curve, q: usize, q2: usize, delta: f64) -> Vec<(f64, f64)> {
    if q == q2 {
        let inside = sq_dist(center, other.vertex(q)) <= delta * delta;
        return if inside { vec![(q as f64, q as f64)] } else { Vec::new() };
    }
    let mut col = Collector::new(usize::MAX);
    for k in q..q2 {
        if let Some((lo, hi)) = free_piece(center, other, k, delta) {
            col.push(lo, hi);
        }
    }
    col.intervals
}

/// Adaptive-step scan of the boundary `center × other[q..=q2]`.
///
/// Long stretches are resolved with the close/far heuristics; the step
/// doubles after every resolved stretch and halves after a failure. At step
/// one an exact circle intersection decides the segment. Stops as soon as a
/// second free interval appears.
pub fn simple_boundary(center: Point, other: &Curve, q: usize, q2: usize, delta: f64) -> SimpleBoundaryResult {
    debug_assert!(q <= q2);
    if heur_far_point(center, other, q, q2, delta) {
        return SimpleBoundaryResult::Simple(None);
    }
    if heur_close_point(center, other, q, q2, delta) {
        return SimpleBoundaryResult::Simple(Some((q as f64, q2 as f64)));
    }
    if q == q2 {
        let inside = sq_dist(center, other.vertex(q)) <= delta * delta;
        return SimpleBoundaryResult::Simple(inside.then_some((q as f64, q as f64)));
    }
    let mut col = Collector::new(1);
    let mut s = 1usize;
    let mut j = q;
    while j < q2 {
        s = s.min(q2 - j);
        if heur_close_point(center, other, j, j + s, delta) {
            if !col.push(j as f64, (j + s) as f64) {
                return SimpleBoundaryResult::NotSimple;
            }
            j += s;
            s *= 2;
        } else if heur_far_point(center, other, j, j + s, delta) {
            j += s;
            s *= 2;
        } else if s > 1 {
            s /= 2;
        } else {
            if let Some((lo, hi)) = free_piece(center, other, j, delta) {
                if !col.push(lo, hi) {
                    return SimpleBoundaryResult::NotSimple;
                }
            }
            j += 1;
        }
    }
    SimpleBoundaryResult::Simple(col.intervals.first().copied())
}

/// Whether the whole boundary `center × other[q..=q2]` lies in F, using the
/// same adaptive scan as [`simple_boundary`].
pub fn column_free(center: Point, other: &Curve, q: usize, q2: usize, delta: f64) -> bool {
    if heur_close_point(center, other, q, q2, delta) {
        return true;
    }
    if heur_far_point(center, other, q, q2, delta) {
        return false;
    }
    let r2 = delta * delta;
    if q == q2 {
        return sq_dist(center, other.vertex(q)) <= r2;
    }
    let mut s = 1usize;
    let mut j = q;
    while j < q2 {
        s = s.min(q2 - j);
        if heur_close_point(center, other, j, j + s, delta) {
            j += s;
            s *= 2;
        } else if heur_far_point(center, other, j, j + s, delta) {
            return false;
        } else if s > 1 {
            s /= 2;
        } else {
            let seg = other.segment(j);
            if sq_dist(center, seg.start) > r2 || sq_dist(center, seg.end) > r2 {
                return false;
            }
            j += 1;
        }
    }
    true
}

/// Non-free stretches of `[lo, hi]` given its free intervals (sorted,
/// disjoint). Each stretch keeps [`NONFREE_MARGIN`] away from free points.
pub fn nonfree_gaps(lo: f64, hi: f64, free: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut gaps = Vec::new();
    let mut cursor = lo;
    let mut cursor_free = false;
    for &(a, b) in free {
        let start = if cursor_free { cursor + NONFREE_MARGIN } else { cursor };
        let end = a - NONFREE_MARGIN;
        if a > cursor && start <= end {
            gaps.push((start, end));
        }
        cursor = b;
        cursor_free = true;
    }
    let start = if cursor_free { cursor + NONFREE_MARGIN } else { cursor };
    if (!cursor_free || cursor < hi) && start <= hi {
        gaps.push((start, hi));
    }
    gaps
}

/// [`nonfree_gaps`] for the boundary `center × other[lo..=hi]`, trimmed
/// against the exact circle intersection of the segments at both ends of
/// every gap, with both ends moved until they test non-free. Free intervals
/// are shrunk slightly so that their endpoints test free; this keeps the
/// gaps clear of the free points that were given up in the process.
pub fn nonfree_gaps_on(center: Point, other: &Curve, lo: f64, hi: f64, free: &[(f64, f64)], delta: f64) -> Vec<(f64, f64)> {
    let last = other.last_index();
    let mut out = Vec::new();
    for (a, b) in nonfree_gaps(lo, hi, free) {
        if last == 0 {
            out.push((a, b));
            continue;
        }
        let ka = (a.floor() as usize).min(last - 1);
        let kb = (b.ceil() as usize).saturating_sub(1).clamp(ka, last - 1);
        let mut parts = vec![(a, b)];
        for k in [ka, kb] {
            let Some((x0, x1)) = circle_segment_params(center, delta, other.segment(k)).bounds() else {
                continue;
            };
            let (x0, x1) = (k as f64 + x0 - NONFREE_MARGIN, k as f64 + x1 + NONFREE_MARGIN);
            parts = parts
                .into_iter()
                .flat_map(|(u, v)| {
                    if x1 < u || x0 > v {
                        return vec![(u, v)];
                    }
                    [(u, x0), (x1, v)].into_iter().filter(|(s, t)| s <= t).collect()
                })
                .collect();
            if ka == kb {
                break;
            }
        }
        // near a tangency the distance grows only quadratically, so the
        // margin alone may still test free
        let r2 = delta * delta;
        let outside = |t: f64| sq_dist(center, other.point_at(t)) > r2;
        for (mut u, mut v) in parts {
            let mut step = NONFREE_MARGIN;
            while u <= v && !outside(u) {
                u += step;
                step *= 2.0;
            }
            step = NONFREE_MARGIN;
            while u <= v && !outside(v) {
                v -= step;
                step *= 2.0;
            }
            if u <= v {
                out.push((u, v));
            }
        }
    }
    out
}

/// Reachable parts of the right and top boundary of the cell with lower
/// left corner `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellOutputs {
    /// Free interval of the right boundary (q coordinates).
    pub right_free: Option<(f64, f64)>,
    /// Free interval of the top boundary (p coordinates).
    pub top_free: Option<(f64, f64)>,
    pub right: Option<(f64, f64)>,
    pub top: Option<(f64, f64)>,
}

/// Propagates reachability through the cell `[i, i+1] × [j, j+1]`.
///
/// `left_low` is the lowest reachable q on the left boundary and
/// `bottom_left` the leftmost reachable p on the bottom boundary. F inside
/// a cell is convex, so a free output point is reachable iff some input
/// point is componentwise below it.
pub fn cell_propagate(
    pi: &Curve,
    sigma: &Curve,
    i: usize,
    j: usize,
    left_low: Option<f64>,
    bottom_left: Option<f64>,
    delta: f64,
) -> CellOutputs {
    if left_low.is_none() && bottom_left.is_none() {
        return CellOutputs {
            right_free: None,
            top_free: None,
            right: None,
            top: None,
        };
    }
    let right_center = pi.vertex(i + 1);
    let top_center = sigma.vertex(j + 1);
    let right_free = free_piece(right_center, sigma, j, delta);
    let top_free = free_piece(top_center, pi, i, delta);

    let right = right_free.and_then(|(lo, hi)| match (bottom_left, left_low) {
        (Some(_), _) => Some((lo, hi)),
        (None, Some(l)) if l <= lo => Some((lo, hi)),
        (None, Some(l)) => first_free_at_or_after(right_center, sigma, l, hi, delta).map(|s| (s, hi)),
        (None, None) => None,
    });
    let top = top_free.and_then(|(lo, hi)| match (left_low, bottom_left) {
        (Some(_), _) => Some((lo, hi)),
        (None, Some(b)) if b <= lo => Some((lo, hi)),
        (None, Some(b)) => first_free_at_or_after(top_center, pi, b, hi, delta).map(|s| (s, hi)),
        (None, None) => None,
    });
    CellOutputs {
        right_free,
        top_free,
        right,
        top,
    }
}
