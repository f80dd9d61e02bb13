//! Planar primitives used by every other module.
//!
//! Distance comparisons are done on squared values against `δ²`. The only
//! square root in this module is the one in [`circle_segment_params`], and it
//! is taken after the discriminant has been checked.

use std::fmt;

/// Discriminants in `[-TANGENCY_EPS, 0)` are treated as grazing contact.
pub const TANGENCY_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub const fn new(start: Point, end: Point) -> Self {
        Segment { start, end }
    }

    pub fn is_degenerate(&self) -> bool {
        self.start == self.end
    }
}

/// A closed sub-interval of `[0, 1]`, or empty.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitInterval {
    bounds: Option<(f64, f64)>,
}

impl UnitInterval {
    pub const EMPTY: UnitInterval = UnitInterval { bounds: None };
    pub const FULL: UnitInterval = UnitInterval {
        bounds: Some((0.0, 1.0)),
    };

    /// Builds an interval, clamping endpoints that stray outside `[0, 1]` by
    /// at most `1e-12`. Anything further out, or `lo > hi`, yields empty.
    pub fn new(lo: f64, hi: f64) -> Self {
        const SLACK: f64 = 1e-12;
        if lo.is_nan() || hi.is_nan() || lo > hi || hi < -SLACK || lo > 1.0 + SLACK {
            return Self::EMPTY;
        }
        UnitInterval {
            bounds: Some((lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0))),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        self.bounds
    }

    pub fn lo(&self) -> Option<f64> {
        self.bounds.map(|b| b.0)
    }

    pub fn hi(&self) -> Option<f64> {
        self.bounds.map(|b| b.1)
    }

    pub fn contains(&self, t: f64) -> bool {
        matches!(self.bounds, Some((lo, hi)) if lo <= t && t <= hi)
    }

    /// True if `self ⊆ other`.
    pub fn is_subset_of(&self, other: &UnitInterval) -> bool {
        match (self.bounds, other.bounds) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a, b)), Some((c, d))) => c <= a && b <= d,
        }
    }
}

#[inline]
pub fn sq_dist(a: Point, b: Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

#[inline]
pub fn dist(a: Point, b: Point) -> f64 {
    sq_dist(a, b).sqrt()
}

/// Convex combination `(1 - t)·start + t·end`. `t = 0` returns `start`
/// bitwise, `t = 1` returns `end` bitwise.
#[inline]
pub fn interpolate(s: Segment, t: f64) -> Point {
    if t == 0.0 || s.is_degenerate() {
        return s.start;
    }
    if t == 1.0 {
        return s.end;
    }
    Point {
        x: (1.0 - t) * s.start.x + t * s.end.x,
        y: (1.0 - t) * s.start.y + t * s.end.y,
    }
}

/// Parameters `t ∈ [0, 1]` whose interpolated point lies in the closed disk
/// of `radius` around `center`.
///
/// Endpoints of the segment that lie inside the disk snap the interval to 0
/// or 1 exactly, so callers can glue pieces of consecutive segments.
pub fn circle_segment_params(center: Point, radius: f64, s: Segment) -> UnitInterval {
    let r2 = radius * radius;
    let start_in = sq_dist(center, s.start) <= r2;
    if s.is_degenerate() {
        return if start_in {
            UnitInterval::FULL
        } else {
            UnitInterval::EMPTY
        };
    }
    let end_in = sq_dist(center, s.end) <= r2;
    if start_in && end_in {
        // disk is convex
        return UnitInterval::FULL;
    }

    // |start + t·d − center|² = r²  ⇔  a t² + 2 b t + c = 0
    let dx = s.end.x - s.start.x;
    let dy = s.end.y - s.start.y;
    let fx = s.start.x - center.x;
    let fy = s.start.y - center.y;
    let a = dx * dx + dy * dy;
    let b = fx * dx + fy * dy;
    let c = fx * fx + fy * fy - r2;
    let disc = b * b - a * c;
    // relative scale for the tangency window
    let scale = (b * b).max((a * c).abs()).max(f64::MIN_POSITIVE);
    if disc < 0.0 && disc < -TANGENCY_EPS * scale {
        return UnitInterval::EMPTY;
    }
    let root = if disc > 0.0 { disc.sqrt() } else { 0.0 };
    let (mut t0, mut t1) = ((-b - root) / a, (-b + root) / a);
    if start_in {
        t0 = 0.0;
    }
    if end_in {
        t1 = 1.0;
    }
    if t1 < 0.0 || t0 > 1.0 {
        return UnitInterval::EMPTY;
    }
    UnitInterval::new(t0.max(0.0), t1.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
        Segment::new(Point::new(ax, ay), Point::new(bx, by))
    }

    /// Dense membership oracle: the sampled parameters inside the disk.
    fn sampled_extent(center: Point, r: f64, s: Segment, samples: usize) -> Option<(f64, f64)> {
        let mut lo = None;
        let mut hi = None;
        for k in 0..=samples {
            let t = k as f64 / samples as f64;
            if sq_dist(interpolate(s, t), center) <= r * r {
                lo.get_or_insert(t);
                hi = Some(t);
            }
        }
        lo.zip(hi)
    }

    #[test]
    fn sq_dist_examples() {
        assert_eq!(sq_dist(Point::new(0.0, 0.0), Point::new(3.0, 4.0)), 25.0);
        assert_eq!(sq_dist(Point::new(1.0, 1.0), Point::new(1.0, 1.0)), 0.0);
        assert_eq!(sq_dist(Point::new(-1.0, 0.0), Point::new(2.0, 0.0)), 9.0);
    }

    #[test]
    fn interpolate_examples() {
        assert_eq!(interpolate(seg(0.0, 0.0, 2.0, 0.0), 0.5), Point::new(1.0, 0.0));
        assert_eq!(interpolate(seg(1.0, 2.0, 1.0, 2.0), 0.7), Point::new(1.0, 2.0));
        assert_eq!(interpolate(seg(0.0, 0.0, 4.0, 8.0), 0.25), Point::new(1.0, 2.0));
        let s = seg(0.1, 0.7, 0.3, -5.0);
        assert_eq!(interpolate(s, 0.0), s.start);
        assert_eq!(interpolate(s, 1.0), s.end);
    }

    #[test]
    fn circle_vertical_chord() {
        // 16 t² − 16 t + 3 = 0 → t = 1/4, 3/4
        let iv = circle_segment_params(Point::new(0.0, 0.0), 1.0, seg(0.0, -2.0, 0.0, 2.0));
        let (lo, hi) = iv.bounds().unwrap();
        assert!((lo - 0.25).abs() < 1e-15);
        assert!((hi - 0.75).abs() < 1e-15);
        let (slo, shi) = sampled_extent(Point::new(0.0, 0.0), 1.0, seg(0.0, -2.0, 0.0, 2.0), 1000).unwrap();
        assert!((slo - lo).abs() <= 1e-3 && (shi - hi).abs() <= 1e-3);
    }

    #[test]
    fn circle_contains_and_disjoint() {
        let c = Point::new(0.0, 0.0);
        assert_eq!(circle_segment_params(c, 10.0, seg(1.0, 1.0, 2.0, 2.0)), UnitInterval::FULL);
        assert!(circle_segment_params(c, 1.0, seg(5.0, 5.0, 6.0, 5.0)).is_empty());
    }

    #[test]
    fn circle_degenerate_segment() {
        let c = Point::new(0.0, 0.0);
        assert_eq!(circle_segment_params(c, 1.0, seg(0.5, 0.5, 0.5, 0.5)), UnitInterval::FULL);
        assert!(circle_segment_params(c, 0.1, seg(0.5, 0.5, 0.5, 0.5)).is_empty());
    }

    #[test]
    fn circle_tangent_is_single_point() {
        let iv = circle_segment_params(Point::new(0.0, 1.0), 1.0, seg(-1.0, 0.0, 1.0, 0.0));
        let (lo, hi) = iv.bounds().expect("tangency counts as contact");
        assert!((lo - 0.5).abs() < 1e-12 && (hi - 0.5).abs() < 1e-12);
    }

    #[test]
    fn circle_zero_radius_on_segment() {
        let iv = circle_segment_params(Point::new(1.0, 0.0), 0.0, seg(0.0, 0.0, 2.0, 0.0));
        let (lo, hi) = iv.bounds().unwrap();
        assert!((lo - 0.5).abs() < 1e-12 && (hi - 0.5).abs() < 1e-12);
    }

    #[test]
    fn unit_interval_clamps_small_overshoot() {
        assert_eq!(UnitInterval::new(-1e-13, 1.0 + 1e-13), UnitInterval::FULL);
        assert!(UnitInterval::new(0.6, 0.4).is_empty());
        assert!(UnitInterval::new(1.1, 1.2).is_empty());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coord() -> impl Strategy<Value = f64> {
            -10.0f64..10.0
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(2000))]

            #[test]
            fn matches_dense_sampling(cx in coord(), cy in coord(), r in 0.0f64..8.0,
                                      ax in coord(), ay in coord(), bx in coord(), by in coord()) {
                let c = Point::new(cx, cy);
                let s = seg(ax, ay, bx, by);
                let iv = circle_segment_params(c, r, s);
                let samples = 1000;
                // every sample inside the disk is inside the interval (up to 1e-6)
                for k in 0..=samples {
                    let t = k as f64 / samples as f64;
                    let inside = sq_dist(interpolate(s, t), c) <= r * r;
                    if inside {
                        let (lo, hi) = iv.bounds().expect("sampled point inside but interval empty");
                        prop_assert!(lo - 1e-6 <= t && t <= hi + 1e-6);
                    }
                }
                // interval endpoints lie on or inside the circle
                if let Some((lo, hi)) = iv.bounds() {
                    let tol = 1e-9 * (1.0 + r * r);
                    prop_assert!(sq_dist(interpolate(s, lo), c) <= r * r + tol);
                    prop_assert!(sq_dist(interpolate(s, hi), c) <= r * r + tol);
                }
            }

            #[test]
            fn monotone_in_radius(cx in coord(), cy in coord(), r1 in 0.0f64..8.0, dr in 0.0f64..4.0,
                                  ax in coord(), ay in coord(), bx in coord(), by in coord()) {
                let c = Point::new(cx, cy);
                let s = seg(ax, ay, bx, by);
                let small = circle_segment_params(c, r1, s);
                let large = circle_segment_params(c, r1 + dr, s);
                if let (Some((a, b)), Some((cc, d))) = (small.bounds(), large.bounds()) {
                    prop_assert!(cc <= a + 1e-9 && b <= d + 1e-9);
                } else {
                    prop_assert!(small.is_empty());
                }
            }

            #[test]
            fn sq_dist_symmetric(ax in coord(), ay in coord(), bx in coord(), by in coord()) {
                let a = Point::new(ax, ay);
                let b = Point::new(bx, by);
                prop_assert_eq!(sq_dist(a, b), sq_dist(b, a));
                prop_assert_eq!(sq_dist(a, a), 0.0);
            }
        }
    }
}
