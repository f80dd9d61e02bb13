//! Reference decider: full cell-by-cell dynamic program over the whole
//! free-space diagram, using nothing but circle/segment intersections.

use crate::complete::Verdict;
use crate::curves::Curve;
use crate::geometry::{circle_segment_params, sq_dist, Segment};

type Iv = Option<(f64, f64)>;

fn params(c: crate::geometry::Point, delta: f64, s: Segment) -> Iv {
    circle_segment_params(c, delta, s).bounds()
}

/// Decides `d_F(π, σ) ≤ delta` in `O(nm)` time and `O(m)` space.
pub fn naive_dp_decide(pi: &Curve, sigma: &Curve, delta: f64) -> Verdict {
    let (a, b) = (pi.vertices(), sigma.vertices());
    let (n1, m1) = (a.len() - 1, b.len() - 1);
    let r2 = delta * delta;
    if sq_dist(a[0], b[0]) > r2 || sq_dist(a[n1], b[m1]) > r2 {
        return Verdict::Far;
    }
    let verdict = |ok: bool| if ok { Verdict::Close } else { Verdict::Far };
    if n1 == 0 || m1 == 0 {
        let (c, other) = if n1 == 0 { (a[0], b) } else { (b[0], a) };
        let all = (0..other.len() - 1).all(|k| {
            params(c, delta, Segment::new(other[k], other[k + 1])) == Some((0.0, 1.0))
        });
        return verdict(all);
    }

    // bottom[i]: reachable part of the bottom edge of cell (i, j) in the
    // current row; left: reachable part of the left edge of the current cell
    let mut bottom: Vec<Iv> = Vec::with_capacity(n1);
    let mut open = true;
    for i in 0..n1 {
        let f = params(b[0], delta, Segment::new(a[i], a[i + 1]));
        let r = match f {
            Some((lo, hi)) if open && lo == 0.0 => Some((lo, hi)),
            _ => None,
        };
        open = matches!(r, Some((_, hi)) if hi == 1.0);
        bottom.push(r);
    }
    let mut left_open = true;
    let mut last_right: Iv = None;
    for j in 0..m1 {
        let seg_b = Segment::new(b[j], b[j + 1]);
        let f = params(a[0], delta, seg_b);
        let mut left = match f {
            Some((lo, hi)) if left_open && lo == 0.0 => Some((lo, hi)),
            _ => None,
        };
        left_open = matches!(left, Some((_, hi)) if hi == 1.0);
        for i in 0..n1 {
            let right_free = params(a[i + 1], delta, seg_b);
            let top_free = params(b[j + 1], delta, Segment::new(a[i], a[i + 1]));
            let bot = bottom[i];
            let right = match (bot, left, right_free) {
                (_, _, None) => None,
                (Some(_), _, f) => f,
                (None, Some((l, _)), Some((lo, hi))) => (l.max(lo) <= hi).then_some((l.max(lo), hi)),
                (None, None, _) => None,
            };
            let top = match (left, bot, top_free) {
                (_, _, None) => None,
                (Some(_), _, f) => f,
                (None, Some((l, _)), Some((lo, hi))) => (l.max(lo) <= hi).then_some((l.max(lo), hi)),
                (None, None, _) => None,
            };
            bottom[i] = top;
            left = right;
        }
        last_right = left;
    }
    let via_right = matches!(last_right, Some((_, hi)) if hi == 1.0);
    let via_top = matches!(bottom[n1 - 1], Some((_, hi)) if hi == 1.0);
    verdict(via_right || via_top)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(xy: &[(f64, f64)]) -> Curve {
        Curve::from_xy("t", xy).unwrap()
    }

    #[test]
    fn small_examples() {
        let a = curve(&[(0.0, 0.0), (1.0, 0.0)]);
        let b = curve(&[(0.0, 1.0), (1.0, 1.0)]);
        assert_eq!(naive_dp_decide(&a, &b, 1.0), Verdict::Close);
        assert_eq!(naive_dp_decide(&a, &b, 0.999), Verdict::Far);
        let c = curve(&[(0.0, 0.0), (2.0, 0.0)]);
        let d = curve(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert_eq!(naive_dp_decide(&c, &d, 1.0), Verdict::Close);
        assert_eq!(naive_dp_decide(&c, &d, 0.99), Verdict::Far);
    }

    #[test]
    fn backtracking_curve_needs_wide_delta() {
        // σ goes forward, back, forward; π straight
        let a = curve(&[(0.0, 0.0), (4.0, 0.0)]);
        let b = curve(&[(0.0, 0.0), (3.0, 0.0), (1.0, 0.0), (4.0, 0.0)]);
        assert_eq!(naive_dp_decide(&a, &b, 0.9), Verdict::Far);
        assert_eq!(naive_dp_decide(&a, &b, 1.0), Verdict::Close);
    }

    #[test]
    fn point_versus_curve() {
        let p = curve(&[(0.0, 0.0)]);
        let s = curve(&[(0.0, 1.0), (1.0, 1.0), (0.0, 2.0)]);
        assert_eq!(naive_dp_decide(&p, &s, 2.0), Verdict::Close);
        assert_eq!(naive_dp_decide(&s, &p, 1.9), Verdict::Far);
    }
}
