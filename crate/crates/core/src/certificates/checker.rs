//! Stand-alone certificate checker.
//!
//! Only relies on the curve vertices and the geometric primitives; none of
//! the decider machinery is involved.

use crate::curves::Curve;
use crate::geometry::{circle_segment_params, interpolate, sq_dist, Point, Segment};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    BadStart,
    BadEnd,
    /// Step `k → k+1` moves backwards, or repeats a point.
    NonMonotoneStep(usize),
    /// A point that must be free is not (or lies outside the diagram).
    NonFreePoint(usize),
    /// Step `k → k+1` is diagonal but leaves a single cell.
    CellViolation(usize),
    /// A stretch that must be non-free meets F on step `k → k+1`.
    FreePiece(usize),
    /// Step `k → k+1` is none of the allowed kinds.
    BadStep(usize),
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::BadStart => write!(f, "bad-start"),
            Rejection::BadEnd => write!(f, "bad-end"),
            Rejection::NonMonotoneStep(k) => write!(f, "non-monotone-step({k})"),
            Rejection::NonFreePoint(k) => write!(f, "non-free-point({k})"),
            Rejection::CellViolation(k) => write!(f, "cell-violation({k})"),
            Rejection::FreePiece(k) => write!(f, "free-piece({k})"),
            Rejection::BadStep(k) => write!(f, "bad-step({k})"),
        }
    }
}

struct Instance<'a> {
    a: &'a [Point],
    b: &'a [Point],
    r2: f64,
    delta: f64,
    n1: f64,
    m1: f64,
}

fn at(v: &[Point], t: f64) -> Point {
    let last = v.len() - 1;
    if t <= 0.0 {
        return v[0];
    }
    if t >= last as f64 {
        return v[last];
    }
    let k = t.floor() as usize;
    interpolate(Segment::new(v[k], v[k + 1]), t - k as f64)
}

impl Instance<'_> {
    fn inside(&self, p: f64, q: f64) -> bool {
        (0.0..=self.n1).contains(&p) && (0.0..=self.m1).contains(&q)
    }

    fn free(&self, p: f64, q: f64) -> bool {
        self.inside(p, q) && sq_dist(at(self.a, p), at(self.b, q)) <= self.r2
    }

    /// `t, ⌈t⌉, …, ⌊t'⌋, t'` without repeats.
    fn breakpoints(t: f64, t2: f64) -> Vec<f64> {
        let mut v = vec![t];
        let mut k = t.ceil();
        while k <= t2.floor() {
            if k > t {
                v.push(k);
            }
            k += 1.0;
        }
        if *v.last().unwrap() < t2 {
            v.push(t2);
        }
        v
    }

    /// Whether the point `center` stays more than `delta` away from the
    /// stretch `[u, u2]` of `curve` (a single segment).
    fn piece_far(&self, center: Point, curve: &[Point], u: f64, u2: f64) -> bool {
        let last = curve.len() - 1;
        let k = (u.floor() as usize).min(last.saturating_sub(1));
        if last == 0 {
            return sq_dist(center, curve[0]) > self.r2;
        }
        let free = circle_segment_params(center, self.delta, Segment::new(curve[k], curve[k + 1]));
        match free.bounds() {
            None => true,
            Some((lo, hi)) => hi < u - k as f64 || lo > u2 - k as f64,
        }
    }
}

pub fn check_yes(pi: &Curve, sigma: &Curve, delta: f64, points: &[(f64, f64)]) -> Result<(), Rejection> {
    let x = Instance {
        a: pi.vertices(),
        b: sigma.vertices(),
        r2: delta * delta,
        delta,
        n1: (pi.len() - 1) as f64,
        m1: (sigma.len() - 1) as f64,
    };
    match points.first() {
        Some(&(p, q)) if p == 0.0 && q == 0.0 && x.free(0.0, 0.0) => {}
        _ => return Err(Rejection::BadStart),
    }
    match points.last() {
        Some(&(p, q)) if p == x.n1 && q == x.m1 && x.free(p, q) => {}
        _ => return Err(Rejection::BadEnd),
    }
    for (k, w) in points.windows(2).enumerate() {
        let ((p, q), (p2, q2)) = (w[0], w[1]);
        let ok = if p2 == p && q2 > q {
            Instance::breakpoints(q, q2).iter().all(|&t| x.free(p, t))
        } else if q2 == q && p2 > p {
            Instance::breakpoints(p, p2).iter().all(|&t| x.free(t, q))
        } else if p < p2 && q < q2 {
            if p2.ceil() > p.floor() + 1.0 || q2.ceil() > q.floor() + 1.0 {
                return Err(Rejection::CellViolation(k));
            }
            x.free(p, q) && x.free(p2, q2)
        } else {
            return Err(Rejection::NonMonotoneStep(k));
        };
        if !ok {
            return Err(Rejection::NonFreePoint(k));
        }
    }
    Ok(())
}

pub fn check_no(pi: &Curve, sigma: &Curve, delta: f64, points: &[(f64, f64)]) -> Result<(), Rejection> {
    let x = Instance {
        a: pi.vertices(),
        b: sigma.vertices(),
        r2: delta * delta,
        delta,
        n1: (pi.len() - 1) as f64,
        m1: (sigma.len() - 1) as f64,
    };
    let non_free = |p: f64, q: f64| x.inside(p, q) && !x.free(p, q);
    match points.first() {
        Some(&(p, q)) if (q == 0.0 || p == x.n1) && non_free(p, q) => {}
        _ => return Err(Rejection::BadStart),
    }
    match points.last() {
        Some(&(p, q)) if (q == x.m1 || p == 0.0) && non_free(p, q) => {}
        _ => return Err(Rejection::BadEnd),
    }
    for (k, w) in points.windows(2).enumerate() {
        let ((p, q), (p2, q2)) = (w[0], w[1]);
        if !x.inside(p2, q2) {
            return Err(Rejection::BadStep(k));
        }
        let ok = if p2 == p && q2 > q {
            let center = at(x.a, p);
            Instance::breakpoints(q, q2)
                .windows(2)
                .all(|s| x.piece_far(center, x.b, s[0], s[1]))
        } else if q2 == q && p2 < p {
            let center = at(x.b, q);
            Instance::breakpoints(p2, p)
                .windows(2)
                .all(|s| x.piece_far(center, x.a, s[0], s[1]))
        } else if p <= p2 && q >= q2 {
            true
        } else {
            return Err(Rejection::BadStep(k));
        };
        if !ok {
            return Err(Rejection::FreePiece(k));
        }
    }
    Ok(())
}
