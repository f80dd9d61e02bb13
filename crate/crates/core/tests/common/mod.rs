#![allow(dead_code)]

use frechet_core::Curve;
use rand::Rng;

/// Random walk with `n` vertices and unit-ish steps.
pub fn walk(rng: &mut impl Rng, n: usize) -> Curve {
    let mut x = rng.gen_range(-1.0..1.0);
    let mut y = rng.gen_range(-1.0..1.0);
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        pts.push((x, y));
        x += rng.gen_range(-1.0..1.0);
        y += rng.gen_range(-1.0..1.0);
    }
    Curve::from_xy("walk", &pts).unwrap()
}

/// Noisy copy of `c` with `m` vertices resampled along it.
pub fn noisy_copy(rng: &mut impl Rng, c: &Curve, m: usize, noise: f64) -> Curve {
    let last = c.last_index() as f64;
    let mut pts = Vec::with_capacity(m);
    for k in 0..m {
        let t = if m == 1 { 0.0 } else { last * k as f64 / (m - 1) as f64 };
        let p = c.point_at(t);
        pts.push((p.x + rng.gen_range(-noise..=noise), p.y + rng.gen_range(-noise..=noise)));
    }
    Curve::from_xy("copy", &pts).unwrap()
}

/// A pair of related curves and a threshold near their distance scale.
pub fn instance(rng: &mut impl Rng, max_len: usize) -> (Curve, Curve, f64) {
    let n = rng.gen_range(2..=max_len);
    let m = rng.gen_range(2..=max_len);
    let a = walk(rng, n);
    let b = if rng.gen_bool(0.7) {
        let noise = rng.gen_range(0.05..0.8);
        noisy_copy(rng, &a, m, noise)
    } else {
        walk(rng, m)
    };
    let delta = rng.gen_range(0.05..2.5);
    (a, b, delta)
}
