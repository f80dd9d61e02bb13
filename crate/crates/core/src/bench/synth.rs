//! Synthetic curve datasets: clusters of noisy copies of random walks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::Curve;
use crate::geometry::Point;

/// Step lengths of a random walk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepLength {
    Uniform { min: f64, max: f64 },
    /// Exponentially distributed, mostly short steps with rare long jumps.
    Exponential { mean: f64 },
}

impl StepLength {
    fn sample(&self, rng: &mut impl Rng) -> f64 {
        match *self {
            StepLength::Uniform { min, max } if min < max => rng.gen_range(min..max),
            StepLength::Uniform { min, .. } => min,
            StepLength::Exponential { mean } => -mean * (1.0 - rng.gen::<f64>()).ln(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WalkParams {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub step: StepLength,
    /// Largest heading change per step, in radians.
    pub max_turn: f64,
}

impl Default for WalkParams {
    fn default() -> Self {
        WalkParams {
            min_vertices: 2,
            max_vertices: 30,
            step: StepLength::Uniform { min: 0.2, max: 1.0 },
            max_turn: 1.2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SynthParams {
    pub clusters: usize,
    pub per_cluster: usize,
    /// Vertex jitter of the copies, relative to the mean step length.
    pub noise: f64,
    /// Spread of the cluster origins.
    pub extent: f64,
    pub walk: WalkParams,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            clusters: 8,
            per_cluster: 8,
            noise: 0.3,
            extent: 10.0,
            walk: WalkParams::default(),
        }
    }
}

pub fn random_walk(rng: &mut impl Rng, id: impl Into<String>, origin: Point, params: &WalkParams) -> Curve {
    let n = rng.gen_range(params.min_vertices.max(1)..=params.max_vertices.max(params.min_vertices).max(1));
    let mut heading = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut p = origin;
    let mut pts = Vec::with_capacity(n);
    pts.push(p);
    for _ in 1..n {
        heading += rng.gen_range(-params.max_turn..=params.max_turn);
        let len = params.step.sample(rng);
        p = Point::new(p.x + len * heading.cos(), p.y + len * heading.sin());
        pts.push(p);
    }
    Curve::new(id, pts).expect("random walk has at least one vertex")
}

/// Resamples `base` at `m` evenly spaced parameters and jitters every
/// vertex by up to `noise` in each coordinate.
pub fn noisy_copy(rng: &mut impl Rng, id: impl Into<String>, base: &Curve, m: usize, noise: f64) -> Curve {
    let m = m.max(1);
    let last = base.last_index() as f64;
    let pts = (0..m)
        .map(|k| {
            let t = if m == 1 { 0.0 } else { last * k as f64 / (m - 1) as f64 };
            let v = base.point_at(t);
            let (dx, dy) = if noise > 0.0 {
                (rng.gen_range(-noise..=noise), rng.gen_range(-noise..=noise))
            } else {
                (0.0, 0.0)
            };
            Point::new(v.x + dx, v.y + dy)
        })
        .collect();
    Curve::new(id, pts).expect("copy has at least one vertex")
}

fn mean_step(step: &StepLength) -> f64 {
    match *step {
        StepLength::Uniform { min, max } => 0.5 * (min + max),
        StepLength::Exponential { mean } => mean,
    }
}

/// Deterministic dataset for `seed`. Curve ids are `c0000`, `c0001`, …
/// in generation order; the first curve of each cluster is its walk.
pub fn synth_dataset(params: &SynthParams, seed: u64) -> Vec<Curve> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = params.noise * mean_step(&params.walk.step);
    let mut out = Vec::with_capacity(params.clusters * params.per_cluster);
    for _ in 0..params.clusters {
        let origin = Point::new(
            rng.gen_range(-params.extent..=params.extent),
            rng.gen_range(-params.extent..=params.extent),
        );
        let base = random_walk(&mut rng, format!("c{:04}", out.len()), origin, &params.walk);
        let n = base.len();
        out.push(base.clone());
        for _ in 1..params.per_cluster {
            let lo = params.walk.min_vertices.max(1);
            let hi = params.walk.max_vertices.max(lo);
            let m = rng.gen_range(lo..=hi).max((n / 2).max(1)).min(hi);
            let copy = noisy_copy(&mut rng, format!("c{:04}", out.len()), &base, m, noise);
            out.push(copy);
        }
    }
    out
}

/// A pair of similar zigzags with many narrow passages in their diagram:
/// `σ` follows `π` with a slight phase shift and offset.
pub fn zigzag_pair(teeth: usize) -> (Curve, Curve) {
    let teeth = teeth.max(1);
    let pi: Vec<Point> = (0..=2 * teeth)
        .map(|k| Point::new(k as f64, if k % 2 == 0 { 0.0 } else { 1.0 }))
        .collect();
    let sigma: Vec<Point> = (0..=2 * teeth)
        .map(|k| {
            let x = k as f64 + if k == 0 || k == 2 * teeth { 0.0 } else { 0.15 };
            Point::new(x, if k % 2 == 0 { 0.1 } else { 0.9 })
        })
        .collect();
    (
        Curve::new("zigzag-a", pi).expect("non-empty"),
        Curve::new("zigzag-b", sigma).expect("non-empty"),
    )
}
