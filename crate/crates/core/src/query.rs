//! Near-neighbor queries over a curve dataset: an 8-dimensional kd-tree on
//! endpoint and bounding-box coordinates produces candidates, and each
//! candidate is then decided.

use rayon::prelude::*;

use crate::curves::Curve;
use crate::decider::decide;

pub const DIMS: usize = 8;
const LEAF_SIZE: usize = 16;

/// `(start x, start y, end x, end y, min x, min y, max x, max y)`.
///
/// If `d_F(π, σ) ≤ δ`, every coordinate of `key(σ)` is within `δ` of the
/// same coordinate of `key(π)`: starts and ends are matched to each other,
/// and every point of one curve is within `δ` of some point of the other.
pub type KdKey8 = [f64; DIMS];

pub fn curve_key(c: &Curve) -> KdKey8 {
    let (s, e, b) = (c.first(), c.last(), c.bbox());
    [s.x, s.y, e.x, e.y, b.min_x, b.min_y, b.max_x, b.max_y]
}

#[derive(Clone, Debug)]
enum Node {
    Leaf { start: usize, end: usize },
    Inner { dim: usize, split: f64, left: usize, right: usize },
}

/// Static balanced kd-tree over keys, identified by their position in the
/// input.
#[derive(Clone, Debug)]
pub struct KdTree8 {
    keys: Vec<KdKey8>,
    order: Vec<usize>,
    nodes: Vec<Node>,
}

impl KdTree8 {
    pub fn new(keys: Vec<KdKey8>) -> Self {
        let mut tree = KdTree8 {
            order: (0..keys.len()).collect(),
            keys,
            nodes: Vec::new(),
        };
        let n = tree.order.len();
        tree.build(0, n, 0);
        tree
    }

    pub fn from_curves(curves: &[Curve]) -> Self {
        KdTree8::new(curves.iter().map(curve_key).collect())
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    fn build(&mut self, start: usize, end: usize, depth: usize) -> usize {
        let id = self.nodes.len();
        if end - start <= LEAF_SIZE {
            self.nodes.push(Node::Leaf { start, end });
            return id;
        }
        let dim = depth % DIMS;
        let mid = start + (end - start) / 2;
        let keys = &self.keys;
        self.order[start..end].select_nth_unstable_by(mid - start, |&a, &b| keys[a][dim].total_cmp(&keys[b][dim]));
        let split = self.keys[self.order[mid]][dim];
        self.nodes.push(Node::Leaf { start, end });
        let left = self.build(start, mid, depth + 1);
        let right = self.build(mid, end, depth + 1);
        self.nodes[id] = Node::Inner { dim, split, left, right };
        id
    }

    /// Positions of all keys inside the closed box `[lo, hi]`, ascending.
    pub fn range(&self, lo: &KdKey8, hi: &KdKey8) -> Vec<usize> {
        let mut out = Vec::new();
        if !self.nodes.is_empty() {
            self.visit(0, lo, hi, &mut out);
        }
        out.sort_unstable();
        out
    }

    fn visit(&self, node: usize, lo: &KdKey8, hi: &KdKey8, out: &mut Vec<usize>) {
        match self.nodes[node] {
            Node::Leaf { start, end } => {
                for &k in &self.order[start..end] {
                    let key = &self.keys[k];
                    if (0..DIMS).all(|d| lo[d] <= key[d] && key[d] <= hi[d]) {
                        out.push(k);
                    }
                }
            }
            Node::Inner { dim, split, left, right } => {
                // left holds keys ≤ split, right keys ≥ split
                if lo[dim] <= split {
                    self.visit(left, lo, hi, out);
                }
                if hi[dim] >= split {
                    self.visit(right, lo, hi, out);
                }
            }
        }
    }
}

/// Dataset positions whose key lies within `delta` of `key(π)` in every
/// coordinate. A superset of the curves within Fréchet distance `delta`;
/// the box is widened by a few ulps so that rounding cannot drop a curve
/// at distance exactly `delta`.
pub fn candidates(tree: &KdTree8, pi: &Curve, delta: f64) -> Vec<usize> {
    let key = curve_key(pi);
    let pad = |v: f64| delta + 1e-12 * (v.abs() + delta);
    let lo = key.map(|v| v - pad(v));
    let hi = key.map(|v| v + pad(v));
    tree.range(&lo, &hi)
}

/// Dataset positions of all curves within Fréchet distance `delta` of `π`,
/// in dataset order. Candidates are decided on `threads` workers.
pub fn find_close_curves(tree: &KdTree8, dataset: &[Curve], pi: &Curve, delta: f64, threads: usize) -> Vec<usize> {
    let cands = candidates(tree, pi, delta);
    let run = || -> Vec<usize> {
        cands
            .par_iter()
            .copied()
            .filter(|&k| decide(pi, &dataset[k], delta, false).is_close())
            .collect()
    };
    if threads <= 1 {
        return cands
            .into_iter()
            .filter(|&k| decide(pi, &dataset[k], delta, false).is_close())
            .collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_keys(rng: &mut impl Rng, n: usize) -> Vec<KdKey8> {
        (0..n)
            .map(|_| {
                let mut k = [0.0; DIMS];
                for v in k.iter_mut() {
                    // coarse values so that split ties occur
                    *v = rng.gen_range(0..10) as f64;
                }
                k
            })
            .collect()
    }

    #[test]
    fn single_curve_is_single_leaf() {
        let c = Curve::from_xy("a", &[(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let t = KdTree8::from_curves(std::slice::from_ref(&c));
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(candidates(&t, &c, 0.0), vec![0]);
    }

    #[test]
    fn whole_space_returns_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = KdTree8::new(random_keys(&mut rng, 500));
        let all = t.range(&[f64::NEG_INFINITY; DIMS], &[f64::INFINITY; DIMS]);
        assert_eq!(all, (0..500).collect::<Vec<_>>());
    }

    #[test]
    fn range_matches_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let n = rng.gen_range(0..400);
            let keys = random_keys(&mut rng, n);
            let t = KdTree8::new(keys.clone());
            for _ in 0..20 {
                let mut lo = [0.0; DIMS];
                let mut hi = [0.0; DIMS];
                for d in 0..DIMS {
                    let a = rng.gen_range(-1..11) as f64;
                    let b = rng.gen_range(-1..11) as f64;
                    lo[d] = a.min(b);
                    hi[d] = a.max(b);
                }
                let expected: Vec<usize> = (0..n)
                    .filter(|&k| (0..DIMS).all(|d| lo[d] <= keys[k][d] && keys[k][d] <= hi[d]))
                    .collect();
                assert_eq!(t.range(&lo, &hi), expected);
            }
        }
    }
}
