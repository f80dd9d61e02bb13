//! Report-and-delete index over points keyed by `(p, q)`.
//!
//! A query at `(P, Q)` reports and removes every stored point with
//! `p ≥ P` and `q ≤ Q`, i.e. every point to the lower right of `(P, Q)`.

/// Shared interface of the tree and the linear-scan reference.
pub trait ReportDelete {
    /// Reports (by the ids given at construction) and removes every live
    /// entry to the lower right of `(p, q)`.
    fn report_and_delete(&mut self, p: f64, q: f64) -> Vec<usize>;
    fn live(&self) -> usize;
}

/// Priority search tree: entries sorted by `p` at the leaves of a complete
/// binary tree, each inner node holding the minimum `q` of the live entries
/// below it. A query walks the suffix `p ≥ P` and descends only into
/// subtrees whose minimum is `≤ Q`, so it costs `O((k + 1) log d)` for `k`
/// reported entries. Deleted leaves become `+∞`.
#[derive(Clone, Debug)]
pub struct PrioritySearchTree {
    size: usize,
    keys_p: Vec<f64>,
    ids: Vec<usize>,
    min_q: Vec<f64>,
    live: usize,
}

impl PrioritySearchTree {
    pub fn new(entries: &[((f64, f64), usize)]) -> Self {
        let mut sorted: Vec<_> = entries.to_vec();
        sorted.sort_by(|a, b| a.0 .0.total_cmp(&b.0 .0));
        let size = sorted.len().next_power_of_two().max(1);
        let mut min_q = vec![f64::INFINITY; 2 * size];
        for (k, ((_, q), _)) in sorted.iter().enumerate() {
            min_q[size + k] = *q;
        }
        for v in (1..size).rev() {
            min_q[v] = min_q[2 * v].min(min_q[2 * v + 1]);
        }
        PrioritySearchTree {
            size,
            keys_p: sorted.iter().map(|e| e.0 .0).collect(),
            ids: sorted.iter().map(|e| e.1).collect(),
            min_q,
            live: sorted.len(),
        }
    }

    fn collect(&mut self, v: usize, lo: usize, hi: usize, from: usize, q: f64, out: &mut Vec<usize>) {
        if hi <= from || self.min_q[v] > q {
            return;
        }
        if v >= self.size {
            out.push(self.ids[lo]);
            self.min_q[v] = f64::INFINITY;
            self.live -= 1;
            return;
        }
        let mid = (lo + hi) / 2;
        self.collect(2 * v, lo, mid, from, q, out);
        self.collect(2 * v + 1, mid, hi, from, q, out);
        self.min_q[v] = self.min_q[2 * v].min(self.min_q[2 * v + 1]);
    }
}

impl ReportDelete for PrioritySearchTree {
    fn report_and_delete(&mut self, p: f64, q: f64) -> Vec<usize> {
        let from = self.keys_p.partition_point(|&x| x < p);
        let mut out = Vec::new();
        if from < self.keys_p.len() {
            self.collect(1, 0, self.size, from, q, &mut out);
        }
        out
    }

    fn live(&self) -> usize {
        self.live
    }
}

/// Reference implementation by linear scan.
#[derive(Clone, Debug)]
pub struct LinearScan {
    entries: Vec<Option<((f64, f64), usize)>>,
}

impl LinearScan {
    pub fn new(entries: &[((f64, f64), usize)]) -> Self {
        LinearScan {
            entries: entries.iter().copied().map(Some).collect(),
        }
    }
}

impl ReportDelete for LinearScan {
    fn report_and_delete(&mut self, p: f64, q: f64) -> Vec<usize> {
        let mut out = Vec::new();
        for slot in self.entries.iter_mut() {
            if let Some(((kp, kq), id)) = *slot {
                if kp >= p && kq <= q {
                    out.push(id);
                    *slot = None;
                }
            }
        }
        out
    }

    fn live(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }
}
