//! Complete decider: divide-and-conquer exploration of the free-space
//! diagram with pruning rules.
//!
//! A call on a box receives the reachable parts of its left and bottom
//! boundary and produces the reachable parts of its right and top boundary.
//! Before splitting a box in half along its longer side, the following
//! shortcuts are tried, in this order:
//!
//! * empty inputs give empty outputs;
//! * shrink: if one input is empty and the other starts late, the box is cut
//!   down to the part that can still be reached;
//! * simple boundaries: when an output boundary meets F in a single interval,
//!   that interval is the output if it is empty (`IIIa`), if it starts at a
//!   reachable corner (`IIIb`), or if its first point can be reached straight
//!   through the box from the opposite input (`IIIc`);
//! * diagram edge: outputs lying on the top or right edge of the whole
//!   diagram are never read, except at the final corner.
//!
//! When asked to, the exploration also keeps what is needed to certify the
//! answer: a predecessor trace for every reachable interval, and every
//! non-free stretch found along the way.

use crate::curves::Curve;
use crate::freespace::{
    boundary_center, boundary_other, cell_propagate, column_free, free_intervals, nonfree_gaps_on, simple_boundary, Axis, BoundaryInterval,
    ParamPair, SimpleBoundaryResult,
};

/// Which optional pruning rules are active. The empty-input rule is always
/// on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleSet {
    pub shrink: bool,
    pub empty_boundary: bool,
    pub reachable_corner: bool,
    pub through_box: bool,
    pub diagram_edge: bool,
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::ALL
    }
}

impl RuleSet {
    pub const ALL: RuleSet = RuleSet {
        shrink: true,
        empty_boundary: true,
        reachable_corner: true,
        through_box: true,
        diagram_edge: true,
    };

    pub const NONE: RuleSet = RuleSet {
        shrink: false,
        empty_boundary: false,
        reachable_corner: false,
        through_box: false,
        diagram_edge: false,
    };

    /// Disables a rule by its short name: `2`, `3a`, `3b`, `3c` or `4`.
    pub fn without(mut self, name: &str) -> Option<RuleSet> {
        match name {
            "2" => self.shrink = false,
            "3a" => self.empty_boundary = false,
            "3b" => self.reachable_corner = false,
            "3c" => self.through_box = false,
            "4" => self.diagram_edge = false,
            _ => return None,
        }
        Some(self)
    }

    pub fn label(&self) -> String {
        let off: Vec<&str> = [
            (self.shrink, "2"),
            (self.empty_boundary, "3a"),
            (self.reachable_corner, "3b"),
            (self.through_box, "3c"),
            (self.diagram_edge, "4"),
        ]
        .iter()
        .filter(|(on, _)| !on)
        .map(|(_, n)| *n)
        .collect();
        if off.is_empty() {
            "all".to_string()
        } else {
            format!("omit-{}", off.join("+"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Close,
    Far,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Close => "close",
            Verdict::Far => "far",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integer-cornered box `[i, i2] × [j, j2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxRegion {
    pub i: usize,
    pub i2: usize,
    pub j: usize,
    pub j2: usize,
}

impl BoxRegion {
    pub fn is_cell(&self) -> bool {
        self.i + 1 == self.i2 && self.j + 1 == self.j2
    }
}

/// How a box was resolved, for the debug dump.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxOutcome {
    Cell,
    EmptyInputs,
    Rules,
    Split,
}

impl BoxOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoxOutcome::Cell => "cell",
            BoxOutcome::EmptyInputs => "empty-inputs",
            BoxOutcome::Rules => "rules",
            BoxOutcome::Split => "split",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BoxRecord {
    pub region: BoxRegion,
    pub outcome: BoxOutcome,
}

/// How often each shortcut fired.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RuleHits {
    pub cells: u64,
    pub empty_inputs: u64,
    pub shrink: u64,
    pub empty_boundary: u64,
    pub reachable_corner: u64,
    pub through_box: u64,
    pub diagram_edge: u64,
    pub splits: u64,
}

/// Why the first point of a reachable interval is reachable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceKind {
    /// The start `(0, 0)` of the diagram.
    Origin,
    /// Same line as the predecessor, further along it.
    Along,
    /// Propagated through a single cell.
    Cell,
    /// Free top/right interval starting at the reachable corner.
    ReachableCorner,
    /// Straight free path through the box from the opposite input.
    ThroughBox,
}

/// One link of a YES witness: `first` is reached from the first point of
/// `from`, optionally passing through `via`.
#[derive(Clone, Copy, Debug)]
pub struct Trace {
    pub first: ParamPair,
    pub from: Option<u32>,
    pub via: Option<ParamPair>,
    pub kind: TraceKind,
}

/// Everything recorded by one exploration.
#[derive(Clone, Debug, Default)]
pub struct ExplorationLog {
    pub boxes_visited: u64,
    pub max_depth: usize,
    pub hits: RuleHits,
    /// Non-free stretches of every boundary whose free part was computed
    /// exactly. Only filled when certifying.
    pub nonfree: Vec<BoundaryInterval>,
    /// Predecessor links. Only filled when certifying.
    pub traces: Vec<Trace>,
    /// Trace whose interval contains the final corner, for close verdicts.
    pub final_trace: Option<u32>,
    /// Explored boxes in visiting order, when requested.
    pub boxes: Option<Vec<BoxRecord>>,
}

/// A reachable interval on a known boundary line.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Reach {
    lo: f64,
    hi: f64,
    trace: u32,
}

const NO_TRACE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default)]
pub struct ExploreOptions {
    pub rules: RuleSet,
    pub certify: bool,
    pub record_boxes: bool,
}

impl ExploreOptions {
    pub fn with_rules(rules: RuleSet) -> Self {
        ExploreOptions {
            rules,
            ..Default::default()
        }
    }
}

struct Explorer<'a> {
    pi: &'a Curve,
    sigma: &'a Curve,
    delta: f64,
    rules: RuleSet,
    certify: bool,
    n1: usize,
    m1: usize,
    log: ExplorationLog,
}

/// Decides `d_F(π, σ) ≤ delta` by exploring the free-space diagram.
pub fn complete_decide(pi: &Curve, sigma: &Curve, delta: f64, opts: &ExploreOptions) -> (Verdict, ExplorationLog) {
    let mut ex = Explorer {
        pi,
        sigma,
        delta,
        rules: opts.rules,
        certify: opts.certify,
        n1: pi.last_index(),
        m1: sigma.last_index(),
        log: ExplorationLog {
            boxes: opts.record_boxes.then(Vec::new),
            ..Default::default()
        },
    };
    let verdict = ex.run();
    (verdict, ex.log)
}

impl<'a> Explorer<'a> {
    fn run(&mut self) -> Verdict {
        let origin = self.new_trace(ParamPair::new(0.0, 0.0), None, None, TraceKind::Origin);
        let (n1, m1) = (self.n1, self.m1);

        // reachable prefixes of the left and bottom edges of the diagram
        let left_free = self.scan_line(Axis::Vertical, 0.0, m1);
        let bottom_free = self.scan_line(Axis::Horizontal, 0.0, n1);
        let prefix = |free: &[(f64, f64)]| -> Vec<Reach> {
            match free.first() {
                Some(&(lo, hi)) if lo == 0.0 => vec![Reach { lo, hi, trace: origin }],
                _ => Vec::new(),
            }
        };
        let left = prefix(&left_free);
        let bottom = prefix(&bottom_free);

        if n1 == 0 || m1 == 0 {
            // the diagram is a single line (or point); both edges coincide
            self.log.boxes_visited = 1;
            self.log.max_depth = 1;
            let line = if n1 == 0 { &left } else { &bottom };
            let end = if n1 == 0 { m1 } else { n1 } as f64;
            return match line.first() {
                Some(r) if r.hi == end => {
                    self.log.final_trace = Some(r.trace);
                    Verdict::Close
                }
                _ => Verdict::Far,
            };
        }

        let root = BoxRegion { i: 0, i2: n1, j: 0, j2: m1 };
        let (right, top) = self.compute(root, left, bottom, true, true, 1);
        let corner_in = |out: &Option<Vec<Reach>>, end: f64| -> Option<u32> {
            out.as_ref()
                .and_then(|v| v.last())
                .filter(|r| r.hi == end)
                .map(|r| r.trace)
        };
        match corner_in(&right, m1 as f64).or_else(|| corner_in(&top, n1 as f64)) {
            Some(t) => {
                self.log.final_trace = Some(t);
                Verdict::Close
            }
            None => Verdict::Far,
        }
    }

    fn new_trace(&mut self, first: ParamPair, from: Option<u32>, via: Option<ParamPair>, kind: TraceKind) -> u32 {
        if !self.certify {
            return NO_TRACE;
        }
        self.log.traces.push(Trace { first, from, via, kind });
        (self.log.traces.len() - 1) as u32
    }

    fn trace_of(&self, r: &Reach) -> Option<u32> {
        (r.trace != NO_TRACE).then_some(r.trace)
    }

    fn record_gaps(&mut self, axis: Axis, fixed: f64, lo: f64, hi: f64, free: &[(f64, f64)]) {
        if !self.certify {
            return;
        }
        let center = boundary_center(self.pi, self.sigma, axis, fixed);
        let other = boundary_other(self.pi, self.sigma, axis);
        for (a, b) in nonfree_gaps_on(center, other, lo, hi, free, self.delta) {
            self.log.nonfree.push(BoundaryInterval::new(axis, fixed, a, b));
        }
    }

    /// Exact free intervals of a whole diagram edge through the origin.
    fn scan_line(&mut self, axis: Axis, fixed: f64, len: usize) -> Vec<(f64, f64)> {
        let (center, other) = match axis {
            Axis::Vertical => (self.pi.point_at(fixed), self.sigma),
            Axis::Horizontal => (self.sigma.point_at(fixed), self.pi),
        };
        let free = free_intervals(center, other, 0, len, self.delta);
        self.record_gaps(axis, fixed, 0.0, len as f64, &free);
        free
    }

    fn note_box(&mut self, region: BoxRegion, outcome: BoxOutcome) {
        if let Some(b) = self.log.boxes.as_mut() {
            b.push(BoxRecord { region, outcome });
        }
    }

    /// Restricts `list` (intervals on the line `axis = fixed`) to `[lo, hi]`.
    fn clip(&mut self, list: &[Reach], axis: Axis, fixed: f64, lo: f64, hi: f64) -> Vec<Reach> {
        let mut out = Vec::with_capacity(list.len());
        for r in list {
            if r.hi < lo || r.lo > hi {
                continue;
            }
            let nlo = r.lo.max(lo);
            let trace = if nlo != r.lo {
                let from = self.trace_of(r);
                let first = match axis {
                    Axis::Vertical => ParamPair::new(fixed, nlo),
                    Axis::Horizontal => ParamPair::new(nlo, fixed),
                };
                self.new_trace(first, from, None, TraceKind::Along)
            } else {
                r.trace
            };
            out.push(Reach {
                lo: nlo,
                hi: r.hi.min(hi),
                trace,
            });
        }
        out
    }

    fn compute(
        &mut self,
        mut bx: BoxRegion,
        left: Vec<Reach>,
        bottom: Vec<Reach>,
        mut need_right: bool,
        mut need_top: bool,
        depth: usize,
    ) -> (Option<Vec<Reach>>, Option<Vec<Reach>>) {
        self.log.boxes_visited += 1;
        self.log.max_depth = self.log.max_depth.max(depth);

        if self.rules.diagram_edge {
            let at_top = bx.j2 == self.m1;
            let at_right = bx.i2 == self.n1;
            // at the final corner the right output carries (n−1, m−1)
            if at_top && need_top {
                need_top = false;
                self.log.hits.diagram_edge += 1;
            } else if at_right && !at_top && need_right {
                need_right = false;
                self.log.hits.diagram_edge += 1;
            }
        }

        if left.is_empty() && bottom.is_empty() {
            self.log.hits.empty_inputs += 1;
            self.note_box(bx, BoxOutcome::EmptyInputs);
            return (need_right.then(Vec::new), need_top.then(Vec::new));
        }

        if self.rules.shrink && !bx.is_cell() {
            if bottom.is_empty() {
                let low = left[0].lo.floor() as usize;
                let nj = low.min(bx.j2 - 1);
                if nj > bx.j {
                    bx.j = nj;
                    self.log.hits.shrink += 1;
                }
            } else if left.is_empty() {
                let low = bottom[0].lo.floor() as usize;
                let ni = low.min(bx.i2 - 1);
                if ni > bx.i {
                    bx.i = ni;
                    self.log.hits.shrink += 1;
                }
            }
        }

        if bx.is_cell() {
            self.log.hits.cells += 1;
            self.note_box(bx, BoxOutcome::Cell);
            let (r, t) = self.cell(bx, &left, &bottom);
            return (need_right.then_some(r), need_top.then_some(t));
        }

        let mut top_out = None;
        let mut right_out = None;
        if need_top {
            top_out = self.try_simple_top(bx, &left, &bottom);
        }
        if need_right {
            right_out = self.try_simple_right(bx, &left, &bottom);
        }
        let top_missing = need_top && top_out.is_none();
        let right_missing = need_right && right_out.is_none();
        if !top_missing && !right_missing {
            self.note_box(bx, BoxOutcome::Rules);
            return (right_out, top_out);
        }

        self.log.hits.splits += 1;
        self.note_box(bx, BoxOutcome::Split);
        let BoxRegion { i, i2, j, j2 } = bx;
        if j2 - j > i2 - i {
            let jm = (j + j2) / 2;
            let left1 = self.clip(&left, Axis::Vertical, i as f64, j as f64, jm as f64);
            let left2 = self.clip(&left, Axis::Vertical, i as f64, jm as f64, j2 as f64);
            let b1 = BoxRegion { i, i2, j, j2: jm };
            let b2 = BoxRegion { i, i2, j: jm, j2 };
            let (r1, t1) = self.compute(b1, left1, bottom, right_missing, true, depth + 1);
            let (r2, t2) = self.compute(b2, left2, t1.unwrap_or_default(), right_missing, top_missing, depth + 1);
            if right_missing {
                right_out = merge(r1, r2);
            }
            if top_missing {
                top_out = t2;
            }
        } else {
            let im = (i + i2) / 2;
            let bottom1 = self.clip(&bottom, Axis::Horizontal, j as f64, i as f64, im as f64);
            let bottom2 = self.clip(&bottom, Axis::Horizontal, j as f64, im as f64, i2 as f64);
            let b1 = BoxRegion { i, i2: im, j, j2 };
            let b2 = BoxRegion { i: im, i2, j, j2 };
            let (r1, t1) = self.compute(b1, left, bottom1, true, top_missing, depth + 1);
            let (r2, t2) = self.compute(b2, r1.unwrap_or_default(), bottom2, right_missing, top_missing, depth + 1);
            if right_missing {
                right_out = r2;
            }
            if top_missing {
                top_out = merge(t1, t2);
            }
        }
        (right_out, top_out)
    }

    fn cell(&mut self, bx: BoxRegion, left: &[Reach], bottom: &[Reach]) -> (Vec<Reach>, Vec<Reach>) {
        let BoxRegion { i, j, .. } = bx;
        let out = cell_propagate(
            self.pi,
            self.sigma,
            i,
            j,
            left.first().map(|r| r.lo),
            bottom.first().map(|r| r.lo),
            self.delta,
        );
        if self.certify {
            let rf: Vec<_> = out.right_free.into_iter().collect();
            let tf: Vec<_> = out.top_free.into_iter().collect();
            self.record_gaps(Axis::Vertical, (i + 1) as f64, j as f64, (j + 1) as f64, &rf);
            self.record_gaps(Axis::Horizontal, (j + 1) as f64, i as f64, (i + 1) as f64, &tf);
        }
        let right = match out.right {
            Some((lo, hi)) => {
                let src = bottom.first().or(left.first()).copied().unwrap();
                let from = self.trace_of(&src);
                let trace = self.new_trace(ParamPair::new((i + 1) as f64, lo), from, None, TraceKind::Cell);
                vec![Reach { lo, hi, trace }]
            }
            None => Vec::new(),
        };
        let top = match out.top {
            Some((lo, hi)) => {
                let src = left.first().or(bottom.first()).copied().unwrap();
                let from = self.trace_of(&src);
                let trace = self.new_trace(ParamPair::new(lo, (j + 1) as f64), from, None, TraceKind::Cell);
                vec![Reach { lo, hi, trace }]
            }
            None => Vec::new(),
        };
        (right, top)
    }

    fn simple_rules_enabled(&self) -> bool {
        self.rules.empty_boundary || self.rules.reachable_corner || self.rules.through_box
    }

    /// Simple-boundary rules for the top output `[i, i2] × {j2}`.
    fn try_simple_top(&mut self, bx: BoxRegion, left: &[Reach], bottom: &[Reach]) -> Option<Vec<Reach>> {
        if !self.simple_rules_enabled() {
            return None;
        }
        let BoxRegion { i, i2, j, j2 } = bx;
        let center = self.sigma.vertex(j2);
        let res = simple_boundary(center, self.pi, i, i2, self.delta);
        let SimpleBoundaryResult::Simple(free) = res else {
            return None;
        };
        let free_list: Vec<_> = free.into_iter().collect();
        self.record_gaps(Axis::Horizontal, j2 as f64, i as f64, i2 as f64, &free_list);
        let Some((a, b)) = free else {
            if self.rules.empty_boundary {
                self.log.hits.empty_boundary += 1;
                return Some(Vec::new());
            }
            return None;
        };
        if a == i as f64 {
            if !self.rules.reachable_corner {
                return None;
            }
            let last = left.last().filter(|r| r.hi == j2 as f64)?;
            let from = self.trace_of(last);
            self.log.hits.reachable_corner += 1;
            let trace = self.new_trace(ParamPair::new(a, j2 as f64), from, None, TraceKind::ReachableCorner);
            Some(vec![Reach { lo: a, hi: b, trace }])
        } else {
            if !self.rules.through_box {
                return None;
            }
            let src = bottom.iter().find(|r| r.lo <= a && a <= r.hi)?;
            let col_center = self.pi.point_at(a);
            if !column_free(col_center, self.sigma, j, j2, self.delta) {
                return None;
            }
            let from = self.trace_of(src);
            self.log.hits.through_box += 1;
            let trace = self.new_trace(
                ParamPair::new(a, j2 as f64),
                from,
                Some(ParamPair::new(a, j as f64)),
                TraceKind::ThroughBox,
            );
            Some(vec![Reach { lo: a, hi: b, trace }])
        }
    }

    /// Simple-boundary rules for the right output `{i2} × [j, j2]`.
    fn try_simple_right(&mut self, bx: BoxRegion, left: &[Reach], bottom: &[Reach]) -> Option<Vec<Reach>> {
        if !self.simple_rules_enabled() {
            return None;
        }
        let BoxRegion { i, i2, j, j2 } = bx;
        let center = self.pi.vertex(i2);
        let res = simple_boundary(center, self.sigma, j, j2, self.delta);
        let SimpleBoundaryResult::Simple(free) = res else {
            return None;
        };
        let free_list: Vec<_> = free.into_iter().collect();
        self.record_gaps(Axis::Vertical, i2 as f64, j as f64, j2 as f64, &free_list);
        let Some((a, b)) = free else {
            if self.rules.empty_boundary {
                self.log.hits.empty_boundary += 1;
                return Some(Vec::new());
            }
            return None;
        };
        if a == j as f64 {
            if !self.rules.reachable_corner {
                return None;
            }
            let last = bottom.last().filter(|r| r.hi == i2 as f64)?;
            let from = self.trace_of(last);
            self.log.hits.reachable_corner += 1;
            let trace = self.new_trace(ParamPair::new(i2 as f64, a), from, None, TraceKind::ReachableCorner);
            Some(vec![Reach { lo: a, hi: b, trace }])
        } else {
            if !self.rules.through_box {
                return None;
            }
            let src = left.iter().find(|r| r.lo <= a && a <= r.hi)?;
            let row_center = self.sigma.point_at(a);
            if !column_free(row_center, self.pi, i, i2, self.delta) {
                return None;
            }
            let from = self.trace_of(src);
            self.log.hits.through_box += 1;
            let trace = self.new_trace(
                ParamPair::new(i2 as f64, a),
                from,
                Some(ParamPair::new(i as f64, a)),
                TraceKind::ThroughBox,
            );
            Some(vec![Reach { lo: a, hi: b, trace }])
        }
    }
}

/// Concatenates the outputs of two adjacent boxes, joining intervals that
/// meet at the shared corner. The joined interval keeps the first trace.
fn merge(a: Option<Vec<Reach>>, b: Option<Vec<Reach>>) -> Option<Vec<Reach>> {
    match (a, b) {
        (None, None) => None,
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
        (Some(mut a), Some(b)) => {
            let mut rest = b.into_iter();
            if let (Some(last), Some(first)) = (a.last_mut(), rest.as_slice().first()) {
                if first.lo <= last.hi {
                    last.hi = last.hi.max(first.hi);
                    rest.next();
                }
            }
            a.extend(rest);
            Some(a)
        }
    }
}

/// Maximum recursion depth allowed for an `n × m` diagram.
pub fn depth_bound(n: usize, m: usize) -> usize {
    let clog = |x: usize| if x <= 1 { 0 } else { (usize::BITS - (x - 1).leading_zeros()) as usize };
    clog(n.saturating_sub(1)) + clog(m.saturating_sub(1)) + 1
}

/// Walks the predecessor links back to the origin and returns the visited
/// points in traversal order, without consecutive duplicates.
pub fn trace_path(log: &ExplorationLog, id: u32) -> Option<Vec<ParamPair>> {
    let mut chain = Vec::new();
    let mut cur = Some(id);
    while let Some(c) = cur {
        let t = log.traces.get(c as usize)?;
        chain.push(*t);
        if chain.len() > log.traces.len() {
            return None;
        }
        cur = t.from;
    }
    let root = chain.last()?;
    if root.kind != TraceKind::Origin {
        return None;
    }
    let mut pts: Vec<ParamPair> = Vec::with_capacity(chain.len() * 2);
    let mut push = |p: ParamPair| {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    };
    for t in chain.iter().rev() {
        if let Some(v) = t.via {
            push(v);
        }
        push(t.first);
    }
    Some(pts)
}
