//! Front end: endpoint check, filters, complete decider, certificates, and
//! distance computation by bisection.

use crate::certificates::{build_no_certificate, build_yes_certificate, far_vertex_certificate, Certificate};
use crate::complete::{complete_decide, BoxRecord, ExploreOptions, RuleHits, RuleSet, Verdict};
use crate::curves::Curve;
use crate::filters::{bbox_filter, equal_time_filter, greedy_filter, negative_filter, FilterVerdict};
use crate::freespace::{free_intervals, nonfree_gaps_on, Axis, BoundaryInterval, ParamPair};
use crate::geometry::sq_dist;

/// Pipeline stage that produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Endpoints,
    BBox,
    Greedy,
    EqualTime,
    Negative,
    Complete,
    /// Filters could not decide and the complete decider is disabled.
    Undecided,
}

impl Stage {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stage::Endpoints => "endpoints",
            Stage::BBox => "bbox",
            Stage::Greedy => "greedy",
            Stage::EqualTime => "equal-time",
            Stage::Negative => "negative",
            Stage::Complete => "complete",
            Stage::Undecided => "undecided",
        }
    }

    /// Whether the answer came from something cheaper than the complete
    /// decider.
    pub fn is_filter(&self) -> bool {
        !matches!(self, Stage::Complete | Stage::Undecided)
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecideConfig {
    pub use_filters: bool,
    pub use_complete: bool,
    pub rules: RuleSet,
    pub certify: bool,
    pub record_boxes: bool,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig {
            use_filters: true,
            use_complete: true,
            rules: RuleSet::ALL,
            certify: false,
            record_boxes: false,
        }
    }
}

impl DecideConfig {
    pub fn certifying() -> Self {
        DecideConfig {
            certify: true,
            ..Default::default()
        }
    }

    pub fn label(&self) -> String {
        let mut s = self.rules.label();
        if !self.use_filters {
            s.push_str("+nofilters");
        }
        if !self.use_complete {
            s.push_str("+nocomplete");
        }
        if self.certify {
            s.push_str("+certify");
        }
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct DecideStats {
    pub boxes_visited: u64,
    pub max_depth: usize,
    pub hits: RuleHits,
    pub nonfree_segments: usize,
    /// The recorded non-free segments did not contain a cut and the whole
    /// diagram had to be scanned for one.
    pub no_cert_fallback: bool,
}

#[derive(Clone, Debug)]
pub struct Decision {
    /// `None` only when the filters were inconclusive and the complete
    /// decider was disabled.
    pub verdict: Option<Verdict>,
    pub stage: Stage,
    pub certificate: Option<Certificate>,
    pub stats: DecideStats,
    pub boxes: Option<Vec<BoxRecord>>,
}

impl Decision {
    pub fn is_close(&self) -> bool {
        self.verdict == Some(Verdict::Close)
    }

    fn new(verdict: Option<Verdict>, stage: Stage, certificate: Option<Certificate>) -> Self {
        Decision {
            verdict,
            stage,
            certificate,
            stats: DecideStats::default(),
            boxes: None,
        }
    }
}

/// Decides `d_F(π, σ) ≤ delta` with the default pipeline.
pub fn decide(pi: &Curve, sigma: &Curve, delta: f64, want_certificate: bool) -> Decision {
    let config = DecideConfig {
        certify: want_certificate,
        ..Default::default()
    };
    decide_with(pi, sigma, delta, &config)
}

pub fn decide_with(pi: &Curve, sigma: &Curve, delta: f64, config: &DecideConfig) -> Decision {
    let (n, m) = (pi.len(), sigma.len());
    let (n1, m1) = ((n - 1) as f64, (m - 1) as f64);
    let r2 = delta * delta;
    let cert = |c: Certificate| config.certify.then_some(c);

    if sq_dist(pi.first(), sigma.first()) > r2 {
        let c = Certificate::no(vec![ParamPair::new(0.0, 0.0)]);
        return Decision::new(Some(Verdict::Far), Stage::Endpoints, cert(c));
    }
    if sq_dist(pi.last(), sigma.last()) > r2 {
        let c = Certificate::no(vec![ParamPair::new(n1, m1)]);
        return Decision::new(Some(Verdict::Far), Stage::Endpoints, cert(c));
    }

    if config.use_filters {
        if let FilterVerdict::Close(w) = bbox_filter(pi, sigma, delta) {
            return Decision::new(Some(Verdict::Close), Stage::BBox, cert(Certificate::yes(w)));
        }
        let greedy = greedy_filter(pi, sigma, delta);
        if let FilterVerdict::Close(w) = greedy.verdict {
            return Decision::new(Some(Verdict::Close), Stage::Greedy, cert(Certificate::yes(w)));
        }
        if let FilterVerdict::Close(w) = equal_time_filter(pi, sigma, delta).verdict {
            return Decision::new(Some(Verdict::Close), Stage::EqualTime, cert(Certificate::yes(w)));
        }
        if let FilterVerdict::Far(v) = negative_filter(pi, sigma, delta, greedy.stuck) {
            let c = far_vertex_certificate(v, n, m);
            return Decision::new(Some(Verdict::Far), Stage::Negative, cert(c));
        }
    }

    if !config.use_complete {
        return Decision::new(None, Stage::Undecided, None);
    }

    let opts = ExploreOptions {
        rules: config.rules,
        certify: config.certify,
        record_boxes: config.record_boxes,
    };
    let (verdict, log) = complete_decide(pi, sigma, delta, &opts);
    let mut stats = DecideStats {
        boxes_visited: log.boxes_visited,
        max_depth: log.max_depth,
        hits: log.hits,
        nonfree_segments: log.nonfree.len(),
        no_cert_fallback: false,
    };
    let certificate = if !config.certify {
        None
    } else if verdict == Verdict::Close {
        build_yes_certificate(&log, n, m).ok()
    } else {
        match build_no_certificate(&log.nonfree, n, m) {
            Ok(c) => Some(c),
            Err(_) => {
                stats.no_cert_fallback = true;
                build_no_certificate(&all_nonfree_segments(pi, sigma, delta), n, m).ok()
            }
        }
    };
    Decision {
        verdict: Some(verdict),
        stage: Stage::Complete,
        certificate,
        stats,
        boxes: log.boxes,
    }
}

/// Non-free parts of every vertical and horizontal grid line of the
/// diagram.
pub fn all_nonfree_segments(pi: &Curve, sigma: &Curve, delta: f64) -> Vec<BoundaryInterval> {
    let (n1, m1) = (pi.last_index(), sigma.last_index());
    let mut out = Vec::new();
    for i in 0..=n1 {
        let free = free_intervals(pi.vertex(i), sigma, 0, m1, delta);
        for (a, b) in nonfree_gaps_on(pi.vertex(i), sigma, 0.0, m1 as f64, &free, delta) {
            out.push(BoundaryInterval::new(Axis::Vertical, i as f64, a, b));
        }
    }
    for j in 0..=m1 {
        let free = free_intervals(sigma.vertex(j), pi, 0, n1, delta);
        for (a, b) in nonfree_gaps_on(sigma.vertex(j), pi, 0.0, n1 as f64, &free, delta) {
            out.push(BoundaryInterval::new(Axis::Horizontal, j as f64, a, b));
        }
    }
    out
}

/// Lower and upper bound on `d_F(π, σ)`: the larger endpoint distance and
/// the farthest bounding-box corner distance.
pub fn distance_bounds(pi: &Curve, sigma: &Curve) -> (f64, f64) {
    let lo = sq_dist(pi.first(), sigma.first())
        .max(sq_dist(pi.last(), sigma.last()))
        .sqrt();
    let far = pi.bbox().max_sq_dist(sigma.bbox());
    let mut hi = far.sqrt();
    while hi * hi < far {
        hi = hi * (1.0 + f64::EPSILON) + f64::MIN_POSITIVE;
    }
    (lo, hi.max(lo))
}

/// Smallest `δ` (up to the tolerances) for which the curves are close.
///
/// The result `d` satisfies `decide(d) = close` and is far at
/// `d − min(rel_tol·d, abs_tol)`, except when it equals the lower bound.
pub fn compute_distance(pi: &Curve, sigma: &Curve, rel_tol: f64, abs_tol: f64) -> f64 {
    let close = |d: f64| decide(pi, sigma, d, false).is_close();
    let (mut lo, mut hi) = distance_bounds(pi, sigma);
    if close(lo) {
        return lo;
    }
    loop {
        let tol = (rel_tol * hi).min(abs_tol);
        let mid = lo + (hi - lo) / 2.0;
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return hi;
        }
        if close(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// [`compute_distance`] with relative tolerance `1e-10` and absolute
/// tolerance `1e-12` times the upper bound.
pub fn frechet_distance(pi: &Curve, sigma: &Curve) -> f64 {
    let (_, hi) = distance_bounds(pi, sigma);
    compute_distance(pi, sigma, DEFAULT_REL_TOL, 1e-12 * hi.max(f64::MIN_POSITIVE))
}
