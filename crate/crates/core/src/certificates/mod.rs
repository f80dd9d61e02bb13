//! YES/NO certificates: construction, text format and checking.
//!
//! A YES certificate is a sequence of positions describing a traversal
//! through F from `(0, 0)` to `(n−1, m−1)`. A NO certificate is a cut: a
//! chain of non-free stretches from the bottom or right edge of the diagram
//! to its top or left edge, linked by moves to the lower right.

mod checker;
pub mod pst;

use std::fmt::Write as _;

pub use checker::{check_no, check_yes, Rejection};
use pst::{LinearScan, PrioritySearchTree, ReportDelete};

use crate::complete::{trace_path, ExplorationLog};
use crate::curves::Curve;
use crate::filters::{CurveSide, FarVertex};
use crate::freespace::{BoundaryInterval, ParamPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: CertKind,
    pub points: Vec<ParamPair>,
}

#[derive(Debug, thiserror::Error)]
pub enum CertError {
    #[error("exploration log has no predecessor chain for the final corner")]
    MissingPredecessor,
    #[error("no cut through the recorded non-free segments")]
    CutNotFound,
    #[error("malformed certificate file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Certificate {
    pub fn yes(points: Vec<ParamPair>) -> Self {
        Certificate {
            kind: CertKind::Yes,
            points: dedup(points),
        }
    }

    pub fn no(points: Vec<ParamPair>) -> Self {
        Certificate {
            kind: CertKind::No,
            points: dedup(points),
        }
    }

    pub fn pairs(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|t| (t.p, t.q)).collect()
    }

    /// Runs the matching checker.
    pub fn check(&self, pi: &Curve, sigma: &Curve, delta: f64) -> Result<(), Rejection> {
        let pts = self.pairs();
        match self.kind {
            CertKind::Yes => check_yes(pi, sigma, delta, &pts),
            CertKind::No => check_no(pi, sigma, delta, &pts),
        }
    }

    /// Text form: kind, then `n m delta` (vertex counts), then one `p q`
    /// per line. Reals use the shortest representation that round-trips.
    pub fn to_text(&self, n: usize, m: usize, delta: f64) -> String {
        let mut s = String::new();
        s.push_str(match self.kind {
            CertKind::Yes => "YES\n",
            CertKind::No => "NO\n",
        });
        let _ = writeln!(s, "{n} {m} {delta:?}");
        for t in &self.points {
            let _ = writeln!(s, "{:?} {:?}", t.p, t.q);
        }
        s
    }

    /// Parses [`Certificate::to_text`] output; returns the certificate with
    /// the recorded `(n, m, delta)`.
    pub fn parse(text: &str) -> Result<(Certificate, usize, usize, f64), CertError> {
        let err = |line: usize, msg: &str| CertError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, kind_line) = lines.next().ok_or_else(|| err(1, "empty file"))?;
        let kind = match kind_line.trim() {
            "YES" => CertKind::Yes,
            "NO" => CertKind::No,
            _ => return Err(err(1, "expected YES or NO")),
        };
        let (hl, header) = lines.next().ok_or_else(|| err(2, "missing header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(err(hl + 1, "expected `n m delta`"));
        }
        let n = h[0].parse().map_err(|_| err(hl + 1, "bad n"))?;
        let m = h[1].parse().map_err(|_| err(hl + 1, "bad m"))?;
        let delta = h[2].parse().map_err(|_| err(hl + 1, "bad delta"))?;
        let mut points = Vec::new();
        for (k, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let parsed = match f.as_slice() {
                [p, q] => p.parse::<f64>().ok().zip(q.parse::<f64>().ok()),
                _ => None,
            };
            let (p, q) = parsed.ok_or_else(|| err(k + 1, "expected `p q`"))?;
            points.push(ParamPair::new(p, q));
        }
        Ok((Certificate { kind, points }, n, m, delta))
    }
}

fn dedup(mut points: Vec<ParamPair>) -> Vec<ParamPair> {
    points.dedup();
    points
}

/// YES certificate from the predecessor traces of a close exploration.
pub fn build_yes_certificate(log: &ExplorationLog, n: usize, m: usize) -> Result<Certificate, CertError> {
    let id = log.final_trace.ok_or(CertError::MissingPredecessor)?;
    let mut pts = trace_path(log, id).ok_or(CertError::MissingPredecessor)?;
    pts.push(ParamPair::new((n - 1) as f64, (m - 1) as f64));
    Ok(Certificate::yes(pts))
}

/// NO certificate for a vertex far from the whole other curve: the
/// corresponding diagram line is entirely non-free.
pub fn far_vertex_certificate(w: FarVertex, n: usize, m: usize) -> Certificate {
    let (n1, m1) = ((n - 1) as f64, (m - 1) as f64);
    let k = w.index as f64;
    match w.side {
        CurveSide::Pi => Certificate::no(vec![ParamPair::new(k, 0.0), ParamPair::new(k, m1)]),
        CurveSide::Sigma => Certificate::no(vec![ParamPair::new(n1, k), ParamPair::new(0.0, k)]),
    }
}

/// Which report-and-delete structure [`build_no_certificate_with`] uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IndexKind {
    #[default]
    Tree,
    Linear,
}

/// Finds a cut through the given non-free segments of an `n × m` diagram.
pub fn build_no_certificate(segments: &[BoundaryInterval], n: usize, m: usize) -> Result<Certificate, CertError> {
    build_no_certificate_with(segments, n, m, IndexKind::Tree)
}

pub fn build_no_certificate_with(
    segments: &[BoundaryInterval],
    n: usize,
    m: usize,
    index: IndexKind,
) -> Result<Certificate, CertError> {
    let (n1, m1) = ((n - 1) as f64, (m - 1) as f64);
    let starts = |t: ParamPair| t.q == 0.0 || t.p == n1;
    let ends = |t: ParamPair| t.q == m1 || t.p == 0.0;

    let mut parent: Vec<Option<usize>> = vec![None; segments.len()];
    let mut queue = Vec::new();
    let mut rest = Vec::new();
    for (k, s) in segments.iter().enumerate() {
        let lr = s.lower_right();
        if starts(lr) {
            queue.push(k);
        } else {
            rest.push(((lr.p, lr.q), k));
        }
    }
    let mut index: Box<dyn ReportDelete> = match index {
        IndexKind::Tree => Box::new(PrioritySearchTree::new(&rest)),
        IndexKind::Linear => Box::new(LinearScan::new(&rest)),
    };

    while let Some(k) = queue.pop() {
        let ul = segments[k].upper_left();
        if ends(ul) {
            let mut chain = vec![k];
            while let Some(prev) = parent[*chain.last().unwrap()] {
                chain.push(prev);
            }
            let mut pts = Vec::with_capacity(2 * chain.len());
            for &c in chain.iter().rev() {
                pts.push(segments[c].lower_right());
                pts.push(segments[c].upper_left());
            }
            return Ok(Certificate::no(pts));
        }
        for j in index.report_and_delete(ul.p, ul.q) {
            parent[j] = Some(k);
            queue.push(j);
        }
    }
    Err(CertError::CutNotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freespace::Axis;

    #[test]
    fn text_round_trip() {
        let c = Certificate::yes(vec![
            ParamPair::new(0.0, 0.0),
            ParamPair::new(0.1 + 0.2, 1.0),
            ParamPair::new(3.0, 2.0),
        ]);
        let text = c.to_text(4, 3, 0.7);
        let (back, n, m, d) = Certificate::parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!((n, m, d), (4, 3, 0.7));
        assert!(Certificate::parse("MAYBE\n1 1 0\n").is_err());
        assert!(Certificate::parse("NO\n1 1\n").is_err());
    }

    #[test]
    fn dedups_consecutive_points() {
        let c = Certificate::no(vec![ParamPair::new(1.0, 0.0), ParamPair::new(1.0, 0.0), ParamPair::new(1.0, 2.0)]);
        assert_eq!(c.points.len(), 2);
    }

    #[test]
    fn cut_through_chain() {
        // 3 × 3 diagram: left along q = 1 from the right edge, then a
        // lower-right move onto a wall reaching the left edge
        let segs = vec![
            BoundaryInterval::new(Axis::Horizontal, 0.8, 0.0, 1.9),
            BoundaryInterval::new(Axis::Vertical, 1.0, 2.5, 2.8),
            BoundaryInterval::new(Axis::Horizontal, 1.0, 1.8, 2.0),
        ];
        for kind in [IndexKind::Tree, IndexKind::Linear] {
            let c = build_no_certificate_with(&segs, 3, 3, kind).unwrap();
            let expected = [(2.0, 1.0), (1.8, 1.0), (1.9, 0.8), (0.0, 0.8)];
            assert_eq!(c.pairs(), expected);
        }
        assert!(matches!(build_no_certificate(&segs[..2], 3, 3), Err(CertError::CutNotFound)));
    }
}
