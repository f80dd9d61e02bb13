//! Timing harness, CSV reports and plot data.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use super::generators::{BenchError, DeciderBenchmarkCase, QueryBenchmarkCase, Side};
use crate::complete::BoxRecord;
use crate::curves::Curve;
use crate::decider::{decide_with, DecideConfig};
use crate::query::{candidates, find_close_curves, KdTree8};

pub const CSV_COLUMNS: &str = "case_id,n,m,delta,verdict,stage,boxes,time_ns,config";

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub case_id: usize,
    pub n: usize,
    pub m: usize,
    pub delta: f64,
    /// `close`, `far` or `undecided`.
    pub verdict: String,
    pub stage: String,
    pub boxes: u64,
    pub time_ns: u64,
    pub config: String,
}

fn lookup<'a>(index: &HashMap<&str, &'a Curve>, id: &str) -> Result<&'a Curve, BenchError> {
    index
        .get(id)
        .copied()
        .ok_or_else(|| BenchError::UnknownCurve(id.to_string()))
}

/// Runs every case once under `config` and times the `decide` call.
///
/// With `threads ≤ 1` cases run one after another on the calling thread,
/// which is what per-call timings should use.
pub fn run_benchmark(
    dataset: &[Curve],
    cases: &[DeciderBenchmarkCase],
    config: &DecideConfig,
    threads: usize,
) -> Result<Vec<RunRecord>, BenchError> {
    let index: HashMap<&str, &Curve> = dataset.iter().map(|c| (c.id(), c)).collect();
    let pairs = cases
        .iter()
        .map(|c| Ok((lookup(&index, &c.pi)?, lookup(&index, &c.sigma)?, c.delta)))
        .collect::<Result<Vec<_>, BenchError>>()?;
    let label = config.label();
    let one = |(id, &(pi, sigma, delta)): (usize, &(&Curve, &Curve, f64))| {
        let start = Instant::now();
        let d = decide_with(pi, sigma, delta, config);
        let time_ns = start.elapsed().as_nanos() as u64;
        RunRecord {
            case_id: id,
            n: pi.len(),
            m: sigma.len(),
            delta,
            verdict: d.verdict.map_or("undecided", |v| v.as_str()).to_string(),
            stage: d.stage.as_str().to_string(),
            boxes: d.stats.boxes_visited,
            time_ns,
            config: label.clone(),
        }
    };
    if threads <= 1 {
        return Ok(pairs.iter().enumerate().map(one).collect());
    }
    let run = || pairs.par_iter().enumerate().map(one).collect();
    Ok(match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryRecord {
    pub case_id: usize,
    pub k: usize,
    pub delta: f64,
    pub candidates: usize,
    pub results: usize,
    pub time_ns: u64,
}

pub fn run_query_benchmark(
    dataset: &[Curve],
    cases: &[QueryBenchmarkCase],
    threads: usize,
) -> Result<Vec<QueryRecord>, BenchError> {
    let index: HashMap<&str, &Curve> = dataset.iter().map(|c| (c.id(), c)).collect();
    let tree = KdTree8::from_curves(dataset);
    let mut out = Vec::with_capacity(cases.len());
    for (id, c) in cases.iter().enumerate() {
        let pi = lookup(&index, &c.pi)?;
        let start = Instant::now();
        let found = find_close_curves(&tree, dataset, pi, c.delta, threads);
        let time_ns = start.elapsed().as_nanos() as u64;
        out.push(QueryRecord {
            case_id: id,
            k: c.k,
            delta: c.delta,
            candidates: candidates(&tree, pi, c.delta).len(),
            results: found.len(),
            time_ns,
        });
    }
    Ok(out)
}

pub fn query_csv(records: &[QueryRecord]) -> String {
    let mut s = String::from("case_id,k,delta,candidates,results,time_ns\n");
    for r in records {
        let _ = writeln!(s, "{},{},{:?},{},{},{}", r.case_id, r.k, r.delta, r.candidates, r.results, r.time_ns);
    }
    s
}

/// CSV report with a `# seed=` comment line (when known) above the column
/// header.
pub fn to_csv(records: &[RunRecord], seed: Option<u64>) -> String {
    let mut s = String::new();
    if let Some(seed) = seed {
        let _ = writeln!(s, "# seed={seed}");
    }
    s.push_str(CSV_COLUMNS);
    s.push('\n');
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{:?},{},{},{},{},{}",
            r.case_id, r.n, r.m, r.delta, r.verdict, r.stage, r.boxes, r.time_ns, r.config
        );
    }
    s
}

pub fn parse_csv(text: &str) -> Result<Vec<RunRecord>, BenchError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line == CSV_COLUMNS {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        let bad = |msg: &str| BenchError::Parse {
            line: k + 1,
            msg: msg.to_string(),
        };
        if f.len() != 9 {
            return Err(bad("expected 9 columns"));
        }
        out.push(RunRecord {
            case_id: f[0].parse().map_err(|_| bad("case_id"))?,
            n: f[1].parse().map_err(|_| bad("n"))?,
            m: f[2].parse().map_err(|_| bad("m"))?,
            delta: f[3].parse().map_err(|_| bad("delta"))?,
            verdict: f[4].to_string(),
            stage: f[5].to_string(),
            boxes: f[6].parse().map_err(|_| bad("boxes"))?,
            time_ns: f[7].parse().map_err(|_| bad("time_ns"))?,
            config: f[8].to_string(),
        });
    }
    Ok(out)
}

/// Least-squares line `y = slope·x + intercept` and its `r²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return None;
    }
    let mean = |v: &[f64]| v[..n].iter().sum::<f64>() / n as f64;
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for k in 0..n {
        let (dx, dy) = (xs[k] - mx, ys[k] - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LinearFit {
        slope,
        intercept: my - slope * mx,
        r2,
    })
}

/// `boxes time_ns` per line, for complete-decider runs only.
pub fn boxes_time_pairs(records: &[RunRecord]) -> String {
    let mut s = String::from("# boxes\ttime_ns\n");
    for r in records.iter().filter(|r| r.stage == "complete") {
        let _ = writeln!(s, "{}\t{}", r.boxes, r.time_ns);
    }
    s
}

/// One row per `(k, l, side)`: case count, mean time and the share decided
/// before the complete decider.
pub fn aggregate_table(cases: &[DeciderBenchmarkCase], records: &[RunRecord]) -> String {
    #[derive(Default)]
    struct Acc {
        count: u64,
        time: u64,
        filtered: u64,
    }
    let mut groups: BTreeMap<(u32, i32, &'static str), Acc> = BTreeMap::new();
    for r in records {
        let Some(c) = cases.get(r.case_id) else { continue };
        let side = match c.side {
            Side::Below => "below",
            Side::Above => "above",
        };
        let acc = groups.entry((c.k, c.l, side)).or_default();
        acc.count += 1;
        acc.time += r.time_ns;
        acc.filtered += u64::from(r.stage != "complete" && r.stage != "undecided");
    }
    let mut s = String::from("# k\tl\tside\tcases\tmean_time_ns\tfiltered_pct\n");
    for ((k, l, side), a) in groups {
        let _ = writeln!(
            s,
            "{k}\t{l}\t{side}\t{}\t{:.1}\t{:.1}",
            a.count,
            a.time as f64 / a.count as f64,
            100.0 * a.filtered as f64 / a.count as f64
        );
    }
    s
}

/// Explored boxes as `i i2 j j2 rule`, one per line.
pub fn box_dump(boxes: &[BoxRecord]) -> String {
    let mut s = String::new();
    for b in boxes {
        let r = b.region;
        let _ = writeln!(s, "{} {} {} {} {}", r.i, r.i2, r.j, r.j2, b.outcome.as_str());
    }
    s
}
