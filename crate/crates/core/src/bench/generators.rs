//! Benchmark case generation for the decider and query settings, and the
//! tab-separated case files.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::Curve;
use crate::decider::{frechet_distance, DEFAULT_REL_TOL};

pub const DECIDER_HEADER: &str = "# frechet decider-benchmark";
pub const QUERY_HEADER: &str = "# frechet query-benchmark";
pub const QUERY_KS: [usize; 5] = [0, 1, 10, 100, 1000];
pub const FACTOR_EXPONENTS: std::ops::RangeInclusive<i32> = -10..=0;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("dataset has {0} curves, need at least 2")]
    DatasetTooSmall(usize),
    #[error("cannot return {} curves from a dataset of {have}", k + 1)]
    KUnreachable { k: usize, have: usize },
    #[error("no query curve separates rank {k} from rank {} (distance ties)", k + 1)]
    NoGap { k: usize },
    #[error("unknown curve id `{0}`")]
    UnknownCurve(String),
    #[error("case file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// On which side of `δ*` a decider case lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `δ = (1 − 2^l)·δ*`, expected far.
    Below,
    /// `δ = (1 + 2^l)·δ*`, expected close.
    Above,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Below => "below",
            Side::Above => "above",
        }
    }

    pub fn factor(&self, l: i32) -> f64 {
        match self {
            Side::Below => 1.0 - 2f64.powi(l),
            Side::Above => 1.0 + 2f64.powi(l),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeciderBenchmarkCase {
    pub pi: String,
    pub sigma: String,
    pub k: u32,
    pub l: i32,
    pub side: Side,
    pub delta_star: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryBenchmarkCase {
    pub pi: String,
    pub k: usize,
    pub delta: f64,
}

fn index_by_id(dataset: &[Curve]) -> std::collections::HashMap<&str, usize> {
    dataset.iter().enumerate().map(|(k, c)| (c.id(), k)).collect()
}

/// Looks up the curves a case file refers to.
pub fn resolve<'a>(dataset: &'a [Curve], id: &str) -> Result<&'a Curve, BenchError> {
    dataset
        .iter()
        .find(|c| c.id() == id)
        .ok_or_else(|| BenchError::UnknownCurve(id.to_string()))
}

/// Distances from `pi` to every dataset curve, and dataset positions sorted
/// by that distance (ties by position).
fn ranked(dataset: &[Curve], pi: &Curve) -> (Vec<f64>, Vec<usize>) {
    let dist: Vec<f64> = dataset.iter().map(|s| frechet_distance(pi, s)).collect();
    let mut order: Vec<usize> = (0..dataset.len()).collect();
    order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
    (dist, order)
}

fn floor_log2(n: usize) -> u32 {
    usize::BITS - 1 - n.leading_zeros()
}

/// For `num_queries` random curves `π`: sort the dataset by distance to
/// `π` as `σ_1, σ_2, …` and, for every `k` in `1..=⌊log₂ N⌋`, pick `σ`
/// uniformly from ranks `2^k ..= min(2^{k+1} − 1, N)`. Each pair yields 22
/// cases `(1 ∓ 2^l)·δ*` for `l = −10..=0`.
pub fn gen_decider_benchmark(
    dataset: &[Curve],
    num_queries: usize,
    seed: u64,
) -> Result<Vec<DeciderBenchmarkCase>, BenchError> {
    let big_n = dataset.len();
    if big_n < 2 {
        return Err(BenchError::DatasetTooSmall(big_n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..num_queries {
        let pi = &dataset[rng.gen_range(0..big_n)];
        let (dist, order) = ranked(dataset, pi);
        for k in 1..=floor_log2(big_n) {
            let lo = 1usize << k;
            let hi = ((1usize << (k + 1)) - 1).min(big_n);
            let rank = rng.gen_range(lo..=hi);
            let s = order[rank - 1];
            let delta_star = dist[s];
            for side in [Side::Below, Side::Above] {
                for l in FACTOR_EXPONENTS {
                    cases.push(DeciderBenchmarkCase {
                        pi: pi.id().to_string(),
                        sigma: dataset[s].id().to_string(),
                        k,
                        l,
                        side,
                        delta_star,
                        delta: side.factor(l) * delta_star,
                    });
                }
            }
        }
    }
    Ok(cases)
}

const GAP_ATTEMPTS: usize = 64;

/// For every `k` in `ks`, `queries_per_k` cases `(π, δ)` whose answer has
/// exactly `k + 1` curves. `δ` is the midpoint between the distances of
/// ranks `k + 1` and `k + 2`; query curves where those tie are redrawn.
pub fn gen_query_benchmark(
    dataset: &[Curve],
    ks: &[usize],
    queries_per_k: usize,
    seed: u64,
) -> Result<Vec<QueryBenchmarkCase>, BenchError> {
    let big_n = dataset.len();
    if let Some(&k) = ks.iter().find(|&&k| k + 1 > big_n) {
        return Err(BenchError::KUnreachable { k, have: big_n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut memo: Vec<Option<Vec<f64>>> = vec![None; big_n];
    let mut cases = Vec::new();
    for &k in ks {
        for _ in 0..queries_per_k {
            let mut found = None;
            for _ in 0..GAP_ATTEMPTS {
                let q = rng.gen_range(0..big_n);
                let sorted = memo[q].get_or_insert_with(|| {
                    let (dist, order) = ranked(dataset, &dataset[q]);
                    order.iter().map(|&s| dist[s]).collect()
                });
                if let Some(delta) = separating_delta(sorted, k) {
                    found = Some((q, delta));
                    break;
                }
            }
            let (q, delta) = found.ok_or(BenchError::NoGap { k })?;
            cases.push(QueryBenchmarkCase {
                pi: dataset[q].id().to_string(),
                k,
                delta,
            });
        }
    }
    Ok(cases)
}

fn separating_delta(sorted: &[f64], k: usize) -> Option<f64> {
    let dk = sorted[k];
    match sorted.get(k + 1) {
        None => Some(2.0 * dk + 1.0),
        // a relative gap far above the distance tolerance
        Some(&next) if next - dk > 1e-6 * next => Some(dk + (next - dk) / 2.0),
        Some(_) => None,
    }
}

/// Picks `count` distinct dataset positions at random; used for query
/// curves in tests and tools.
pub fn sample_positions(len: usize, count: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<usize> = (0..len).collect();
    all.shuffle(&mut rng);
    all.truncate(count);
    all
}

fn tolerance_line(seed: u64) -> String {
    format!("# seed={seed} rng=chacha8 rel_tol={DEFAULT_REL_TOL:e} abs_tol=1e-12*hi\n")
}

pub fn write_decider_cases(cases: &[DeciderBenchmarkCase], seed: u64) -> String {
    let mut s = String::new();
    s.push_str(DECIDER_HEADER);
    s.push('\n');
    s.push_str(&tolerance_line(seed));
    s.push_str("# case_id\tpi\tsigma\tk\tl\tside\tdelta_star\tdelta\n");
    for (id, c) in cases.iter().enumerate() {
        let _ = writeln!(
            s,
            "{id}\t{}\t{}\t{}\t{}\t{}\t{:?}\t{:?}",
            c.pi,
            c.sigma,
            c.k,
            c.l,
            c.side.as_str(),
            c.delta_star,
            c.delta
        );
    }
    s
}

pub fn write_query_cases(cases: &[QueryBenchmarkCase], seed: u64) -> String {
    let mut s = String::new();
    s.push_str(QUERY_HEADER);
    s.push('\n');
    s.push_str(&tolerance_line(seed));
    s.push_str("# case_id\tpi\tk\tdelta\n");
    for (id, c) in cases.iter().enumerate() {
        let _ = writeln!(s, "{id}\t{}\t{}\t{:?}", c.pi, c.k, c.delta);
    }
    s
}

/// The `seed=` value of a case file header, if present.
pub fn header_seed(text: &str) -> Option<u64> {
    text.lines()
        .take_while(|l| l.starts_with('#'))
        .flat_map(|l| l.split_whitespace())
        .find_map(|f| f.strip_prefix("seed=")?.parse().ok())
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(k, l)| (k + 1, l.split('\t').collect()))
}

fn field<T: std::str::FromStr>(f: &[&str], k: usize, line: usize, name: &str) -> Result<T, BenchError> {
    f.get(k).and_then(|v| v.trim().parse().ok()).ok_or_else(|| BenchError::Parse {
        line,
        msg: format!("bad or missing {name}"),
    })
}

pub fn parse_decider_cases(text: &str) -> Result<Vec<DeciderBenchmarkCase>, BenchError> {
    data_lines(text)
        .map(|(line, f)| {
            let side = match f.get(5).map(|s| s.trim()) {
                Some("below") => Side::Below,
                Some("above") => Side::Above,
                _ => {
                    return Err(BenchError::Parse {
                        line,
                        msg: "side must be below or above".into(),
                    })
                }
            };
            Ok(DeciderBenchmarkCase {
                pi: field(&f, 1, line, "pi")?,
                sigma: field(&f, 2, line, "sigma")?,
                k: field(&f, 3, line, "k")?,
                l: field(&f, 4, line, "l")?,
                side,
                delta_star: field(&f, 6, line, "delta_star")?,
                delta: field(&f, 7, line, "delta")?,
            })
        })
        .collect()
}

pub fn parse_query_cases(text: &str) -> Result<Vec<QueryBenchmarkCase>, BenchError> {
    data_lines(text)
        .map(|(line, f)| {
            Ok(QueryBenchmarkCase {
                pi: field(&f, 1, line, "pi")?,
                k: field(&f, 2, line, "k")?,
                delta: field(&f, 3, line, "delta")?,
            })
        })
        .collect()
}

/// Checks that every id in the cases exists in the dataset.
pub fn check_ids<'a>(dataset: &[Curve], ids: impl IntoIterator<Item = &'a str>) -> Result<(), BenchError> {
    let index = index_by_id(dataset);
    for id in ids {
        if !index.contains_key(id) {
            return Err(BenchError::UnknownCurve(id.to_string()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::synth::{synth_dataset, SynthParams, WalkParams};

    fn small() -> Vec<Curve> {
        let p = SynthParams {
            clusters: 3,
            per_cluster: 4,
            walk: WalkParams {
                max_vertices: 8,
                ..Default::default()
            },
            ..Default::default()
        };
        synth_dataset(&p, 5)
    }

    #[test]
    fn floor_log2_values() {
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(2), 1);
        assert_eq!(floor_log2(7), 2);
        assert_eq!(floor_log2(8), 3);
    }

    #[test]
    fn decider_case_count_and_determinism() {
        let data = small();
        let a = gen_decider_benchmark(&data, 3, 9).unwrap();
        // N = 12, ⌊log₂ 12⌋ = 3
        assert_eq!(a.len(), 3 * 3 * 22);
        let b = gen_decider_benchmark(&data, 3, 9).unwrap();
        assert_eq!(write_decider_cases(&a, 9), write_decider_cases(&b, 9));
        assert!(matches!(
            gen_decider_benchmark(&data[..1], 1, 0),
            Err(BenchError::DatasetTooSmall(1))
        ));
    }

    #[test]
    fn case_files_round_trip() {
        let data = small();
        let d = gen_decider_benchmark(&data, 1, 2).unwrap();
        let text = write_decider_cases(&d, 2);
        assert_eq!(parse_decider_cases(&text).unwrap(), d);
        assert_eq!(header_seed(&text), Some(2));
        let q = gen_query_benchmark(&data, &[0, 1, 3], 2, 4).unwrap();
        let text = write_query_cases(&q, 4);
        assert_eq!(parse_query_cases(&text).unwrap(), q);
        assert!(parse_decider_cases("0\ta\tb\t1\t0\tsideways\t1.0\t1.0\n").is_err());
    }

    #[test]
    fn query_k_beyond_dataset() {
        let data = small();
        assert!(matches!(
            gen_query_benchmark(&data, &[0, 12], 1, 0),
            Err(BenchError::KUnreachable { k: 12, have: 12 })
        ));
        assert!(gen_query_benchmark(&data, &[11], 1, 0).is_ok());
    }
}
