//! `frechet`: decide, compute and certify Fréchet distances between curve
//! files, answer dataset queries and run benchmarks.
//!
//! Exit status: 0 for close/accept, 1 for far/reject, 2 for usage or I/O
//! errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use frechet_core::bench::generators::{
    check_ids, header_seed, parse_decider_cases, parse_query_cases, write_decider_cases, write_query_cases,
    QUERY_HEADER, QUERY_KS,
};
use frechet_core::bench::runner::{
    aggregate_table, box_dump, boxes_time_pairs, parse_csv, query_csv, run_query_benchmark, to_csv,
};
use frechet_core::bench::{gen_decider_benchmark, gen_query_benchmark, naive_dp_decide, run_benchmark};
use frechet_core::certificates::Certificate;
use frechet_core::curves::load_dataset;
use frechet_core::query::{find_close_curves, KdTree8};
use frechet_core::{compute_distance, decide_with, frechet_distance, Curve, DecideConfig, RuleSet, Verdict};

#[derive(Parser)]
#[command(name = "frechet", version, about = "Certifying Fréchet distance decider")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two curves are within Fréchet distance DELTA.
    Decide {
        curve_a: PathBuf,
        curve_b: PathBuf,
        delta: f64,
        /// Produce a YES/NO certificate.
        #[arg(long)]
        certify: bool,
        /// Write the certificate here instead of stdout.
        #[arg(long, value_name = "FILE", requires = "certify")]
        cert_out: Option<PathBuf>,
        #[arg(long)]
        no_filters: bool,
        /// Pruning rule to leave out; may be repeated.
        #[arg(long, value_name = "RULE", value_parser = ["2", "3a", "3b", "3c", "4"])]
        disable_rule: Vec<String>,
        /// Print stage and box statistics after the verdict.
        #[arg(long)]
        stats: bool,
        /// Write the explored boxes (`i i2 j j2 rule`) to FILE.
        #[arg(long, value_name = "FILE")]
        dump_boxes: Option<PathBuf>,
    },
    /// Approximate the Fréchet distance by bisection.
    Distance {
        curve_a: PathBuf,
        curve_b: PathBuf,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long)]
        abs_tol: Option<f64>,
    },
    /// List the dataset curves within DELTA of a query curve.
    Query {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        query_curve: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check a certificate file against two curves.
    CheckCert {
        curve_a: PathBuf,
        curve_b: PathBuf,
        delta: f64,
        cert: PathBuf,
    },
    /// Generate a benchmark case file from a dataset.
    GenBench {
        kind: BenchKind,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Random query curves (per k for query benchmarks).
        #[arg(long, default_value_t = 10)]
        queries: usize,
        /// Answer sizes minus one for query benchmarks.
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<usize>>,
    },
    /// Run a benchmark case file and write a CSV report.
    RunBench {
        #[arg(long)]
        cases: PathBuf,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Leave out a pruning rule (2, 3a, 3b, 3c, 4) or `filters`; may be
        /// repeated.
        #[arg(long, value_parser = ["2", "3a", "3b", "3c", "4", "filters"])]
        ablate: Vec<String>,
        #[arg(long)]
        certify: bool,
        /// Worker threads; 1 gives the cleanest per-call timings.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Decide with the reference cell-by-cell dynamic program.
    Oracle {
        curve_a: PathBuf,
        curve_b: PathBuf,
        delta: f64,
    },
    /// Turn reports and box dumps into plottable tables.
    PlotData {
        #[command(subcommand)]
        what: PlotWhat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    Decider,
    Query,
}

#[derive(Subcommand)]
enum PlotWhat {
    /// `boxes time_ns` pairs of complete-decider runs.
    BoxesTime {
        #[arg(long)]
        report: PathBuf,
    },
    /// Per `(k, l, side)` mean time and filtered share.
    Table {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        cases: PathBuf,
    },
    /// Rectangles `x0 y0 x1 y1 rule` from a box dump.
    Boxes {
        #[arg(long)]
        dump: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_curve(path: &Path) -> Result<Curve> {
    Ok(Curve::load(path)?)
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn verdict_code(v: Verdict) -> ExitCode {
    match v {
        Verdict::Close => ExitCode::SUCCESS,
        Verdict::Far => ExitCode::from(1),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Decide {
            curve_a,
            curve_b,
            delta,
            certify,
            cert_out,
            no_filters,
            disable_rule,
            stats,
            dump_boxes,
        } => {
            let (a, b) = (load_curve(&curve_a)?, load_curve(&curve_b)?);
            let mut rules = RuleSet::ALL;
            for r in &disable_rule {
                rules = rules.without(r).with_context(|| format!("unknown rule {r}"))?;
            }
            let config = DecideConfig {
                use_filters: !no_filters,
                use_complete: true,
                rules,
                certify,
                record_boxes: dump_boxes.is_some(),
            };
            let d = decide_with(&a, &b, delta, &config);
            let verdict = d.verdict.context("no verdict")?;
            println!("{verdict}");
            if stats {
                println!("stage {}", d.stage);
                println!("boxes {}", d.stats.boxes_visited);
                println!("max_depth {}", d.stats.max_depth);
            }
            if let Some(path) = dump_boxes {
                write(&path, &box_dump(d.boxes.as_deref().unwrap_or(&[])))?;
            }
            if certify {
                let cert = d.certificate.context("no certificate was produced")?;
                let text = cert.to_text(a.len(), b.len(), delta);
                match cert_out {
                    Some(path) => write(&path, &text)?,
                    None => print!("{text}"),
                }
            }
            Ok(verdict_code(verdict))
        }
        Command::Distance {
            curve_a,
            curve_b,
            rel_tol,
            abs_tol,
        } => {
            let (a, b) = (load_curve(&curve_a)?, load_curve(&curve_b)?);
            let d = match (rel_tol, abs_tol) {
                (None, None) => frechet_distance(&a, &b),
                (rel, abs) => compute_distance(
                    &a,
                    &b,
                    rel.unwrap_or(frechet_core::decider::DEFAULT_REL_TOL),
                    abs.unwrap_or(f64::INFINITY),
                ),
            };
            println!("{d:?}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Query {
            dataset,
            query_curve,
            delta,
            threads,
        } => {
            let data = load_dataset(&dataset)?;
            let pi = load_curve(&query_curve)?;
            let tree = KdTree8::from_curves(&data);
            let found = find_close_curves(&tree, &data, &pi, delta, threads.unwrap_or_else(default_threads));
            for k in found {
                println!("{}", data[k].id());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckCert {
            curve_a,
            curve_b,
            delta,
            cert,
        } => {
            let (a, b) = (load_curve(&curve_a)?, load_curve(&curve_b)?);
            let (c, n, m, _) = Certificate::parse(&read(&cert)?)?;
            if (n, m) != (a.len(), b.len()) {
                println!("reject: certificate is for {n} x {m} vertices, curves have {} x {}", a.len(), b.len());
                return Ok(ExitCode::from(1));
            }
            match c.check(&a, &b, delta) {
                Ok(()) => {
                    println!("accept");
                    Ok(ExitCode::SUCCESS)
                }
                Err(r) => {
                    println!("reject: {r}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::GenBench {
            kind,
            dataset,
            seed,
            out,
            queries,
            ks,
        } => {
            let data = load_dataset(&dataset)?;
            let text = match kind {
                BenchKind::Decider => write_decider_cases(&gen_decider_benchmark(&data, queries, seed)?, seed),
                BenchKind::Query => {
                    let ks = ks.unwrap_or_else(|| QUERY_KS.to_vec());
                    write_query_cases(&gen_query_benchmark(&data, &ks, queries, seed)?, seed)
                }
            };
            write(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::RunBench {
            cases,
            dataset,
            out,
            ablate,
            certify,
            threads,
        } => {
            let data = load_dataset(&dataset)?;
            let text = read(&cases)?;
            let threads = threads.unwrap_or_else(default_threads);
            if text.starts_with(QUERY_HEADER) {
                if !ablate.is_empty() || certify {
                    bail!("--ablate and --certify apply to decider benchmarks only");
                }
                let cases = parse_query_cases(&text)?;
                check_ids(&data, cases.iter().map(|c| c.pi.as_str()))?;
                write(&out, &query_csv(&run_query_benchmark(&data, &cases, threads)?))?;
                return Ok(ExitCode::SUCCESS);
            }
            let cases = parse_decider_cases(&text)?;
            let mut config = DecideConfig {
                certify,
                ..Default::default()
            };
            for a in &ablate {
                if a == "filters" {
                    config.use_filters = false;
                } else {
                    config.rules = config.rules.without(a).with_context(|| format!("unknown rule {a}"))?;
                }
            }
            let records = run_benchmark(&data, &cases, &config, threads)?;
            write(&out, &to_csv(&records, header_seed(&text)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { curve_a, curve_b, delta } => {
            let (a, b) = (load_curve(&curve_a)?, load_curve(&curve_b)?);
            let v = naive_dp_decide(&a, &b, delta);
            println!("{v}");
            Ok(verdict_code(v))
        }
        Command::PlotData { what } => {
            match what {
                PlotWhat::BoxesTime { report } => print!("{}", boxes_time_pairs(&parse_csv(&read(&report)?)?)),
                PlotWhat::Table { report, cases } => {
                    let records = parse_csv(&read(&report)?)?;
                    let cases = parse_decider_cases(&read(&cases)?)?;
                    print!("{}", aggregate_table(&cases, &records));
                }
                PlotWhat::Boxes { dump } => print!("{}", box_rectangles(&read(&dump)?)?),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Box `i i2 j j2 rule` covers `[i, i2] × [j, j2]` of the diagram.
fn box_rectangles(dump: &str) -> Result<String> {
    let mut out = String::from("# x0 y0 x1 y1 rule\n");
    for (k, line) in dump.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let [i, i2, j, j2, rule] = f.as_slice() else {
            bail!("box dump line {}: expected `i i2 j j2 rule`", k + 1);
        };
        for v in [i, i2, j, j2] {
            v.parse::<usize>()
                .with_context(|| format!("box dump line {}: bad index {v}", k + 1))?;
        }
        out.push_str(&format!("{i} {j} {i2} {j2} {rule}\n"));
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
