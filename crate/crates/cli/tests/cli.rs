use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn frechet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frechet")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn curve(dir: &Path, name: &str, xy: &[(f64, f64)]) -> String {
    let path = dir.join(name);
    let text: String = xy.iter().map(|(x, y)| format!("{x} {y}\n")).collect();
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

#[test]
fn decide_identical_and_far() {
    let dir = tempfile::tempdir().unwrap();
    let a = curve(dir.path(), "a.txt", &[(0.0, 0.0), (1.0, 2.0), (3.0, 1.0)]);
    let b = curve(dir.path(), "b.txt", &[(10.0, 0.0), (11.0, 2.0)]);
    let o = frechet(&["decide", &a, &a, "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "close\n");
    let o = frechet(&["decide", &a, &b, "1e-9"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "far\n");
}

#[test]
fn certificate_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let data = fixtures().join("zigzag");
    let (a, b) = (data.join("zigzag-a.txt"), data.join("zigzag-b.txt"));
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    let dist = stdout(&frechet(&["distance", a, b]));
    let dist: f64 = dist.trim().parse().unwrap();
    for (delta, code) in [(dist * 1.001, 0), (dist * 0.999, 1)] {
        let cert = dir.path().join("c.txt");
        let delta = format!("{delta:?}");
        let o = frechet(&["decide", a, b, &delta, "--certify", "--cert-out", cert.to_str().unwrap(), "--no-filters"]);
        assert_eq!(o.status.code(), Some(code));
        let o = frechet(&["check-cert", a, b, &delta, cert.to_str().unwrap()]);
        assert_eq!(stdout(&o), "accept\n");
        assert_eq!(o.status.code(), Some(0));
        let o = frechet(&["oracle", a, b, &delta]);
        assert_eq!(o.status.code(), Some(code));
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let a = curve(dir.path(), "a.txt", &[(0.0, 0.0), (4.0, 0.0)]);
    let b = curve(dir.path(), "b.txt", &[(0.0, 0.0), (2.0, 3.0), (4.0, 0.0)]);
    let cert = dir.path().join("c.txt");
    fs::write(&cert, "YES\n2 3 1.0\n0.0 0.0\n1.0 2.0\n").unwrap();
    let o = frechet(&["check-cert", &a, &b, "1.0", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("reject"));
    fs::write(&cert, "YES\n9 9 1.0\n0.0 0.0\n").unwrap();
    assert_eq!(frechet(&["check-cert", &a, &b, "1.0", cert.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn usage_and_io_errors_exit_2() {
    assert_eq!(frechet(&["decide", "only-one-arg"]).status.code(), Some(2));
    assert_eq!(frechet(&["decide", "/nonexistent/a", "/nonexistent/b", "1"]).status.code(), Some(2));
    assert_eq!(frechet(&["frobnicate"]).status.code(), Some(2));
    let o = frechet(&["decide", "/nonexistent/a", "/nonexistent/b", "1"]);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn query_lists_close_curves() {
    let data = fixtures().join("small/dataset.txt");
    let q = fixtures().join("small/c0000.txt");
    let (data, q) = (data.to_str().unwrap(), q.to_str().unwrap());
    let one = stdout(&frechet(&["query", "--dataset", data, "--query-curve", q, "--delta", "0", "--threads", "1"]));
    assert_eq!(one, "c0000.txt\n");
    let all_1 = frechet(&["query", "--dataset", data, "--query-curve", q, "--delta", "1e6", "--threads", "1"]);
    let all_4 = frechet(&["query", "--dataset", data, "--query-curve", q, "--delta", "1e6", "--threads", "4"]);
    assert_eq!(stdout(&all_1).lines().count(), 20);
    assert_eq!(stdout(&all_1), stdout(&all_4));
}

#[test]
fn bench_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let data = fixtures().join("small/dataset.txt");
    let data = data.to_str().unwrap();
    let cases = dir.path().join("cases.tsv");
    let report = dir.path().join("report.csv");
    let (cases_s, report_s) = (cases.to_str().unwrap(), report.to_str().unwrap());

    let o = frechet(&["gen-bench", "decider", "--dataset", data, "--seed", "7", "--queries", "2", "--out", cases_s]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&cases).unwrap();
    assert!(text.contains("seed=7"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2 * 4 * 22);

    let o = frechet(&["run-bench", "--cases", cases_s, "--dataset", data, "--out", report_s, "--ablate", "3b", "--threads", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(&report).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# seed=7"));
    assert_eq!(lines.next(), Some("case_id,n,m,delta,verdict,stage,boxes,time_ns,config"));
    assert!(csv.contains(",omit-3b"));

    let o = frechet(&["plot-data", "table", "--report", report_s, "--cases", cases_s]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 4 * 11 * 2);
    let o = frechet(&["plot-data", "boxes-time", "--report", report_s]);
    assert_eq!(o.status.code(), Some(0));

    let qcases = dir.path().join("q.tsv");
    let o = frechet(&["gen-bench", "query", "--dataset", data, "--seed", "1", "--ks", "0,1,10", "--queries", "2", "--out", qcases.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = frechet(&["run-bench", "--cases", qcases.to_str().unwrap(), "--dataset", data, "--out", report_s]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(&report).unwrap();
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let k: usize = f[1].parse().unwrap();
        assert_eq!(f[4].parse::<usize>().unwrap(), k + 1);
    }
    let o = frechet(&["gen-bench", "query", "--dataset", data, "--ks", "1000", "--out", qcases.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn box_dump_to_rectangles() {
    let dir = tempfile::tempdir().unwrap();
    let data = fixtures().join("zigzag");
    let (a, b) = (data.join("zigzag-a.txt"), data.join("zigzag-b.txt"));
    let dump = dir.path().join("boxes.txt");
    let o = frechet(&[
        "decide",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "0.5",
        "--no-filters",
        "--stats",
        "--dump-boxes",
        dump.to_str().unwrap(),
    ]);
    let out = stdout(&o);
    let boxes: usize = out.lines().find_map(|l| l.strip_prefix("boxes ")).unwrap().parse().unwrap();
    let text = fs::read_to_string(&dump).unwrap();
    assert_eq!(text.lines().count(), boxes);
    let o = frechet(&["plot-data", "boxes", "--dump", dump.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().count(), boxes + 1);
}
