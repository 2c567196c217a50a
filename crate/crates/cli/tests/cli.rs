//! End-to-end runs of the `bmssp` binary.

use std::path::Path;
use std::process::{Command, Output};

use bmssp_cli::parse_csv;

fn bmssp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmssp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_run_and_bench() {
    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("g.gr");
    let out = bmssp(&["gen", "--n", "500", "--seed", "7", "--out", path_str(&gr)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&gr).unwrap();
    assert!(text.lines().any(|l| l == "p sp 500 1500"));

    let checksum = |algo: &str| {
        let out = bmssp(&["run", "--input", path_str(&gr), "--algo", algo]);
        assert!(out.status.success());
        let line = String::from_utf8(out.stdout).unwrap();
        line.split_whitespace()
            .find_map(|w| w.strip_prefix("checksum="))
            .unwrap()
            .to_string()
    };
    assert_eq!(checksum("dijkstra"), checksum("bmssp"));

    let csv = dir.path().join("out.csv");
    let out = bmssp(&[
        "bench",
        "--inputs",
        path_str(&gr),
        "--gen-log2",
        "8",
        "--reps",
        "2",
        "--csv",
        path_str(&csv),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let records = parse_csv(std::fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(
        (records[0].instance.as_str(), records[0].n, records[0].m),
        ("g.gr", 500, 1500)
    );
    assert_eq!(records[1].n, 256);
    assert!(records.iter().all(|r| r.repetitions == 2 && r.ratio > 0.0));
}

#[test]
fn generated_run_matches_written_file() {
    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("g.gr");
    assert!(
        bmssp(&["gen", "--n", "300", "--seed", "2", "--out", path_str(&gr)])
            .status
            .success()
    );
    let from_file = bmssp(&["run", "--input", path_str(&gr), "--algo", "bmssp"]);
    let generated = bmssp(&["run", "--gen-n", "300", "--seed", "2", "--algo", "bmssp"]);
    let sum = |o: &Output| {
        String::from_utf8_lossy(&o.stdout)
            .split_whitespace()
            .find(|w| w.starts_with("checksum="))
            .map(String::from)
    };
    assert!(sum(&from_file).is_some());
    assert_eq!(sum(&from_file), sum(&generated));
}

#[test]
fn threshold_output() {
    let out = bmssp(&["threshold", "--c", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n0 = 134217729"));
    assert!(text.contains("10^8"));
    let out = bmssp(&["threshold", "--c", "1"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("n0 = 3\n"));
}

#[test]
fn ratio_curve_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curve.csv");
    let out = bmssp(&[
        "ratio-curve",
        "--n-min",
        "1",
        "--n-max",
        "8",
        "--csv",
        path_str(&csv),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "n,theoretical_ratio");
    assert_eq!(lines[1], "2,1");
    assert_eq!(lines[8], "256,0.5");
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(bmssp(&[]).status.code(), Some(1));
    assert_eq!(bmssp(&["threshold", "--c", "-2"]).status.code(), Some(1));
    assert_eq!(bmssp(&["run", "--algo", "bmssp"]).status.code(), Some(1));
    assert_eq!(
        bmssp(&["run", "--gen-n", "5", "--algo", "astar"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        bmssp(&["run", "--gen-n", "5", "--source", "6", "--algo", "bmssp"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        bmssp(&[
            "ratio-curve",
            "--n-min",
            "0",
            "--n-max",
            "3",
            "--csv",
            "/dev/null"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(bmssp(&["--help"]).status.code(), Some(0));

    // I/O errors.
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.gr");
    assert_eq!(
        bmssp(&["run", "--input", path_str(&missing), "--algo", "dijkstra"])
            .status
            .code(),
        Some(3)
    );
    let csv = dir.path().join("out.csv");
    let out = bmssp(&[
        "bench",
        "--inputs",
        path_str(&missing),
        "--gen-log2",
        "6",
        "--reps",
        "1",
        "--csv",
        path_str(&csv),
    ]);
    assert_eq!(out.status.code(), Some(3));
    // The generated instance is still reported.
    assert_eq!(
        parse_csv(std::fs::File::open(&csv).unwrap()).unwrap().len(),
        1
    );
    let unwritable = dir.path().join("no/such/dir/g.gr");
    assert_eq!(
        bmssp(&[
            "gen",
            "--n",
            "10",
            "--seed",
            "1",
            "--out",
            path_str(&unwritable)
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn malformed_input_exits_with_io_code() {
    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("bad.gr");
    std::fs::write(&gr, "p sp 2 1\na 1 3 5\n").unwrap();
    let out = bmssp(&["run", "--input", path_str(&gr), "--algo", "bmssp"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.gr"));
}
