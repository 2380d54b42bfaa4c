use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_mfcvrp");

/// Small stand-ins named after the TC_4_1 instances.
fn instance_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let coords = [(0, 0), (10, 1), (12, 6), (1, 11), (-8, 7), (-4, -9), (6, -5), (3, 3)];
    for (i, name) in ["P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n21-k2"].iter().enumerate() {
        let n = 5 + i;
        let mut text = format!(
            "NAME : {name}\nTYPE : CVRP\nDIMENSION : {}\nEDGE_WEIGHT_TYPE : EUC_2D\nCAPACITY : 10\nNODE_COORD_SECTION\n",
            n
        );
        for (k, (x, y)) in coords[..n].iter().enumerate() {
            text += &format!("{} {x} {y}\n", k + 1);
        }
        text += "DEMAND_SECTION\n";
        for k in 0..n {
            text += &format!("{} {}\n", k + 1, if k == 0 { 0 } else { 1 + k % 4 });
        }
        text += "DEPOT_SECTION\n1\n-1\nEOF\n";
        fs::write(dir.path().join(format!("{name}.vrp")), text).unwrap();
    }
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("MFCVRP_INSTANCES")
        .output()
        .unwrap()
}

fn solve(instances: &Path, out: &Path, extra: &[&str]) -> Output {
    solve_runs(instances, out, "3", extra)
}

fn solve_runs(instances: &Path, out: &Path, runs: &str, extra: &[&str]) -> Output {
    let mut args = vec![
        "solve",
        "--testcase",
        "TC_4_1",
        "--runs",
        runs,
        "--pop",
        "20",
        "--budget",
        "400",
        "--instances",
        instances.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    run(&args)
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn sorted_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut files: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

#[test]
fn solve_is_deterministic() {
    let inst = instance_dir();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let o = solve(inst.path(), a.path(), &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&solve(inst.path(), b.path(), &["--sequential"])), 0);
    let fa = sorted_files(a.path());
    let fb = sorted_files(b.path());
    // results, three run ledgers, mean ledger
    assert_eq!(fa.len(), 5);
    for (x, y) in fa.iter().zip(&fb) {
        assert_eq!(x.file_name(), y.file_name());
        assert_eq!(fs::read(x).unwrap(), fs::read(y).unwrap(), "{}", x.display());
    }
}

#[test]
fn usage_errors_exit_1() {
    let inst = instance_dir();
    let out = tempfile::tempdir().unwrap();
    let unknown = run(&[
        "solve",
        "--testcase",
        "TC_9",
        "--instances",
        inst.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&unknown), 1);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("TC_9"));
    assert_eq!(code(&solve(inst.path(), out.path(), &["--grid", "3x3"])), 1);
    assert_eq!(code(&solve(inst.path(), out.path(), &["--grid", "wide"])), 1);
    assert_eq!(code(&solve(inst.path(), out.path(), &["--rmp", "2"])), 1);
    assert_eq!(code(&run(&["solve"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn missing_files_exit_2() {
    let empty = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let o = solve(empty.path(), out.path(), &[]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("P-n16-k8.vrp"));
    assert_eq!(code(&run(&["report", "--results", "/nonexistent/results.csv"])), 2);
}

#[test]
fn instance_dir_from_environment() {
    let inst = instance_dir();
    let out = tempfile::tempdir().unwrap();
    let o = Command::new(BIN)
        .args([
            "solve",
            "--testcase",
            "TC_4_1",
            "--runs",
            "1",
            "--pop",
            "20",
            "--budget",
            "300",
        ])
        .args(["--algo", "mfea", "--out", out.path().to_str().unwrap()])
        .env("MFCVRP_INSTANCES", inst.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(sorted_files(out.path()).len(), 1);
}

#[test]
fn report_heatmap_and_similarity() {
    let inst = instance_dir();
    let out = tempfile::tempdir().unwrap();
    assert_eq!(code(&solve(inst.path(), out.path(), &[])), 0);

    let results = out.path().join("TC_4_1_results.csv");
    let rep_dir = out.path().join("report");
    let o = run(&[
        "report",
        "--results",
        results.to_str().unwrap(),
        "--out",
        rep_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("P-n21-k2") && stdout.contains("sig"));
    assert!(rep_dir.join("summary.csv").is_file() && rep_dir.join("comparison.csv").is_file());

    let svg = out.path().join("heat.svg");
    let mean = out.path().join("TC_4_1_mfcga_transfer_mean.csv");
    let o = run(&[
        "heatmap",
        "--ledger",
        mean.to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let from_mean = fs::read_to_string(&svg).unwrap();
    assert!(from_mean.starts_with("<svg") && from_mean.contains("P-n20-k2"));

    let runs: Vec<String> = (0..3)
        .map(|r| {
            out.path()
                .join(format!("TC_4_1_mfcga_ledger_run{r}.csv"))
                .display()
                .to_string()
        })
        .collect();
    let o = run(&[
        "heatmap",
        "--ledger",
        &runs[0],
        &runs[1],
        &runs[2],
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);

    let o = run(&[
        "similarity",
        "--instances",
        inst.path().to_str().unwrap(),
        "--names",
        "P-n16-k8,P-n21-k2",
        "--out",
        out.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    // The smaller instance's clients all appear in the larger one.
    let table = fs::read_to_string(out.path().join("client_overlap.csv")).unwrap();
    assert!(table.contains("P-n21-k2,P-n16-k8,100"));
    assert!(table.contains("P-n16-k8,P-n21-k2,57.1"));
}

#[test]
fn two_runs_still_write_artifacts() {
    let inst = instance_dir();
    let out = tempfile::tempdir().unwrap();
    let o = solve_runs(inst.path(), out.path(), "2", &[]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no summary"));
    assert_eq!(sorted_files(out.path()).len(), 4);
}
