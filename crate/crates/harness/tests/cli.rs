//! End-to-end tests of the `rhc` binary: exit codes, file round trips,
//! and output formats, driven through real process invocations.

use std::path::Path;
use std::process::{Command, Output};

use rhc_core::{complete_plus_pendant, GraphFamily};
use rhc_harness::io;

fn rhc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rhc"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process not signalled")
}

const DENSE_FAMILY: &str = "n=4\n\
graph 1:\n1 2\n1 3\n1 4\n2 3\n2 4\n\
graph 2:\n1 2\n1 3\n1 4\n2 3\n3 4\n\
graph 3:\n1 2\n1 3\n2 3\n2 4\n3 4\n\
graph 4:\n1 3\n1 4\n2 3\n2 4\n3 4\n";

fn write_file(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

#[test]
fn solve_emits_validating_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let fam_path = write_file(dir.path(), "fam.txt", DENSE_FAMILY);
    let cert_path = dir.path().join("cert.json");
    let out = rhc(&["solve", "--input", &fam_path, "--out", cert_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("rainbow Hamiltonian cycle on 4 vertices"));
    let family = io::read_family(Path::new(&fam_path)).unwrap();
    let cycle = io::read_certificate(&cert_path).unwrap();
    cycle.validate_against(&family).unwrap();
}

#[test]
fn solve_reports_cycle_free_family_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let fam = GraphFamily::uniform(&complete_plus_pendant(4).unwrap()).unwrap();
    let path = dir.path().join("fam.txt");
    io::write_family(&fam, &path, io::FileFormat::Text).unwrap();
    let out = rhc(&["solve", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no rainbow Hamiltonian cycle"));
}

#[test]
fn solve_budget_exhaustion_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let fam_path = write_file(dir.path(), "fam.txt", DENSE_FAMILY);
    let out = rhc(&["solve", "--input", &fam_path, "--budget", "1"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(code(&rhc(&["no-such-command"])), 1);
    assert_eq!(code(&rhc(&["solve"])), 1, "missing required --input");
    assert_eq!(code(&rhc(&["check", "--input", "x", "--theorem", "nope"])), 1);
    assert_eq!(code(&rhc(&["--help"])), 0);
    assert_eq!(code(&rhc(&["verify", "--help"])), 0);
}

#[test]
fn malformed_family_file_exits_one_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "bad.txt", "n=4\ngraph 1:\n1 2\n1 oops\n");
    let out = rhc(&["solve", "--input", &path]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 4"), "diagnostic names the line: {}", stderr(&out));
}

#[test]
fn kelmans_then_solve_then_lift_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let fam_path = write_file(dir.path(), "fam.txt", DENSE_FAMILY);
    let fixed_path = dir.path().join("fixed.txt");
    let out = rhc(&["kelmans", "--input", &fam_path, "--out", fixed_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("fixpoint reached"));

    let cert_path = dir.path().join("fixed-cert.json");
    let out = rhc(&[
        "solve",
        "--input",
        fixed_path.to_str().unwrap(),
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let lifted_path = dir.path().join("lifted.json");
    let out = rhc(&[
        "lift",
        "--input",
        &fam_path,
        "--cycle",
        cert_path.to_str().unwrap(),
        "--out",
        lifted_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let family = io::read_family(Path::new(&fam_path)).unwrap();
    let lifted = io::read_certificate(&lifted_path).unwrap();
    lifted.validate_against(&family).unwrap();
}

#[test]
fn lift_rejects_certificate_for_wrong_family() {
    let dir = tempfile::tempdir().unwrap();
    let fam_path = write_file(dir.path(), "fam.txt", DENSE_FAMILY);
    // Build a certificate whose cycle uses edge {3,4}; the transformed
    // dense family concentrates all members onto vertex 1 and 2 and never
    // keeps that edge, so the certificate cannot validate against it.
    let sparse = "n=4\n\
graph 1:\n1 3\n\
graph 2:\n3 4\n\
graph 3:\n2 4\n\
graph 4:\n1 2\n";
    let sparse_path = write_file(dir.path(), "sparse.txt", sparse);
    let cert_path = dir.path().join("cert.json");
    let out = rhc(&["solve", "--input", &sparse_path, "--out", cert_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = rhc(&["lift", "--input", &fam_path, "--cycle", cert_path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("not valid for the transformed family"));
}

#[test]
fn spectral_reports_exact_tie() {
    let dir = tempfile::tempdir().unwrap();
    let graph = "n=5\n\
graph 1:\n1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n";
    let path = write_file(dir.path(), "g.txt", graph);
    let out = rhc(&["spectral", "--input", &path]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("equal threshold 3"), "{text}");
    assert!(text.contains("above threshold 6"), "{text}");

    let out = rhc(&["spectral", "--input", &path, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["adjacency_verdict"], "equal");
    assert_eq!(v["signless_verdict"], "above");
}

#[test]
fn construct_routes_and_all_equal_answer() {
    let dir = tempfile::tempdir().unwrap();
    let fam_path = write_file(dir.path(), "fam.txt", DENSE_FAMILY);
    let out = rhc(&["construct", "--input", &fam_path, "--route", "size"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("rainbow Hamiltonian cycle"));

    let all_equal = GraphFamily::uniform(&complete_plus_pendant(5).unwrap()).unwrap();
    let path = dir.path().join("equal.txt");
    io::write_family(&all_equal, &path, io::FileFormat::Text).unwrap();
    let out = rhc(&["construct", "--input", path.to_str().unwrap(), "--route", "extremal"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("all members are identical"));

    // The size route must refuse this family: members sit at the weak bound.
    let out = rhc(&["construct", "--input", path.to_str().unwrap(), "--route", "size"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("error"));
}

#[test]
fn check_json_contains_verdict_fields() {
    let dir = tempfile::tempdir().unwrap();
    let graph = "n=5\n\
graph 1:\n1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n";
    let path = write_file(dir.path(), "g.txt", graph);
    let out = rhc(&[
        "check",
        "--input",
        &path,
        "--theorem",
        "fiedler-nikiforov",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["theorem"], "fiedler-nikiforov");
    assert_eq!(v["verdict"], false, "radius ties the threshold, strict bound fails");
    assert_eq!(v["checks"][0]["borderline"], true);

    let fam_path = write_file(dir.path(), "fam.txt", DENSE_FAMILY);
    let out = rhc(&["check", "--input", &fam_path, "--theorem", "rainbow-size"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: satisfied"));
}

#[test]
fn verify_csv_single_row_and_clean_exit() {
    let out = rhc(&[
        "verify",
        "--campaign",
        "extremal",
        "--n",
        "4",
        "--mode",
        "exhaustive",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 2, "header plus one row: {text}");
    assert!(lines[0].starts_with("campaign,n,mode,seed"));
    assert!(lines[1].starts_with("extremal,4,exhaustive,,20736,20736,"));
}

#[test]
fn verify_json_report_written_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = rhc(&[
        "verify",
        "--campaign",
        "rainbow-spectral",
        "--n",
        "6",
        "--samples",
        "5",
        "--seed",
        "11",
        "--format",
        "json",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(v["campaign"], "rainbow-spectral");
    assert_eq!(v["n"], 6);
    assert_eq!(v["mode"], "sampled");
    assert_eq!(v["families_tested"], 6, "five samples plus the exceptional probe");
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn search_small_run_is_clean() {
    let out = rhc(&["search", "--n", "6", "--samples", "5", "--seed", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("campaign search"));
    assert!(text.contains("violations: 0"));
}

#[test]
fn csv_rejected_outside_reports() {
    let dir = tempfile::tempdir().unwrap();
    let fam_path = write_file(dir.path(), "fam.txt", DENSE_FAMILY);
    let out = rhc(&["solve", "--input", &fam_path, "--format", "csv"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("csv"));
}
