use std::process::{Command, Output};

use akizuki::report::{Report, Status};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_akizuki")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_config(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn decompose_prints_the_normal_form() {
    let out = run(&["decompose", "w0", "--r", "2", "--N", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("X = t^3 + t^7"), "{text}");
    assert!(text.contains("Y = 1"));
    assert!(text.contains("Z = 0"));
    assert!(text.contains("recomposition: exact"));
}

#[test]
fn member_reports_failures_per_level() {
    let out = run(&["member", "t^2*z1", "--max-level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("NotMember through level 3"), "{text}");
    assert!(text.contains("    3       1        14        15"), "{text}");

    let out = run(&["member", "t^3*z1", "--max-level", "3"]);
    assert!(stdout(&out).starts_with("Member at level 1"));
}

#[test]
fn claim_checks_its_witness() {
    let out = run(&["claim", "t*y0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("n = 5, r = 2"), "{text}");
    assert!(text.contains("f*g = t^10*w: exact, w not in M"));
}

#[test]
fn claim_rejects_units() {
    let out = run(&["claim", "1 + t"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["member", "z9", "--max-level", "3"]).status.code(), Some(2));
    let out = run(&["member", "1 + * t", "--max-level", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 4"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write_config(&dir, "unknown.json", r#"{"bogus": 1}"#);
    assert_eq!(run(&["--config", &unknown, "validate"]).status.code(), Some(2));
    let bad_prime = write_config(
        &dir,
        "prime.json",
        r#"{"base": {"mode": "poly", "field": "prime", "q": 91},
            "coefficients": {"preset": "ones"}, "exponents": {"kind": "minimal"}}"#,
    );
    assert_eq!(run(&["--config", &bad_prime, "suite"]).status.code(), Some(2));
    assert_eq!(run(&["--config", "/nonexistent/config.json", "validate"]).status.code(), Some(2));
}

#[test]
fn validate_lists_violations() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "bad.json",
        r#"{"base": {"mode": "poly", "field": "rationals"}, "coefficients": {"preset": "ones"},
            "exponents": {"kind": "explicit", "values": [0, 2, 5]}, "r_max": 1, "max_level": 2}"#,
    );
    let out = run(&["--config", &cfg, "validate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("violation: n_2 = 5 < 2*n_1 + 2 = 6"));
    assert_eq!(run(&["validate"]).status.code(), Some(0));
}

#[test]
fn suite_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "small.json",
        r#"{"base": {"mode": "poly", "field": "prime", "q": 2}, "coefficients": {"preset": "ones"},
            "exponents": {"kind": "minimal"}, "suites": ["identities", "trick2", "ex2", "akizuki"]}"#,
    );
    let out_path = dir.path().join("report.json");
    let out = run(&["--config", &cfg, "suite", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report.summary.total, report.checks.len());
    assert!(report.checks.iter().all(|c| c.status == Status::Pass));
    assert!(stdout(&out).contains("checks: "));
}

#[test]
fn corrupted_certificate_fails_the_suite() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "fault.json",
        r#"{"base": {"mode": "poly", "field": "rationals"}, "coefficients": {"preset": "ones"},
            "exponents": {"kind": "minimal"}, "suites": ["trick2"], "fault": {"kind": "corrupt-certificate"}}"#,
    );
    let out = run(&["--config", &cfg, "suite"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL         trick2-i1"));
}

#[test]
fn chain_search_finds_no_relation() {
    let out = run(&["chain", "--r", "1", "--trials", "20", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("relations found: 0"));
}
