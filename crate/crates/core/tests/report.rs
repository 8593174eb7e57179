use std::path::PathBuf;

use serde_json::Value;

use akizuki::config::{Suite, SuiteConfig};
use akizuki::report::{Report, REPORT_SCHEMA};
use akizuki::suite::run_suite;

fn small_config() -> SuiteConfig {
    SuiteConfig {
        suites: vec![Suite::Identities, Suite::Claim, Suite::Ex2, Suite::MaximalIdeal],
        ..SuiteConfig::default()
    }
}

#[test]
fn shipped_default_matches_builtin() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/default.json");
    assert_eq!(SuiteConfig::load(&path).unwrap(), SuiteConfig::default());
}

#[test]
fn reports_are_schema_valid_and_round_trip() {
    let report = run_suite(&small_config()).unwrap();
    let json = report.to_json();
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let instance: Value = serde_json::from_str(&json).unwrap();
    if let Err(e) = jsonschema::validate(&schema, &instance) {
        panic!("schema violation: {e}");
    }
    let back: Report = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn same_seed_same_report() {
    let a = run_suite(&small_config()).unwrap().without_timings();
    let b = run_suite(&small_config()).unwrap().without_timings();
    assert_eq!(a.to_json(), b.to_json());
    let other = run_suite(&SuiteConfig { seed: 7, ..small_config() }).unwrap().without_timings();
    assert_ne!(a.checks, other.checks);
}
