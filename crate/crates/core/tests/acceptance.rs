//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every comparison below is exact: residuals must vanish identically and
//! counts must match the pinned sample sizes. No numerical tolerance is used.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use akizuki::config::SuiteConfig;
use akizuki::report::{Report, Status, REPORT_SCHEMA};
use akizuki::suite::run_suite;

fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn load(name: &str) -> SuiteConfig {
    SuiteConfig::load(&config_path(name)).expect("shipped configs parse")
}

fn check<'a>(rep: &'a Report, name: &str) -> Option<&'a akizuki::report::CheckRecord> {
    rep.checks.iter().find(|c| c.name == name)
}

fn passed(rep: &Report, name: &str) -> bool {
    check(rep, name).is_some_and(|c| c.status == Status::Pass)
}

fn witness<'a>(rep: &'a Report, name: &str) -> &'a Value {
    static NULL: Value = Value::Null;
    check(rep, name).map_or(&NULL, |c| &c.witness)
}

fn n_minimal(r: u64) -> u64 {
    2 * ((1 << r) - 1)
}

fn exit_code(config: &str) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_akizuki"))
        .arg("--config")
        .arg(config_path(config))
        .arg("suite")
        .output()
        .expect("binary runs")
        .status
        .code()
}

/// Rows `r = 0..=4` present and each residual zero modulo `t^64`.
fn identities_exact(rep: &Report) -> bool {
    let w = witness(rep, "defining-identities");
    let Some(rows) = w["rows"].as_array() else { return false };
    let zero = |v: &Value| v.as_str() == Some(">= 64");
    passed(rep, "defining-identities")
        && w["precision"] == 64
        && (0..=4).all(|r| {
            rows.iter().any(|row| {
                row["r"] == r && zero(&row["step_residual_valuation"]) && zero(&row["telescoped_residual_valuation"])
            })
        })
}

fn crit1(def: &Report, f101: &Report, padic: &Report) -> bool {
    identities_exact(def) && identities_exact(f101) && identities_exact(padic)
}

fn crit2(def: &Report) -> bool {
    (1..=4).all(|i| {
        let w = witness(def, &format!("trick2-i{i}"));
        passed(def, &format!("trick2-i{i}")) && w["identity_holds"] == true && w["certificate_verifies"] == true
    })
}

fn crit3(def: &Report) -> bool {
    let norm = witness(def, "dvr-unit-normalization");
    let small_valuations = norm["valuation_histogram"]
        .as_object()
        .is_some_and(|h| h.keys().all(|k| k.parse::<u32>().is_ok_and(|v| v < 32)));
    let kernel = witness(def, "dvr-kernel-is-tB");
    passed(def, "dvr-unit-normalization")
        && norm["samples"] == 200
        && small_valuations
        && passed(def, "dvr-kernel-is-tB")
        && kernel["agreeing"] == kernel["samples"]
}

fn crit4(def: &Report) -> bool {
    let w = witness(def, "eq6-decomposition");
    passed(def, "eq6-decomposition") && w["samples"] == 100 && w["cases"] == 1500 && w["recomposed"] == 1500
}

fn crit5(def: &Report) -> bool {
    let w = witness(def, "claim-inverse");
    passed(def, "claim-inverse") && w["verified"] == 50 && w["over_cap"] == 0
}

fn crit6(def: &Report) -> bool {
    let rows = witness(def, "ex1-linalg-cross-check").as_array().cloned().unwrap_or_default();
    let generators_found = rows
        .iter()
        .filter(|r| r["membership"] != "w0 in (t)")
        .all(|r| r["found"] == true);
    passed(def, "ex1-certificates") && passed(def, "ex1-linalg-cross-check") && generators_found && rows.len() == 6
}

fn crit7(def: &Report) -> bool {
    let Some(rows) = witness(def, "ex2-nonmembership").as_array() else { return false };
    let r1 = rows.iter().find(|r| r["r"] == 1);
    let table_ok = r1.and_then(|r| r["levels"].as_array()).is_some_and(|levels| {
        [(1, "2", 3), (2, "6", 7), (3, "14", 15), (4, "30", 31)].iter().all(|(s, v, req)| {
            levels.iter().any(|l| l[0] == *s && l[1] == *v && l[2] == *req)
        })
    });
    let all_levels = (0..=4u64).all(|r| {
        rows.iter().any(|row| {
            row["r"] == r
                && row["levels"].as_array().is_some_and(|ls| {
                    ls.last().is_some_and(|l| l[0] == 6)
                        && ls.iter().all(|l| l[1].as_str().and_then(|v| v.parse::<u64>().ok()).map(|v| v + 1) == l[2].as_u64())
                })
        })
    });
    passed(def, "ex2-nonmembership") && table_ok && all_levels
}

fn crit8(def: &Report) -> bool {
    let eqs = witness(def, "integral-equations").as_array().cloned().unwrap_or_default();
    let upto5 = (0..=5u64).all(|i| eqs.iter().any(|e| e["i"] == i && e["holds"] == true));
    passed(def, "frac-witness") && witness(def, "frac-witness")["precision"] == 64 && passed(def, "integral-equations") && upto5
}

fn crit9(def: &Report) -> bool {
    (1..=3).all(|r| {
        let name = format!("chain-search-r{r}");
        let w = witness(def, &name);
        passed(def, &name)
            && w["trials"] == 1000
            && w["transformation_identities"] == 1000
            && w["relations_found"] == 0
            && w["certified_nonzero"] == w["admitted"]
            && w["detected_in_series"] == w["certified_nonzero"]
            && w["largest_detection_precision"].as_u64().is_some_and(|n| n <= 256)
    })
}

fn crit10(def: &Report, f2: &Report) -> bool {
    let rows_ok = |rep: &Report, exact: bool| {
        let Some(rows) = witness(rep, "akizuki-witness").as_array() else { return false };
        (0..=3u64).all(|r| {
            rows.iter().any(|row| {
                let nr = n_minimal(r);
                let e = row["e_star"].as_u64().unwrap_or(0);
                let shifted = row["e_star_for_t^{n_r+1} z_r"].as_u64().unwrap_or(0);
                row["r"] == r
                    && row["not_in_tC"] == true
                    && row["levels_checked"].as_array().is_some_and(|l| l.last() == Some(&Value::from(6)))
                    && e > nr
                    && shifted > nr
                    && (!exact || (e == 2 * nr + 2 && shifted == 2 * nr + 2))
            })
        })
    };
    passed(def, "akizuki-witness") && passed(f2, "akizuki-witness") && rows_ok(def, false) && rows_ok(f2, true)
}

fn crit11(def: &Report) -> bool {
    let b = witness(def, "oracle-b-arithmetic");
    let c = witness(def, "c-round-trip");
    passed(def, "oracle-b-arithmetic")
        && b["operations"] == 1000
        && b["agreeing"] == 1000
        && passed(def, "c-round-trip")
        && c["samples"] == 1000
        && c["identities"] == 1000
}

fn crit12(def: &Report, again: &Report) -> bool {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).expect("schema parses");
    let instance: Value = serde_json::from_str(&def.to_json()).expect("report parses");
    let schema_valid = jsonschema::is_valid(&schema, &instance);
    let deterministic = def.without_timings() == again.without_timings();
    let faults = exit_code("fault_corrupt_series.json") == Some(1)
        && exit_code("fault_corrupt_certificate.json") == Some(1)
        && exit_code("fault_exponents.json") == Some(2);
    def.exit_code() == 0 && schema_valid && deterministic && faults
}

fn main() {
    let def = run_suite(&load("default.json")).expect("default suite runs");
    let again = run_suite(&load("default.json")).expect("default suite runs");
    let f101 = run_suite(&load("f101_random_units.json")).expect("F_101 suite runs");
    let padic = run_suite(&load("padic5.json")).expect("p-adic suite runs");
    let f2 = run_suite(&load("f2.json")).expect("F_2 suite runs");

    let results = [
        ("1", "defining identities vanish mod t^64 for r <= 4 over Q, F_101 and Z_(5)", crit1(&def, &f101, &padic)),
        ("2", "trick-2 identity and tC certificates for i = 1..4", crit2(&def)),
        ("3", "unit normalization on 200 samples, kernel of evaluation is tB", crit3(&def)),
        ("4", "eq6 recomposes exactly on 100 x 5 x 3 cases, Z in C", crit4(&def)),
        ("5", "claim f g = t^{2n} w on 50 elements of M, n = series valuation", crit5(&def)),
        ("6", "M^2 = tM by certificates and by linear algebra", crit6(&def)),
        ("7", "t^{n_r} z_r not in C at levels <= 6, table (2,3) (6,7) (14,15) (30,31)", crit7(&def)),
        ("8", "fraction witness at N = 64, integral equations for i <= 5", crit8(&def)),
        ("9", "1000 candidates per r <= 3: identity, certification, no relation, detection <= 256", crit9(&def)),
        ("10", "x_r not in tC at levels <= 6, e* > n_r, e* = 2n_r + 2 over F_2", crit10(&def, &f2)),
        ("11", "1000 B operations match the series oracle, 1000 C round trips", crit11(&def)),
        ("12", "exit 0, schema-valid, deterministic; faults exit 1, 1, 2", crit12(&def, &again)),
    ];

    let mut failed = 0;
    for (id, what, ok) in &results {
        println!("{} criterion {id:>2}: {what}", if *ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
