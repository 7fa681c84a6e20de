//! Runs the bundled sessions through the binary and compares the JSON, with
//! timings masked, against checked-in goldens. `UPDATE_GOLDEN=1` rewrites them.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

const SESSIONS: [&str; 3] = ["identity", "ideal_not_phantom", "fermat_flagship"];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn masked_run(session: &Path) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_closure-lab"))
        .arg("run")
        .arg(session)
        .output()
        .expect("binary runs");
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    for rec in v["records"].as_array_mut().unwrap() {
        rec["wall_ms"] = Value::from(0);
    }
    (serde_json::to_string_pretty(&v).unwrap() + "\n", out.status.code().unwrap())
}

#[test]
fn sessions_match_goldens_across_runs() {
    for s in SESSIONS {
        let path = root().join("sessions").join(format!("{s}.session"));
        let golden = root().join("tests/golden").join(format!("{s}.json"));
        let runs: Vec<_> = (0..3).map(|_| masked_run(&path)).collect();
        assert!(runs.iter().all(|r| r == &runs[0]), "{s} output differs between runs");
        assert_eq!(runs[0].1, 0, "{s} exit code");
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&golden, &runs[0].0).unwrap();
        }
        let expected = std::fs::read_to_string(&golden).unwrap_or_else(|_| panic!("missing {}", golden.display()));
        assert_eq!(runs[0].0, expected, "{s} differs from golden");
    }
}

#[test]
fn documented_verdicts() {
    let verdict = |s: &str, i: usize| -> Value {
        let text = std::fs::read_to_string(root().join("tests/golden").join(format!("{s}.json"))).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        v["records"][i].clone()
    };
    assert_eq!(verdict("identity", 0)["verdict"], "in");
    let r = verdict("ideal_not_phantom", 1);
    assert_eq!(r["verdict"], "not_in");
    assert_eq!(r["witness_q"], 1);
    let r = verdict("fermat_flagship", 0);
    assert_eq!(r["verdict"], "in_to_bound");
    assert_eq!(r["bound_e"], 3);
}

#[test]
fn inline_check_and_text_format() {
    let out = Command::new(env!("CARGO_BIN_EXE_closure-lab"))
        .args(["check", "--format", "text", "--expr"])
        .arg("ring R = poly(5; x) oracle T = fc(emax = 1) check member (x) in span((x^2)) with T expect in")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[unknown]") || text.contains("[not_in]"), "{text}");
}
