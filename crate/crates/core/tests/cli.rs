use std::path::PathBuf;
use std::process::Command;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn rtype(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rtype")).args(args).env_remove("RTYPE_SEED").output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn type_json_has_both_invariants() {
    let f = corpus().join("remark5_2.dom");
    let (code, out, _) = rtype(&["type", f.to_str().unwrap(), "--invariant", "qtypes,multitype", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["qtypes"]["value"], serde_json::json!(["1", "4", "6"]));
    assert_eq!(v["results"]["multitype"]["value"], serde_json::json!(["1", "4", "4"]));
    for key in ["domain", "point", "results", "version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn json_round_trip_is_byte_identical() {
    let f = corpus().join("remark5_1.dom");
    let (_, out, _) = rtype(&["type", f.to_str().unwrap(), "--invariant", "line,regular", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap(), out.trim_end());
    assert_eq!(v["results"]["line"]["value"], "2");
    assert_eq!(v["results"]["regular"]["value"], "4");
}

#[test]
fn timings_are_opt_in() {
    let f = corpus().join("sphere2.dom");
    let (_, out, _) = rtype(&["type", f.to_str().unwrap(), "--invariant", "line", "--json", "--timings"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["results"]["line"]["millis"].is_u64());
}

#[test]
fn seed_override_is_recorded() {
    let f = corpus().join("sphere2.dom");
    let out = Command::new(env!("CARGO_BIN_EXE_rtype"))
        .args(["type", f.to_str().unwrap(), "--invariant", "regular", "--json"])
        .env("RTYPE_SEED", "17")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["regular"]["seed"], 17);
}

#[test]
fn unknown_invariant_is_a_usage_error() {
    let f = corpus().join("sphere2.dom");
    let (code, _, err) = rtype(&["type", f.to_str().unwrap(), "--invariant", "bogus"]);
    assert_eq!(code, 1);
    assert!(err.contains("bogus"));
}

#[test]
fn check_exit_codes() {
    let ok = corpus().join("sphere2.dom");
    assert_eq!(rtype(&["check", ok.to_str().unwrap()]).0, 0);
    let bad = corpus().join("not_convex.dom");
    let (code, out, _) = rtype(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("not_convex"));
}

#[test]
fn syntax_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.dom");
    std::fs::write(&f, "[domain]\nn = 2\nmodel = modulus\nrho = \"|z1|^2 + z2 - 1\"\n[point]\np = (\"1\", \"0\")\n").unwrap();
    let (code, _, err) = rtype(&["type", f.to_str().unwrap(), "--invariant", "line"]);
    assert_eq!(code, 1);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn planted_wrong_annotation_fails_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus().join("sphere2.dom")).unwrap().replace("line = 2", "line = 3");
    std::fs::write(dir.path().join("wrong.dom"), text).unwrap();
    let (code, out, _) = rtype(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    let row = out.lines().find(|l| l.contains(" line ")).unwrap();
    assert!(row.contains("FAIL") && row.contains('3') && row.contains('2'), "{row}");
}

#[test]
fn corpus_filter() {
    let (code, out, _) = rtype(&["corpus", corpus().to_str().unwrap(), "--filter", "sphere*"]);
    assert_eq!(code, 0);
    assert!(out.contains("sphere2") && out.contains("sphere3_infinite"));
    assert!(!out.contains("remark5_1"));
}

#[test]
fn oracle_subcommand() {
    let f = corpus().join("remark5_2.dom");
    let (code, out, _) = rtype(&["oracle", f.to_str().unwrap(), "--max-deg", "1", "--lattice", "binary", "--budget", "100", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["oracle"]["best"], "6");
}
