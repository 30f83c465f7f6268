use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/newforms")
}

fn run(args: &[&str], fixtures: &Path, cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_almodel"))
        .args(args)
        .arg("--fixtures")
        .arg(fixtures)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn empty_space_at_level_one() {
    let cache = tempfile::tempdir().unwrap();
    let o = run(&["al-matrix", "--level", "1", "--weight", "2"], &fixture_dir(), cache.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["genus"], 0);
    assert_eq!(v["header"]["command"], "al-matrix");
    assert!(v["verification"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn missing_fixture_is_named() {
    let cache = tempfile::tempdir().unwrap();
    let o = run(&["al-matrix", "--level", "37"], &fixture_dir(), cache.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("no fixture for level 37, weight 2"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn flag_ranges_are_input_errors() {
    let cache = tempfile::tempdir().unwrap();
    for args in [
        &["al-matrix", "--level", "11", "--precision-bits", "32"][..],
        &["al-matrix", "--level", "11", "--max-escalations", "9"][..],
        &["al-matrix", "--level", "12", "--gamma1", "5"][..],
        &["sl2-table", "--level", "1"][..],
        &["frobnicate"][..],
    ] {
        assert_eq!(run(args, &fixture_dir(), cache.path()).status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn precision_exhaustion_exits_with_four() {
    let cache = tempfile::tempdir().unwrap();
    let o = run(&["pseudo-eigenvalue", "--level", "49", "--precision-bits", "100000"], &fixture_dir(), cache.path());
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn group_validation_errors() {
    let cache = tempfile::tempdir().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        r#"{"modulus": 7, "generators": [[1, 0, 0, 3]]}"#,
        r#"{"modulus": 7, "generators": [[-1, 0, 0, -1], [1, 0, 0, 2]]}"#,
        r#"{"modulus": 7, "generators": [[7, 0, 0, 1]]}"#,
        r#"{"modulus": 7}"#,
    ];
    for (i, text) in cases.iter().enumerate() {
        let p = dir.path().join(format!("g{i}.json"));
        std::fs::write(&p, text).unwrap();
        let o = run(&["curve-model", "--group", p.to_str().unwrap()], &fixture_dir(), cache.path());
        assert_eq!(o.status.code(), Some(3), "{text}");
    }
    let p = dir.path().join("x7.json");
    std::fs::write(&p, r#"{"modulus": 7, "generators": [[6, 0, 0, 6], [1, 0, 0, 3]]}"#).unwrap();
    let o = run(&["curve-model", "--group", p.to_str().unwrap(), "--level", "8"], &fixture_dir(), cache.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn outputs_are_deterministic() {
    let (c1, c2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["sl2-table", "--level", "5", "--weight", "3"];
    let a = run(&args, &fixture_dir(), c1.path());
    let b = run(&args, &fixture_dir(), c2.path());
    let c = run(&args, &fixture_dir(), c1.path());
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert!(stderr(&c).contains("cache hit"));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v = json(&a);
    let names: Vec<&str> = v["verification"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in ["w_squared", "s_squared", "st_cubed", "t_period"] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn corrupt_cache_is_rebuilt() {
    let cache = tempfile::tempdir().unwrap();
    let args = ["al-matrix", "--level", "13", "--gamma1", "13"];
    let first = run(&args, &fixture_dir(), cache.path());
    assert_eq!(first.status.code(), Some(0));
    let entry = std::fs::read_dir(cache.path()).unwrap().next().unwrap().unwrap().path();

    // a readable entry whose W no longer verifies
    let mut e: Value = serde_json::from_str(&std::fs::read_to_string(&entry).unwrap()).unwrap();
    let mut payload: Value = serde_json::from_str(e["payload"].as_str().unwrap()).unwrap();
    payload["w"]["rows"][0][0][0] = Value::from("12345");
    let text = payload.to_string();
    e["sha256"] = Value::from(hex::encode(<sha2::Sha256 as sha2::Digest>::digest(text.as_bytes())));
    e["payload"] = Value::from(text);
    std::fs::write(&entry, e.to_string()).unwrap();
    let o = run(&args, &fixture_dir(), cache.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("cache rebuilt"), "{}", stderr(&o));
    assert_eq!(o.stdout, first.stdout);

    // a truncated entry
    let bytes = std::fs::read(&entry).unwrap();
    std::fs::write(&entry, &bytes[..bytes.len() / 2]).unwrap();
    let o = run(&args, &fixture_dir(), cache.path());
    assert!(stderr(&o).contains("cache rebuilt"));
    assert_eq!(o.stdout, first.stdout);
    let o = run(&args, &fixture_dir(), cache.path());
    assert!(stderr(&o).contains("cache hit"));
}

#[test]
fn changed_fixtures_change_the_key() {
    let cache = tempfile::tempdir().unwrap();
    let fixtures = tempfile::tempdir().unwrap();
    for name in ["nf_1_2.json", "nf_11_2.json"] {
        std::fs::copy(fixture_dir().join(name), fixtures.path().join(name)).unwrap();
    }
    let args = ["al-matrix", "--level", "11"];
    let o = run(&args, fixtures.path(), cache.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("cache stored"));
    let p = fixtures.path().join("nf_11_2.json");
    let text = std::fs::read_to_string(&p).unwrap();
    std::fs::write(&p, format!("{text}\n")).unwrap();
    let o = run(&args, fixtures.path(), cache.path());
    assert!(stderr(&o).contains("cache stored"));
    assert_eq!(std::fs::read_dir(cache.path()).unwrap().count(), 2);
}

#[test]
fn pseudo_eigenvalues_and_fixture_validation() {
    let cache = tempfile::tempdir().unwrap();
    let o = run(&["pseudo-eigenvalue", "--level", "11"], &fixture_dir(), cache.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let l = &v["pseudo_eigenvalues"][0];
    assert_eq!(l["meets_unit_circle"], true);
    // 11a has lambda = -1
    assert!((l["lambda"]["re"].as_f64().unwrap() + 1.0).abs() < 1e-30);

    let o = run(&["validate-fixtures"], &fixture_dir(), cache.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["files"].as_array().unwrap().iter().all(|f| f["ok"] == true));

    let bad = tempfile::tempdir().unwrap();
    std::fs::copy(fixture_dir().join("nf_11_2.json"), bad.path().join("nf_11_2.json")).unwrap();
    std::fs::write(bad.path().join("nf_13_2.json"), "{").unwrap();
    let o = run(&["validate-fixtures"], bad.path(), cache.path());
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["validate-fixtures", "--verify-only", "off"], bad.path(), cache.path());
    assert_eq!(o.status.code(), Some(3));
    let files = json(&o)["files"].as_array().unwrap().clone();
    assert_eq!((files[0]["ok"].clone(), files[1]["ok"].clone()), (Value::from(true), Value::from(false)));
}

#[test]
fn output_file_is_written() {
    let cache = tempfile::tempdir().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = run(&["al-matrix", "--level", "11", "--out", out.to_str().unwrap()], &fixture_dir(), cache.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["w"]["rows"][0][0][0], "-11");
}
