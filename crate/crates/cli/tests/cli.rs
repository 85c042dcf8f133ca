use std::path::PathBuf;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use setdyn::oracle::oracle_classify;
use setdyn::random::random_system;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn setdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setdyn")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = setdyn(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn verdicts(report: &Value) -> Vec<(String, bool)> {
    report["verdicts"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, v)| (k.clone(), v["value"].as_bool().unwrap()))
        .collect()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn classify_finite_examples() {
    let report = json(&["classify", &path("lazy_loop.json")]);
    assert!(verdicts(&report).iter().all(|(_, v)| *v));
    assert!(report["verdicts"]
        .as_object()
        .unwrap()
        .values()
        .all(|v| v["mode"] == "exact"));
    assert_eq!(
        report["certificates"]["dense_orbit"]["points"],
        serde_json::json!([0, 1])
    );
    assert_eq!(report["input_digest"].as_str().unwrap().len(), 64);

    let report = json(&["classify", &path("two_cycle.json")]);
    for (name, value) in verdicts(&report) {
        assert_eq!(value, name == "transitive", "{name}");
    }
}

#[test]
fn classify_tent_is_evidence_true_at_defaults() {
    let report = json(&["classify", &path("tent.json")]);
    for v in report["verdicts"].as_object().unwrap().values() {
        assert_eq!(v["value"], true);
        assert_eq!(v["mode"], "evidence");
        assert_eq!(v["resolution"], 4);
        assert_eq!(v["horizon"], 64);
    }
}

#[test]
fn classify_identity_is_evidence_false() {
    let report = json(&[
        "classify",
        &path("identity.json"),
        "--resolution",
        "2",
        "--horizon",
        "32",
    ]);
    assert!(verdicts(&report).iter().all(|(_, v)| !v));
}

#[test]
fn orbit_examples() {
    let report = json(&["orbit", &path("lazy_loop.json"), "--from", "0", "--depth", "3"]);
    let orbits = report["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 3);
    assert!(orbits.iter().any(|o| o["points"] == serde_json::json!([0, 1, 1, 0])));

    let report = json(&["orbit", &path("two_cycle.json"), "--from", "0", "--depth", "4"]);
    assert_eq!(
        report["orbits"],
        serde_json::json!([{"points": [0, 1, 0, 1, 0], "period": 2}])
    );

    let report = json(&[
        "orbit",
        &path("tent.json"),
        "--steps",
        "3",
        "--policy",
        "lower",
        "--from",
        "2/5",
    ]);
    assert_eq!(
        report["orbits"][0]["points"],
        serde_json::json!(["2/5", "4/5", "2/5", "4/5"])
    );

    let report = json(&["orbit", &path("full.json"), "--steps", "2", "--from", "1/3"]);
    assert_eq!(report["orbits"].as_array().unwrap().len(), 4);
}

#[test]
fn orbit_cap_exits_3() {
    let out = setdyn(&["orbit", &path("lazy_loop.json"), "--depth", "5", "--cap", "7"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cover_examples() {
    let args = ["--J", "2/5,3/5", "--target", "1/10,9/10", "--horizon", "16"];
    let run = |name: &str| json(&[&["cover", &path(name)][..], &args[..]].concat());
    let tent = run("tent.json");
    assert_eq!((tent["M"].clone(), tent["persistent"].clone()), (4.into(), true.into()));
    assert_eq!(tent["trace"][3], serde_json::json!(["0", "1"]));
    assert_eq!(tent["trace"].as_array().unwrap().len(), 16);
    assert_eq!(run("identity.json")["M"], Value::Null);
    let full = run("full.json");
    assert_eq!((full["M"].clone(), full["persistent"].clone()), (1.into(), true.into()));
}

#[test]
fn input_errors_exit_2() {
    let out = setdyn(&["cover", &path("lazy_loop.json"), "--J", "0,1", "--target", "0,1"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("syntax.json", "{\"kind\": \"finite\",\n"),
        ("kind.json", "{\"kind\": \"graph\"}"),
        ("empty.json", "{\"kind\": \"finite\", \"states\": 1, \"successors\": [[]]}"),
        ("order.json", "{\"kind\": \"pwl\", \"domain\": [\"0\", \"1\"], \"lower\": {\"x\": [\"0\", \"1\"], \"y\": [\"1\", \"1\"]}, \"upper\": {\"x\": [\"0\", \"1\"], \"y\": [\"0\", \"0\"]}}"),
    ] {
        let file = dir.path().join(name);
        std::fs::write(&file, body).unwrap();
        let out = setdyn(&["classify", file.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(!out.stderr.is_empty());
    }
    let syntax = setdyn(&["classify", dir.path().join("syntax.json").to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&syntax.stderr).contains("line 2"));
    assert_eq!(setdyn(&["validate", "--states", "5"]).status.code(), Some(2));
}

#[test]
fn validate_counts() {
    for (n, count) in [(1, 1), (2, 9), (3, 343)] {
        let summary = json(&["validate", "--states", &n.to_string()]);
        assert_eq!(summary["systems_checked"], count);
        assert_eq!(summary["agreement"], true);
        assert_eq!(summary["chain_violations"], 0);
    }
}

#[test]
fn classify_matches_oracle_on_sampled_systems() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..20 {
        let sys = random_system(&mut rng, 1 + i % 9);
        let mut doc = serde_json::to_value(&sys).unwrap();
        doc["kind"] = "finite".into();
        let file = dir.path().join(format!("{i}.json"));
        std::fs::write(&file, doc.to_string()).unwrap();
        let report = json(&["classify", file.to_str().unwrap()]);
        let expected: Vec<(String, bool)> = {
            let mut v: Vec<_> = oracle_classify(&sys)
                .as_array()
                .into_iter()
                .map(|(k, b)| (k.to_string(), b))
                .collect();
            v.sort();
            v
        };
        assert_eq!(verdicts(&report), expected, "{sys:?}");
    }
}

#[test]
fn reports_are_byte_stable() {
    let tent = path("tent.json");
    for args in [
        vec!["classify", tent.as_str(), "--resolution", "3"],
        vec!["validate", "--states", "3"],
    ] {
        let one = setdyn(&[&["--workers", "1"][..], &args[..]].concat()).stdout;
        let four = setdyn(&[&["--workers", "4"][..], &args[..]].concat()).stdout;
        let again = setdyn(&args).stdout;
        assert_eq!(one, four);
        assert_eq!(one, again);
    }
}
