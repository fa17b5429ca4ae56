use std::process::{Command, Output};

use finsemi::FiniteSemigroup;

fn finsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finsemi")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ptm_prints_the_iterate() {
    let o = finsemi(&["ptm", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "abbabaab\n");
}

#[test]
fn transition_monoid_stats() {
    let o = finsemi(&["transition-monoid", "--gamma", "1", "--stats"]);
    let text = stdout(&o);
    for line in ["size=15", "aperiodic=true", "inverse=true"] {
        assert!(text.lines().any(|l| l == line), "{text}");
    }
}

#[test]
fn exported_semigroup_checks_knast_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sk2.json");
    let p = path.to_str().unwrap();
    let o = finsemi(&["sk", "--k", "2", "--format", "json", "--out", p]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let s = FiniteSemigroup::from_json(&text).unwrap();
    assert_eq!(s.len(), 21);
    assert_eq!(s.to_json().trim(), text.trim());
    let o = finsemi(&["check", "--semigroup", p, "--law", "knast"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holds"));
    // Nothing but the artifact is left in the directory.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn falsified_law_exits_one_with_witness() {
    let o = finsemi(&["check", "--semigroup", "cyclic:3", "--law", "x^2 = x", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"][0]["holds"], false);
    assert!(v["results"][0]["witness"].as_str().unwrap().starts_with("x="));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(finsemi(&["ptm"]).status.code(), Some(2));
    assert_eq!(finsemi(&["check", "--semigroup", "nope.json", "--law", "knast"]).status.code(), Some(2));
    assert_eq!(finsemi(&["check", "--semigroup", "trivial", "--law", "x = "]).status.code(), Some(2));
    let o = finsemi(&["green", "--semigroup", "trivial", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--format dot"));
}

#[test]
fn flower_json_folds_like_words() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flower.json");
    let p = path.to_str().unwrap();
    assert!(finsemi(&["flower", "--words", "abc,ac,b", "--format", "json", "--out", p]).status.success());
    let g = finsemi::graphs::LabeledDigraph::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(g.to_json().trim(), std::fs::read_to_string(&path).unwrap().trim());
    let a = stdout(&finsemi(&["fold", "--graph", p]));
    let b = stdout(&finsemi(&["fold", "--words", "abc,ac,b"]));
    assert_eq!(a, b);
    assert!(finsemi(&["fold", "--lambda", "2"]).status.success());
}

#[test]
fn forest_json_and_verdict() {
    let o = finsemi(&["forest", "--semigroup", "cyclic:2", "--images", "a=g", "--word", "aaaaaa", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verification"], "ok");
    assert!(v["height"].as_u64().unwrap() <= 18);
    assert_eq!(v["forest"]["word"], "aaaaaa");
}

#[test]
fn witnesses_and_reports() {
    assert!(finsemi(&["sk", "--k", "2", "--p", "2", "--witness"]).status.success());
    assert!(finsemi(&["synthesis", "--m", "3", "--group", "2", "--witness"]).status.success());
    assert!(finsemi(&["tree-witness", "--depth", "2", "--format", "tsv"]).status.success());
    assert!(finsemi(&["kernel-gens", "--semigroup", "nil:3", "--nilpotent", "nil:3"]).status.success());
    let o = finsemi(&["separate", "--seq1", "1,2,3,4,5,...", "--seq2", "1,2,4,5,6,..."]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("image_s=a^1 b^2 a^3 b^4"));
    let o = finsemi(&["lift", "--n", "1", "--word", "a"]);
    assert!(stdout(&o).starts_with("u="));
    let o = finsemi(&["subst", "--n", "4", "--factors", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["square_free"], true);
    let o = finsemi(&["green", "--semigroup", "mn:1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d_equals_j"], true);
}
