use std::process::{Command, Output};

use rp3_vertex::Series;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rp3-vertex")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_text() {
    let o = run(&["compute", "--alpha", "[1]", "--gamma", "[]", "--cutoff", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(0,0): sqrt(q)/(1-q)\n(1,0): sqrt(q)/(1-q)\n");
}

#[test]
fn compute_closed_constant() {
    let o = run(&["compute", "--alpha", "[]", "--cutoff", "0", "--unnormalized"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn compute_json_round_trips_and_is_deterministic() {
    let args = ["compute", "--geometry", "local-p1xp1", "--alpha", "[1]", "--gamma", "[]", "--refined", "--cutoff", "3", "--output", "json"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let z: Series = serde_json::from_str(&a).unwrap();
    assert_eq!(z.cutoff(), 3);
    assert!(z.is_normalized());
    assert_eq!(serde_json::to_string_pretty(&z).unwrap() + "\n", a);
}

#[test]
fn expand_lambda3() {
    let o = run(&["expand", "--alpha", "[1,1,1]", "--coeff", "2,1", "--q-order", "15"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("(2,1): 3+7*q+14*q^2+"), "{s}");
    assert!(s.contains("+280*q^15"), "{s}");
}

#[test]
fn check_suite_exit_status() {
    let o = run(&["check", "--suite", "comparison"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["check", "--suite", "fixtures", "--filter", "fixture/regular_*", "--output", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["outcomes"].as_array().unwrap().len(), 8);
}

#[test]
fn check_fails_on_a_wrong_fixture() {
    let dir = std::env::temp_dir().join(format!("rp3-vertex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("wrong.json"),
        r#"{"id":"wrong","source":"perturbed","spec":{"geometry":"local_p1xp1","alpha":"[1]","gamma":"[]","refined":false,"cutoff":1},
            "kind":"rational","complete_through":1,"coefficients":[{"r":0,"s":0,"expr":"sqrt(q)/(1-q)"},{"r":1,"s":0,"expr":"1+sqrt(q)/(1-q)"}]}"#,
    )
    .unwrap();
    let o = run(&["check", "--suite", "fixtures", "--fixtures-dir", dir.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"));
}

#[test]
fn usage_errors() {
    for args in [
        &["compute", "--alpha", "[1,2]"][..],
        &["compute", "--cutoff", "-1"],
        &["compute", "--geometry", "torus"],
        &["compute", "--cutoff", "5"],
        &["expand", "--q-order", "21"],
        &["check", "--suite", "nope"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn compare_tables() {
    let o = run(&["compare", "--alpha", "[1]", "--gamma", "[1]", "--cutoff", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 7);
    assert!(s.lines().skip(1).all(|l| l.contains(" = ")), "{s}");
    let o = run(&["compare", "--alpha", "[1]", "--gamma", "[1,1]", "--against", "conifold", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["equal"], true);
    assert_eq!(v[1]["equal"], false);
}
