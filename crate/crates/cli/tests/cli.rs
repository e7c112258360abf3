use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use covercert::InequalityReport;
use tempfile::TempDir;

const B1_3: &str = r#"{"vertices": [["1","0","0"],["-1","0","0"],["0","1","0"],["0","-1","0"],["0","0","1"],["0","0","-1"]]}"#;
const CUBE2: &str = r#"{"vertices": [["-1","-1"],["1","-1"],["-1","1"],["1","1"]]}"#;
const CUBE3: &str = r#"{"vertices": [["-1","-1","-1"],["1","-1","-1"],["-1","1","-1"],["1","1","-1"],["-1","-1","1"],["1","-1","1"],["-1","1","1"],["1","1","1"]]}"#;
const SIMPLEX: &str = r#"{"vertices": [["0","0","0"],["1","0","0"],["0","1","0"],["0","0","1"]]}"#;
const OFF: &str = r#"{"vertices": [["1","1"],["3","1"],["1","3"],["3","3"]]}"#;
const SKEW: &str = r#"{"halfspaces": [{"a": ["1","0"], "b": "2"}, {"a": ["-1","0"], "b": "1/2"}, {"a": ["0","1"], "b": "1"}, {"a": ["0","-1"], "b": "1"}, {"a": ["1","1"], "b": "2"}]}"#;
const TRIPLE: &str = r#"{"vectors": [[0,1],[-0.8660254037844386,-0.5],[0.8660254037844386,-0.5]], "weights": [0.6666666666666666,0.6666666666666666,0.6666666666666666]}"#;
const BENT: &str = r#"{"vectors": [[0,1],[1,0],[0.6,0.8]], "weights": [1,1,1]}"#;
const L1_2: &str = r#"{"variant": "exp_l1", "dim": 2}"#;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        let f = Files {
            dir: tempfile::tempdir().unwrap(),
        };
        for (name, text) in [
            ("b1_3.json", B1_3),
            ("cube2.json", CUBE2),
            ("cube3.json", CUBE3),
            ("simplex.json", SIMPLEX),
            ("offcenter.json", OFF),
            ("skew.json", SKEW),
            ("triple.json", TRIPLE),
            ("bent.json", BENT),
            ("l1_2.json", L1_2),
        ] {
            std::fs::write(f.dir.path().join(name), text).unwrap();
        }
        f
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covercert"))
        .args(args)
        .current_dir(dir)
        .env_remove("COVERCERT_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn volumes() {
    let f = Files::new();
    for (file, expected) in [("b1_3.json", "4/3"), ("cube3.json", "8"), ("simplex.json", "1/6")] {
        let o = run(&["volume", file], f.dir.path());
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(json(&o)["volume"], expected);
        let t = run(&["volume", file, "--format", "table"], f.dir.path());
        assert!(stdout(&t).contains(expected));
    }
    let o = run(&["volume", "missing.json"], f.dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dual_bt_equality_case() {
    let f = Files::new();
    let o = run(&["check", "dual-bt", "--body", "b1_3.json", "--cover", "1,2;1,3;2,3"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    let r = InequalityReport::from_json_str(&stdout(&o)).unwrap();
    assert!(r.pass && r.is_equality());
    assert_eq!(json(&o)["slack"], "1");
}

#[test]
fn meyer_on_square() {
    let f = Files::new();
    let o = run(&["check", "meyer", "--body", "cube2.json"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["slack"], "2");
    assert_eq!(json(&o)["lhs"], "4");
}

#[test]
fn geometry_errors_exit_two() {
    let f = Files::new();
    let o = run(&["check", "dual-bt", "--body", "offcenter.json", "--cover", "1;2"], f.dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("0 is not an interior point"));
    let o = run(&["check", "bt", "--body", "cube2.json", "--cover", "1;1"], f.dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["check", "bt", "--body", "cube2.json"], f.dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["check", "lw", "--body", "cube2.json", "--all-covers", "2", "1"], f.dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["certify", "--body", "offcenter.json"], f.dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["volume", "cube2.json", "--tol", "-1", "--format", "xml"], f.dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    let f = Files::new();
    let o = run(&["isotropic", "john", "--system", "bent.json"], f.dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["isotropic"], false);
    let o = run(&["check", "ball", "--body", "cube2.json", "--system", "bent.json"], f.dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certificates() {
    let f = Files::new();
    let o = run(&["certify", "--body", "b1_3.json"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for l in v["certificate"]["lambdas"].as_array().unwrap() {
        assert!((l.as_f64().unwrap() - 1.0).abs() < 1e-9);
    }
    assert_eq!(v["verification"]["pass"], true);
    let o = run(&["certify", "--body", "cube2.json"], f.dir.path());
    for l in json(&o)["certificate"]["lambdas"].as_array().unwrap() {
        assert!((l.as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-9);
    }
    let o = run(&["certify", "--body", "skew.json"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cover_listings() {
    let f = Files::new();
    let o = run(&["covers", "2", "1"], f.dir.path());
    assert_eq!(json(&o)["count"], 2);
    let o = run(&["covers", "3", "2", "--max-parts", "3"], f.dir.path());
    let covers: Vec<String> = serde_json::from_value(json(&o)["covers"].clone()).unwrap();
    assert!(covers.contains(&"1,2;1,3;2,3".to_string()));
    let o = run(&["covers", "1", "1"], f.dir.path());
    assert_eq!(json(&o)["covers"], serde_json::json!(["1"]));
    let o = run(&["covers", "3", "2", "--irreducible"], f.dir.path());
    let irr: Vec<String> = serde_json::from_value(json(&o)["covers"].clone()).unwrap();
    assert_eq!(irr, vec!["1,2;1,3;2,3".to_string()]);
    let o = Command::new(env!("CARGO_BIN_EXE_covercert"))
        .args(["covers", "4", "3"])
        .env("COVERCERT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn all_covers_sweep_in_csv() {
    let f = Files::new();
    let o = run(
        &["check", "dual-bt", "--body", "b1_3.json", "--all-covers", "3", "2", "--max-parts", "4", "--format", "csv"],
        f.dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let mut count = 0;
    for r in rows.records() {
        let r = r.unwrap();
        assert_eq!(&r[4], "1");
        count += 1;
    }
    let listed = run(&["covers", "3", "2", "--max-parts", "4"], f.dir.path());
    assert_eq!(json(&listed)["count"], count);
}

#[test]
fn ball_and_functional_checks() {
    let f = Files::new();
    for kind in ["ball", "dual-ball"] {
        let o = run(&["check", kind, "--body", "cube2.json", "--system", "triple.json"], f.dir.path());
        assert_eq!(o.status.code(), Some(0), "{kind}");
        assert!(InequalityReport::from_json_str(&stdout(&o)).is_ok());
    }
    let o = run(&["check", "functional", "--function", "l1_2.json", "--cover", "1;2"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    let slack = json(&o)["slack"].as_f64().unwrap();
    assert!((slack - 1.0).abs() < 1e-9);
    let o = run(&["check", "weighted", "--dual", "--body", "b1_3.json", "--cover", "1,2;1,3;2,3"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["functional", "integrate", "--function", "l1_2.json"], f.dir.path());
    assert!((json(&o)["value"].as_f64().unwrap() - 4.0).abs() < 0.04);
    let o = run(&["functional", "pointwise", "--function", "l1_2.json", "--cover", "1;2;1,2", "--samples", "500"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["functional", "gaussian-bl", "--cover", "1,2;1,3;2,3"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    let eps = std::f64::consts::FRAC_PI_8.to_string();
    let o = run(&["isotropic", "discretize", "--n", "2", "--eps", &eps, "--renormalize"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["atoms"], 16);
}

#[test]
fn reports_round_trip_and_runs_are_deterministic() {
    let f = Files::new();
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", "bt", "--body", "simplex.json", "--cover", "1,2;3"],
        vec!["check", "lw", "--body", "skew.json"],
        vec!["check", "dual-ball", "--body", "b1_3.json", "--system", "triple.json"],
        vec!["check", "weighted", "--body", "skew.json", "--cover", "1;2;1,2"],
        vec!["functional", "pointwise", "--function", "l1_2.json", "--cover", "1;2", "--samples", "300", "--seed", "9"],
    ];
    for args in &cases {
        let a = run(args, f.dir.path());
        let b = run(args, f.dir.path());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        if args[0] == "check" && a.status.code() != Some(2) {
            let r = InequalityReport::from_json_str(&stdout(&a)).unwrap();
            let again = serde_json::to_value(&r).unwrap();
            assert_eq!(again, json(&a));
        }
    }
    let path = f.path("skew.json");
    let t = run(&["check", "lw", "--body", path.to_str().unwrap(), "--format", "table"], f.dir.path());
    assert!(stdout(&t).starts_with("name"));
}
