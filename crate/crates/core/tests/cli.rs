use std::process::{Command, Output};

fn quon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quon")).args(args).env("QUON_WORKERS", "2").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn braket_prints_canonical_text() {
    let o = quon(&["braket", "--left", "1,1", "--right", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 + q[1][1]\n");
    assert_eq!(stdout(&quon(&["braket", "--left", "1", "--right", "2"])), "0\n");
    // entry (1,2) of the [3] block: creators 1,2,3 against annihilators 1,3,2
    assert_eq!(stdout(&quon(&["braket", "--left", "1,3,2", "--right", "1,2,3"])), "q[3][2]\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(quon(&["braket", "--left", "1,a", "--right", "1"]).status.code(), Some(2));
    assert_eq!(quon(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(quon(&["posdef", "--multiset", "1,2", "--samples", "3"]).status.code(), Some(2));
}

#[test]
fn resource_limits_exit_3() {
    assert_eq!(quon(&["gram", "--multiset", "1,2,3,4,5,6,7"]).status.code(), Some(3));
    assert_eq!(quon(&["verify", "--max-n", "5"]).status.code(), Some(3));
    assert_eq!(quon(&["zagier", "--n", "5"]).status.code(), Some(3));
}

#[test]
fn gram_and_det_reports() {
    let g = stdout(&quon(&["gram", "--multiset", "1,2,3"]));
    assert!(g.contains("basis: 1,2,3 1,3,2 2,1,3 2,3,1 3,1,2 3,2,1"));
    assert_eq!(g.lines().filter(|l| l.starts_with('[')).count(), 6);

    let d = stdout(&quon(&["det", "--set", "1,2", "--mode", "symbolic"]));
    assert!(d.contains("determinant: 1 - q[1][2]*q[2][1]"));
    assert!(d.ends_with("verdict: MATCH\n"));

    let d = stdout(&quon(&["det", "--set", "1,2,3,4", "--mode", "evaluated", "--samples", "10", "--seed", "3"]));
    assert!(d.contains("seed: 3") && d.contains("samples: 10") && d.ends_with("verdict: MATCH\n"), "{d}");
}

#[test]
fn zagier_and_delta_reports() {
    let z = stdout(&quon(&["zagier", "--n", "2"]));
    assert!(z.contains("bound expanded: 1 - q^2") && z.ends_with("verdict: ALL-DIVIDE\n"), "{z}");
    let d = stdout(&quon(&["delta", "--n", "4"]));
    assert!(d.contains("literal: (1 - q^12) * (1 - q^6)^2 * (1 - q^4) * (1 - q^2)^3"), "{d}");
    assert!(d.contains("closed form: (1 - q^12) * (1 - q^6)^2 * (1 - q^2)^3"));
    assert!(d.contains("DISCREPANCY"));
}

#[test]
fn posdef_prints_minor_tables() {
    let o = quon(&["posdef", "--multiset", "1,2,3", "--samples", "25", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!(t.contains("seed: 7") && t.contains("samples: 25"));
    assert_eq!(t.matches("minor   6:").count(), 25);
    assert!(t.ends_with("verdict: POSITIVE-DEFINITE\n"));
}

#[test]
fn structured_output_and_out_file() {
    let dir = std::env::temp_dir().join(format!("quon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("det.json");
    let o = quon(&["--format", "structured", "--out", path.to_str().unwrap(), "det", "--set", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "det");
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["results"][0]["determinant"], "1 - q[1][2]*q[2][1]");
    assert_eq!(v["config"]["set"], serde_json::json!([1, 2]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_deterministic_section_ignores_seed() {
    let a = stdout(&quon(&["verify", "--max-n", "2", "--seed", "1"]));
    let b = stdout(&quon(&["verify", "--max-n", "2", "--seed", "2"]));
    let det = |s: &str| s.split("randomized section").next().unwrap().to_string();
    assert_eq!(det(&a), det(&b));
    assert!(a.contains("randomized section (seed 1, samples 20)"));
    assert!(b.contains("randomized section (seed 2, samples 20)"));
    assert!(!a.contains("FAIL"));
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let run = |w: &str| {
        Command::new(env!("CARGO_BIN_EXE_quon"))
            .args(["verify", "--max-n", "3", "--seed", "9"])
            .env("QUON_WORKERS", w)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("3"));
}
