use std::process::{Command, Output};

use serde_json::Value;
use twistalex::riley::{riley_residual_at, trace_z};
use twistalex::C64;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistalex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn pair(v: &Value) -> C64 {
    C64::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn invariants_single_twist() {
    let o = run(&["invariants", "--m", "1", "--n", "1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    let r = &roots[0];
    assert!(pair(&r["y"]).norm() < 1e-12);
    assert!((pair(&r["tap"]["cm1"]) - 1.0).norm() < 1e-12);
    assert!(pair(&r["tap"]["c0"]).norm() < 1e-12);
    assert!((pair(&r["tap"]["c1"]) - 1.0).norm() < 1e-12);
    assert!((pair(&r["torsion_knot"]) - 2.0).norm() < 1e-12);
    assert!((pair(&r["longitude_trace"]) + 2.0).norm() < 1e-12);
    assert!(r["surgery"].is_null());
}

#[test]
fn invariants_with_surgery() {
    let o = run(&["invariants", "--m", "1", "--n", "1", "--x", "1", "--p", "3", "--q", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s = &v["roots"][0]["surgery"];
    assert_eq!(s["p"], 3);
    assert_eq!(s["q"], 1);
    assert!((pair(&s["torsion"]) - 0.5).norm() < 1e-12);
    assert!(s["extension_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn zero_parameter_is_a_usage_error() {
    let o = run(&["invariants", "--m", "0", "--n", "1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("m and n must be nonzero"));
    let o = run(&["invariants", "--m", "1", "--n", "1", "--x", "one"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parabolic_meridian_reports_no_torsion() {
    let o = run(&["invariants", "--m", "1", "--n", "-1", "--x", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    assert!(roots.iter().all(|r| r["torsion_knot"].is_null()));
}

#[test]
fn json_round_trip_reproduces_residuals() {
    for (m, n, x) in [(2, -1, "0.5"), (-3, 2, "1+0.7i"), (3, 3, "2.4")] {
        let o = run(&["invariants", "--m", &m.to_string(), "--n", &n.to_string(), "--x", x]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let xv = pair(&v["x"]);
        for r in v["roots"].as_array().unwrap() {
            let y = pair(&r["y"]);
            let reported = r["residual"].as_f64().unwrap();
            assert!((riley_residual_at(m, n, xv, y) - reported).abs() < 1e-9);
            assert!((trace_z(m, xv, y) - pair(&r["z"])).norm() < 1e-9);
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["invariants", "--m", "3", "--n", "-2", "--x", "-0.3+1.1i", "--p", "5", "--q", "2"],
        vec!["invariants", "--m", "2", "--n", "2", "--x", "0.5", "--format", "csv"],
        vec!["table", "--m", "2", "--n", "-3", "--grid", "0.5:1.5+0.5i:7"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn table_row_counts() {
    let o = run(&["table", "--m", "1", "--n", "1", "--grid", "0.5:1.5:11"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.records().count(), 11);

    let o = run(&["table", "--m", "1", "--n", "-1", "--grid", "2.5:2.5:1"]);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.records().count(), 2);

    for bad in ["0.5:1.5:0", "0.5:1.5", "a:b:3"] {
        let o = run(&["table", "--m", "1", "--n", "1", "--grid", bad]);
        assert_eq!(o.status.code(), Some(1), "{bad}");
    }
}

#[test]
fn verify_small_grid() {
    let o = run(&["verify", "--m", "1", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("all ") && last.ends_with(" checks passed"), "{last}");
    let count: usize = last.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(count >= 12);
}

#[test]
fn verify_perturbed_fails_loudly() {
    let o = run(&["verify", "--m", "1", "--n", "1", "--perturb", "1e-3"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("FAILED") && l.contains("m=1 n=1")));
}
