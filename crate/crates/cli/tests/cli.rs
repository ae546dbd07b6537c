use std::path::Path;
use std::process::{Command, Output};

use coverage_repair::complex::ComplexKind;
use coverage_repair_cli::{parse_target, round_coordinate, NetworkFile};
use serde_json::Value;

fn covrepair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covrepair")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn network_file_round_trips() {
    let file = NetworkFile {
        a: 2.0,
        r: 0.3,
        kind: ComplexKind::Cech,
        existing: vec![[0.1, 0.2], [1.0 / 3.0, 2.0f64.sqrt() / 2.0], [2.0, 0.0]],
        boundary: Some(vec![[0.0, 0.0], [2.0, 2.0]]),
    };
    let back = NetworkFile::from_json(&file.to_json()).unwrap();
    assert_eq!(back, file);
    let plain = NetworkFile::default();
    assert_eq!(NetworkFile::from_json(&plain.to_json()).unwrap(), plain);
    assert_eq!(NetworkFile::from_json("{}").unwrap(), plain);
}

#[test]
fn network_file_errors_name_the_field() {
    let cases = [
        (r#"{"a": "x"}"#, "`a`"),
        (r#"{"r": -1}"#, "`r`"),
        (r#"{"kind": "alpha"}"#, "`kind`"),
        (r#"{"existing": [[0.5, 0.5], [0.1]]}"#, "existing[1]"),
        (r#"{"existing": [[0.5, 1.5]]}"#, "existing[0]"),
        (r#"{"boundary": [[-0.1, 0.0]]}"#, "boundary[0]"),
        (r#"{"radius": 0.2}"#, "radius"),
    ];
    for (text, field) in cases {
        let err = NetworkFile::from_json(text).unwrap_err().to_string();
        assert!(err.contains(field), "{text}: {err}");
    }
}

#[test]
fn targets_and_coordinates() {
    assert_eq!(parse_target("0.2").unwrap(), 0.2);
    assert_eq!(parse_target("40").unwrap(), 0.4);
    assert_eq!(parse_target("60%").unwrap(), 0.6);
    assert!(parse_target("0").is_err());
    assert!(parse_target("abc").is_err());
    assert_eq!(round_coordinate(0.1234567890123456), 0.123456789012);
    assert_eq!(round_coordinate(0.5), 0.5);
    assert_eq!(round_coordinate(0.0), 0.0);
}

#[test]
fn recover_defaults_on_an_empty_network() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "empty.json", r#"{"existing": []}"#);
    let out = stdout_json(&covrepair(&["recover", &input]));
    assert_eq!(out["betti"], serde_json::json!([1, 0]));
    assert!(out["kept"].as_array().unwrap().iter().all(|p| p.as_array().unwrap().len() == 2));
    assert!(out.get("trace").is_none());
    let traced = stdout_json(&covrepair(&["recover", &input, "--trace", "--strategy", "grid"]));
    assert_eq!(traced["trace"]["added"], 9);
}

#[test]
fn recover_greedy_only_reports_kept() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "one.json", r#"{"existing": [[0.5, 0.5]]}"#);
    let out = stdout_json(&covrepair(&["recover", &input, "--strategy", "greedy"]));
    let obj = out.as_object().unwrap();
    assert_eq!(obj.keys().collect::<Vec<_>>(), ["kept"]);
    assert_eq!(obj["kept"].as_array().unwrap().len(), 8);
}

#[test]
fn recover_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"existing": [[0.5, "y"]]}"#);
    let out = covrepair(&["recover", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("existing[0][1]"));
    let out = covrepair(&["recover", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = covrepair(&["recover", &bad, "--strategy", "hexagonal"]);
    assert_eq!(out.status.code(), Some(2));
    // a single round cannot fix an empty network with a one-vertex budget
    let empty = write(dir.path(), "empty.json", r#"{"r": 0.1}"#);
    let out = covrepair(&["recover", &empty, "--strategy", "uniform", "--max-iterations", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn recover_writes_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "net.json", r#"{"existing": [[0.2, 0.3], [0.7, 0.8]]}"#);
    let dest = dir.path().join("out.json");
    let out = covrepair(&["recover", &input, "--out", dest.to_str().unwrap(), "--seed", "3"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dest).unwrap()).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 0]));
}

#[test]
fn bench_grid_rows_are_exactly_nine() {
    let out = covrepair(&["bench", "--strategies", "grid", "--reps", "10"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("scenario,strategy,reps,mean_added,mean_final,stderr"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[1], "grid");
        assert_eq!(fields[3], "9.000", "{row}");
    }
}

#[test]
fn bench_rejects_bad_flags() {
    assert_eq!(covrepair(&["bench", "--reps", "0"]).status.code(), Some(2));
    assert_eq!(covrepair(&["bench", "--scenarios", "120"]).status.code(), Some(2));
    assert_eq!(covrepair(&["bench", "--strategies", "astar"]).status.code(), Some(2));
}

#[test]
fn bench_side_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let runs = dir.path().join("runs.json");
    let plots = dir.path().join("plots");
    let out = covrepair(&[
        "bench", "--strategies", "grid,greedy", "--reps", "3", "--scenarios", "20,80",
        "--runs", runs.to_str().unwrap(), "--plot-dir", plots.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(runs).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 12);
    let greedy = std::fs::read_to_string(plots.join("greedy.dat")).unwrap();
    assert_eq!(greedy.lines().count(), 3);
    assert!(plots.join("grid.dat").exists());
}

#[test]
fn sample_examples() {
    assert_eq!(String::from_utf8(covrepair(&["sample", "-n", "0"]).stdout).unwrap().trim(), "[]");
    let a = covrepair(&["sample", "-n", "5", "--seed", "1"]);
    let b = covrepair(&["sample", "-n", "5", "--seed", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a).as_array().unwrap().len(), 5);

    let dir = tempfile::tempdir().unwrap();
    let corners = write(dir.path(), "corners.json", r#"{"existing": [[0,0],[1,0],[0,1],[1,1]]}"#);
    let v = stdout_json(&covrepair(&["sample", "-n", "5", "--condition", &corners]));
    let pts = v.as_array().unwrap();
    assert_eq!(pts.len(), 5);
    for p in pts {
        for c in p.as_array().unwrap() {
            assert!((0.0..=1.0).contains(&c.as_f64().unwrap()));
        }
    }
}

#[test]
fn inspect_examples() {
    let dir = tempfile::tempdir().unwrap();
    let one = write(dir.path(), "one.json", r#"{"existing": [[0.5, 0.5]]}"#);
    let v = stdout_json(&covrepair(&["inspect", &one, "--no-boundary"]));
    assert_eq!((v["beta0"].as_u64(), v["beta1"].as_u64()), (Some(1), Some(0)));
    assert!((v["coverage"].as_f64().unwrap() - 0.19635).abs() < 0.005);

    let hollow = write(
        dir.path(),
        "hollow.json",
        r#"{"existing": [[0.2, 0.2], [0.65, 0.2], [0.65, 0.65], [0.2, 0.65]]}"#,
    );
    let v = stdout_json(&covrepair(&["inspect", &hollow, "--no-boundary"]));
    assert_eq!((v["beta0"].as_u64(), v["beta1"].as_u64()), (Some(1), Some(1)));
    assert_eq!((v["edges"].as_u64(), v["triangles"].as_u64()), (Some(4), Some(0)));

    let empty = write(dir.path(), "empty.json", r#"{"existing": []}"#);
    let out = covrepair(&["inspect", &empty, "--no-boundary"]);
    let v = stdout_json(&out);
    assert_eq!(v["beta0"].as_u64(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no existing vertices"));

    let v = stdout_json(&covrepair(&["inspect", &empty]));
    assert_eq!(v["boundary_vertices"].as_u64(), Some(16));
    assert_eq!((v["beta0"].as_u64(), v["beta1"].as_u64()), (Some(1), Some(1)));

    let bad = write(dir.path(), "bad.json", "[1, 2");
    assert_eq!(covrepair(&["inspect", &bad]).status.code(), Some(2));
}
