//! End-to-end runs of the `qudit-msd` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qudit_msd::dense::CMatrix;
use qudit_msd::io::{dense_to_json, wigner_to_json};
use qudit_msd::{Prime, Wigner};
use serde_json::Value;
use tempfile::TempDir;

fn p3() -> Prime {
    Prime::new(3).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qudit-msd"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const Z_I: &str = r#"{"d": 3, "N": 2, "rows": [[1, 0, 0, 0]], "syndrome": [0]}"#;
const Z_Z: &str = r#"{"d": 3, "N": 2, "rows": [[1, 1, 0, 0]], "syndrome": [0]}"#;
const THREE: &str =
    r#"{"d": 3, "N": 3, "rows": [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1]], "syndrome": [0, 0]}"#;

fn h_state() -> Wigner {
    Wigner::nu_family(p3(), -1.0 / 3.0, (0, 0))
}

#[test]
fn canonicalize_reports_triviality() {
    let dir = TempDir::new().unwrap();
    let out = run(&["canonicalize", s(&write(&dir, "zi.json", Z_I))]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("trivial: true"));
    let out = run(&["canonicalize", "--json", s(&write(&dir, "zz.json", Z_Z))]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["trivial"], Value::Bool(false));
}

#[test]
fn bad_inputs_exit_with_2() {
    let dir = TempDir::new().unwrap();
    let out = run(&["canonicalize", s(&write(&dir, "bad.json", "{\"d\": 3,"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));
    let noncommuting = r#"{"d": 3, "N": 3, "rows": [[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]]}"#;
    let out = run(&["canonicalize", s(&write(&dir, "nc.json", noncommuting))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("do not commute"));
    let out = run(&[
        "witness",
        s(&write(&dir, "w.json", "{\"d\": 3, \"values\": [1]}")),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trivial_code_returns_the_input_state() {
    let dir = TempDir::new().unwrap();
    let code = write(&dir, "zi.json", Z_I);
    // Z x I keeps the x = 0 column of qudit 0, which must carry nonzero weight
    let h = Wigner::nu_family(p3(), -1.0 / 3.0, (1, 1));
    let state = write(&dir, "h.json", &wigner_to_json(&h));
    let out = run(&["distill", s(&code), s(&state), "--engine", "exact"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let w: Vec<f64> = v["w_out"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    for (a, b) in w.iter().zip(h.values()) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn monte_carlo_contracts() {
    let dir = TempDir::new().unwrap();
    let code = write(&dir, "three.json", THREE);
    let negative = write(&dir, "h.json", &wigner_to_json(&h_state()));
    let out = run(&[
        "distill",
        s(&code),
        s(&negative),
        "--engine",
        "mc",
        "--samples",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(4));

    let positive = Wigner::nu_family(p3(), 0.05, (1, 2));
    let state = write(&dir, "pos.json", &wigner_to_json(&positive));
    let exact: Value =
        serde_json::from_slice(&run(&["distill", s(&code), s(&state)]).stdout).unwrap();
    let mc_args = [
        "distill",
        s(&code),
        s(&state),
        "--engine",
        "mc",
        "--samples",
        "400000",
        "--seed",
        "5",
    ];
    let mc_out = run(&mc_args);
    let mc: Value = serde_json::from_slice(&mc_out.stdout).unwrap();
    assert_eq!(stdout(&run(&mc_args)), stdout(&mc_out));
    let accepted = mc["accepted"].as_f64().unwrap();
    for k in 0..9 {
        let p = exact["w_out"]["values"][k].as_f64().unwrap();
        let got = mc["w_out"]["values"][k].as_f64().unwrap();
        assert!((got - p).abs() <= 4.0 * (p * (1.0 - p) / accepted).sqrt());
    }
}

#[test]
fn zero_acceptance_exits_with_3() {
    let dir = TempDir::new().unwrap();
    let code = write(
        &dir,
        "xi.json",
        r#"{"d": 3, "N": 2, "rows": [[0, 0, 1, 0]]}"#,
    );
    let mut values = vec![0.0; 9];
    values[3] = 1.0;
    let state = write(
        &dir,
        "pt.json",
        &wigner_to_json(&Wigner::new(p3(), 1, values).unwrap()),
    );
    assert_eq!(
        run(&["distill", s(&code), s(&state)]).status.code(),
        Some(3)
    );
}

fn sweep_rows(text: &str) -> Vec<[f64; 3]> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("nu_in,nu_out,acceptance_probability"));
    lines
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [f[0], f[1], f[2]]
        })
        .collect()
}

#[test]
fn sweeps() {
    let dir = TempDir::new().unwrap();
    let trivial = write(&dir, "zi.json", Z_I);
    let out = run(&["sweep", s(&trivial), "--face", "1,1", "--steps", "11"]);
    for [a, b, _] in sweep_rows(&stdout(&out)) {
        assert!((a - b).abs() < 1e-12);
    }
    let code = write(&dir, "zz.json", Z_Z);
    let args = [
        "sweep",
        s(&code),
        "--nu-min",
        "-0.1111111111111111",
        "--nu-max",
        "0.3333333333333333",
        "--steps",
        "5",
    ];
    let rows = sweep_rows(&stdout(&run(&args)));
    assert_eq!(rows.len(), 5);
    assert!(rows[1][0].abs() < 1e-15 && rows[1][1] > 0.0);
    assert!((rows[2][0] - 1.0 / 9.0).abs() < 1e-15 && (rows[2][1] - 1.0 / 9.0).abs() < 1e-12);
    assert_eq!(
        run(&["sweep", s(&code), "--steps", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn witness_reports() {
    let dir = TempDir::new().unwrap();
    let mixed = CMatrix::<f64>::identity(3).scale_real(1.0 / 3.0);
    let mixed_file = write(&dir, "mixed.json", &dense_to_json(p3(), &mixed));
    let v: Value = serde_json::from_slice(&run(&["witness", s(&mixed_file)]).stdout).unwrap();
    assert_eq!(v["contextual"], Value::Bool(false));
    assert_eq!(v["bound"].as_f64(), Some(27.0));

    let h = write(&dir, "h.json", &wigner_to_json(&h_state()));
    let v: Value =
        serde_json::from_slice(&run(&["witness", s(&h), "--face", "0,0"]).stdout).unwrap();
    assert_eq!(v["contextual"], Value::Bool(true));
    assert_eq!(v["face"], serde_json::json!([0, 0]));
    let value = v["value"].as_f64().unwrap();
    assert!(value > 27.0 && (value - v["closed_form"].as_f64().unwrap()).abs() < 1e-9);

    let boundary = write(
        &dir,
        "b.json",
        &wigner_to_json(&Wigner::nu_family(p3(), 0.0, (2, 1))),
    );
    let v: Value =
        serde_json::from_slice(&run(&["witness", s(&boundary), "--face", "2,1"]).stdout).unwrap();
    assert_eq!(v["contextual"], Value::Bool(false));
}

#[test]
fn theorem2_table() {
    let out = run(&["theorem2", "--codes", "0"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).lines().filter(|l| !l.starts_with('#')).count(),
        1
    );
    let args = [
        "theorem2", "--d", "3", "--n-max", "4", "--codes", "24", "--seed", "7",
    ];
    let first = run(&args);
    assert!(first.status.success());
    assert!(stdout(&first).contains("dichotomy failures: 0"));
    assert_eq!(stdout(&first).lines().count(), 26);
    assert_eq!(stdout(&run(&args)), stdout(&first));
}

#[test]
fn graph_counts_and_independence_number() {
    let dir = TempDir::new().unwrap();
    let dimacs = dir.path().join("g.col");
    let out = run(&[
        "graph",
        "--d",
        "3",
        "--face",
        "0,0",
        "--out",
        s(&dimacs),
        "--solve-mis",
        "--budget",
        "60",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("vertices: 240, edges: 7116"));
    assert!(text.contains("independence_number: 27\n"));
    let file = fs::read_to_string(&dimacs).unwrap();
    assert!(file.contains("p edge 240 7116"));
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("g.col.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "graph");
    assert!(manifest["outputs"][s(&dimacs)]["sha256"].is_string());
    assert_eq!(run(&["graph", "--d", "7"]).status.code(), Some(2));
}

#[test]
fn graph_at_d5() {
    let out = run(&["graph", "--d", "5", "--face", "1,3"]);
    assert!(stdout(&out).starts_with("vertices: 3120, "));
}

#[test]
fn manifest_digest_matches_output_and_threads_come_from_env() {
    let dir = TempDir::new().unwrap();
    let code = write(&dir, "zz.json", Z_Z);
    let csv = dir.path().join("sweep.csv");
    let out = bin()
        .args(["sweep", s(&code), "--steps", "3", "--out", s(&csv)])
        .env("QUDIT_MSD_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let manifest: Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("sweep.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["threads"], 2);
    let digest = manifest["outputs"][s(&csv)]["sha256"]
        .as_str()
        .unwrap()
        .to_string();
    let again = dir.path().join("again.csv");
    run(&[
        "--threads",
        "1",
        "sweep",
        s(&code),
        "--steps",
        "3",
        "--out",
        s(&again),
    ]);
    assert_eq!(fs::read(&csv).unwrap(), fs::read(&again).unwrap());
    assert_eq!(digest.len(), 64);
}
