use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_steklov"))
}

fn write_config(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(cmd: &str, config: &Path, extra: &[&str]) -> Output {
    bin()
        .arg(cmd)
        .arg("--config")
        .arg(config)
        .args(extra)
        .output()
        .unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

#[test]
fn ball_spectrum_of_unit_disc() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "disc.cfg",
        "surface.kind = plane\ndomain.radius = 1.0\n",
    );
    let json = dir.path().join("out.json");
    let csv = dir.path().join("out.csv");
    let out = run(
        "ball-spectrum",
        &cfg,
        &[
            "--out-json",
            json.to_str().unwrap(),
            "--out-csv",
            csv.to_str().unwrap(),
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = read_json(&json);
    assert_eq!(v["artifact"], "steklov");
    assert_eq!(v["command"], "ball-spectrum");
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
    let mu = floats(&v["eigenvalues"]);
    let exact = [0.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.0, 4.0];
    assert_eq!(mu.len(), exact.len());
    for (m, e) in mu.iter().zip(exact) {
        assert!((m - e).abs() < 1e-10);
    }
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# steklov "));
    assert_eq!(lines.next().unwrap(), "l,mu");
    assert_eq!(lines.count(), 9);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "e.cfg",
        "surface.kind = plane\ndomain.cos = [1.0, 0.0, 0.2]\nspectrum.l_max = 5\n",
    );
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(
        run("spectrum", &cfg, &["--out-json", a.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(
            "spectrum",
            &cfg,
            &["--out-json", b.to_str().unwrap(), "--jobs", "1"]
        )
        .status
        .code(),
        Some(0)
    );
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let v = read_json(&a);
    assert_eq!(v["converged"], true);
}

#[test]
fn spectrum_without_convergence_exits_3_with_payload() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "c.cfg",
        "surface.kind = plane\ndomain.cos = [1.0, 0.0, 0.3]\nspectrum.l_max = 4\nsolver.k_init = 4\nsolver.k_cap = 4\n",
    );
    let json = dir.path().join("out.json");
    let out = run("spectrum", &cfg, &["--out-json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let v = read_json(&json);
    assert_eq!(v["converged"], false);
    assert_eq!(floats(&v["eigenvalues"]).len(), 4);
}

#[test]
fn verify_csv_has_fixed_columns() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "v.cfg",
        "surface.kind = sphere\ndomain.cos = [0.7, 0.02, 0.0, 0.01]\nverify.l_max = 4\n",
    );
    let csv = dir.path().join("v.csv");
    let json = dir.path().join("v.json");
    let out = run(
        "verify",
        &cfg,
        &[
            "--out-csv",
            csv.to_str().unwrap(),
            "--out-json",
            json.to_str().unwrap(),
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "formula,l,mu,bound,ratio,pass,est_error");
    assert!(lines[2..].iter().all(|l| l.split(',').count() == 7));
    let v = read_json(&json);
    assert_eq!(v["failed"], 0);
    let entries = v["cases"][0]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), lines.len() - 2);
    assert!(entries.iter().any(|e| e["formula"] == "verma_sphere"));
}

#[test]
fn verify_suite_reports_every_case() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "s.cfg",
        "surface.kind = tanh\ndomain.radius = 1.0\nsuite.count = 3\nsuite.max_eps = 0.03\nverify.l_max = 3\n",
    );
    let json = dir.path().join("s.json");
    let out = run(
        "verify",
        &cfg,
        &["--out-json", json.to_str().unwrap(), "--seed", "11"],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = read_json(&json);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 3);
    for (i, c) in cases.iter().enumerate() {
        assert_eq!(c["case"], i);
    }
}

#[test]
fn sweep_writes_extrapolated_row() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "w.cfg",
        "surface.kind = plane\ndomain.radius = 1.0\nsweep.eps = [0.1, 0.05, 0.025]\n",
    );
    let csv = dir.path().join("w.csv");
    let json = dir.path().join("w.json");
    let out = run(
        "sweep",
        &cfg,
        &[
            "--out-csv",
            csv.to_str().unwrap(),
            "--out-json",
            json.to_str().unwrap(),
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "kind,eps,ratio,mu,bound");
    assert_eq!(lines.len(), 6);
    assert!(lines[5].starts_with("extrapolated,"));
    let v = read_json(&json);
    assert_eq!(v["monotone"], true);
    let limit = v["extrapolated_ratio"].as_f64().unwrap();
    assert!(limit > 0.9 && limit < 1.0 + 1e-6);
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let empty = write_config(
        &dir,
        "e.cfg",
        "surface.kind = plane\ndomain.radius = 1.0\nsweep.eps = []\n",
    );
    assert_eq!(run("sweep", &empty, &[]).status.code(), Some(2));
    let unknown = write_config(
        &dir,
        "u.cfg",
        "surface.kind = plane\ndomain.radius = 1.0\nsolver.bogus = 3\n",
    );
    let out = run("spectrum", &unknown, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("solver.bogus"));
    let wrong_formula = write_config(
        &dir,
        "f.cfg",
        "surface.kind = plane\ndomain.radius = 1.0\nverify.formulas = [verma_sphere]\n",
    );
    assert_eq!(run("verify", &wrong_formula, &[]).status.code(), Some(2));
    assert_eq!(
        run("spectrum", &dir.path().join("missing.cfg"), &[])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bin().arg("spectrum").output().unwrap().status.code(),
        Some(2)
    );
}

#[test]
fn config_hash_tracks_content() {
    let dir = TempDir::new().unwrap();
    let a = write_config(&dir, "a.cfg", "surface.kind = plane\ndomain.radius = 1.0\n");
    let b = write_config(
        &dir,
        "b.cfg",
        "domain.radius = 1.0\n# comment\nsurface.kind = plane\n",
    );
    let c = write_config(&dir, "c.cfg", "surface.kind = plane\ndomain.radius = 0.5\n");
    let hash = |p: &Path| {
        let out = run("ball-spectrum", p, &[]);
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["config_hash"].as_str().unwrap().to_string()
    };
    assert_eq!(hash(&a), hash(&b));
    assert_ne!(hash(&a), hash(&c));
}
