use std::path::Path;
use std::process::{Command, Output};

use ncgasket::GasketElement;
use ncgasket_cli::io::read_element;

fn ncgasket(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncgasket"))
        .args(args)
        .env_remove("NCGASKET_SEED")
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_alpha_writes_element() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let out = ncgasket(&["gen", "--alpha", "2", "1", "-o", path_str(&a)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        read_element(&a).unwrap(),
        GasketElement::alpha(2, 1).unwrap()
    );
}

#[test]
fn random_generation_is_seeded() {
    let a = ncgasket(&["gen", "--random", "2", "--seed", "5"]);
    let b = ncgasket(&["gen", "--random", "2", "--seed", "5"]);
    let c = ncgasket(&["gen", "--random", "2", "--seed", "6"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_ncgasket"))
        .args(["gen", "--random", "2"])
        .env("NCGASKET_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn op_extend_restrict_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name);
    assert!(ncgasket(&[
        "gen",
        "--random",
        "1",
        "--kind",
        "hermitian",
        "-o",
        path_str(&p("a.json"))
    ])
    .status
    .success());
    assert!(
        ncgasket(&["gen", "--identity", "1", "-o", path_str(&p("one.json"))])
            .status
            .success()
    );
    let out = ncgasket(&[
        "op",
        "--binary",
        "mul",
        path_str(&p("a.json")),
        path_str(&p("one.json")),
        "-o",
        path_str(&p("b.json")),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let a = read_element(&p("a.json")).unwrap();
    assert_eq!(read_element(&p("b.json")).unwrap(), a);

    assert!(ncgasket(&[
        "extend",
        "--element",
        path_str(&p("a.json")),
        "--levels",
        "2",
        "-o",
        path_str(&p("up.json"))
    ])
    .status
    .success());
    let up = read_element(&p("up.json")).unwrap();
    assert_eq!(up.level(), 3);
    assert!(ncgasket(&[
        "restrict",
        "--element",
        path_str(&p("up.json")),
        "--to",
        "1",
        "-o",
        path_str(&p("down.json"))
    ])
    .status
    .success());
    assert!(read_element(&p("down.json")).unwrap().approx_eq(&a, 1e-12));

    let energy = ncgasket(&["energy", "--element", path_str(&p("up.json"))]);
    let v: serde_json::Value = serde_json::from_slice(&energy.stdout).unwrap();
    let e1 = ncgasket::energy::element_energy(&a).energy;
    assert!((v["energy"].as_f64().unwrap() - 0.36 * e1).abs() < 1e-10 * e1);

    let bad = ncgasket(&["op", "--binary", "mul", path_str(&p("a.json"))]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn zeta_csv_profile() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let z = dir.path().join("z.csv");
    let r = dir.path().join("r.json");
    assert!(ncgasket(&["gen", "--alpha", "2", "1", "-o", path_str(&a)])
        .status
        .success());
    let out = ncgasket(&[
        "zeta",
        "--element",
        path_str(&a),
        "--mode",
        "trace",
        "--extend",
        "harmonic",
        "--s-grid",
        "1.6:2.4:0.1",
        "-o",
        path_str(&z),
        "--residue",
        path_str(&r),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let mut reader = csv::Reader::from_path(&z).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec!["s", "partial_sum", "tail_corrected", "cutoff"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    // closed form: tr(α) 2^{-2s} / (1 - 3 · 2^{-s}), tr(α^2_1) = 1
    for row in &rows {
        let s: f64 = row[0].parse().unwrap();
        let want = 2f64.powf(-2.0 * s) / (1.0 - 3.0 * 2f64.powf(-s));
        let got: f64 = row[2].parse().unwrap();
        assert!((got - want).abs() < 1e-12 * want, "s = {s}");
        assert_eq!(&row[3], "6");
    }
    let res: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&r).unwrap()).unwrap();
    let analytic = res["analytic"][0].as_f64().unwrap();
    assert!((analytic - 1.0 / 9.0 / std::f64::consts::LN_2).abs() < 1e-12);

    let below = ncgasket(&[
        "zeta",
        "--element",
        path_str(&a),
        "--extend",
        "none",
        "--levels",
        "0",
        "--s-grid",
        "1.0",
    ]);
    assert_eq!(below.status.code(), Some(2));
}

#[test]
fn lip_reports_affine_stationarity() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    assert!(ncgasket(&["gen", "--alpha", "1", "2", "-o", path_str(&a)])
        .status
        .success());
    let out = ncgasket(&["lip", "--element", path_str(&a)]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"].as_f64().unwrap(), 2.0);
    assert_eq!(v["stationary"], true);
    assert_eq!(v["defects"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_eigenform_report() {
    let out = ncgasket(&[
        "verify",
        "--suite",
        "eigenform",
        "--levels",
        "5",
        "--seed",
        "7",
        "--samples",
        "10",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "eigenform");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["status"], "pass");
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 6);
    assert!(cases
        .iter()
        .all(|c| c["measured"].as_f64().unwrap() <= 1e-10));
}

#[test]
fn verify_is_deterministic_modulo_elapsed() {
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["elapsed"] = serde_json::Value::Null;
        serde_json::to_string(&v).unwrap()
    };
    let args = [
        "verify",
        "--suite",
        "oscillation",
        "--levels",
        "2",
        "--samples",
        "5",
    ];
    assert_eq!(strip(ncgasket(&args)), strip(ncgasket(&args)));
}

#[test]
fn verify_failure_exit_code() {
    let out = ncgasket(&["verify", "--suite", "dimension"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("FAIL  8 dimension"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        ncgasket(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ncgasket(&["verify", "--suite", "oracle", "--levels", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ncgasket(&["gen", "--alpha", "1", "1", "--frobnicate"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ncgasket(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        ncgasket(&["gen", "--alpha", "1", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn schema_errors_name_the_block() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"schema":1,"level":2,"xi":[[0,0],[0,0],[0,0]],"blocks":[{"k":1,"j":2,"matrix":[[[1,0]]]}]}"#,
    )
    .unwrap();
    let out = ncgasket(&["energy", "--element", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.blocks[0].matrix"));
    std::fs::write(&bad, r#"{"schema":9,"level":0,"xi":[[0,0],[0,0],[0,0]]}"#).unwrap();
    let out = ncgasket(&["energy", "--element", path_str(&bad)]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported schema version 9"));
}

#[test]
fn export_vertices_and_edges() {
    let out = ncgasket(&["export", "--level", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "label,x,y,age");
    assert_eq!(lines.len(), 7);
    assert!(lines.iter().any(|l| l.starts_with("11,0.25,")));
    let edges = ncgasket(&["export", "--what", "edges", "--level", "2"]);
    assert_eq!(String::from_utf8(edges.stdout).unwrap().lines().count(), 28);
}
