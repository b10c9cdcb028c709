//! End-to-end checks of the CLI surface: file formats, JSON outputs, the
//! PPM emitter, and byte-identical sweeps across thread counts.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_inradius-lab")
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("inradius_lab_cli_{name}"));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_laplacian_symbol(dir: &Path) -> PathBuf {
    let path = dir.join("laplacian2.sym");
    std::fs::write(&path, "dim=2 order=2\nalpha = 2 0 ; 1 0\nalpha = 0 2 ; 1 0\n").unwrap();
    path
}

const SIN_PRODUCT_RECIPE: &str = "dir 1 0 1 0 root 0 amp -0.25 0 ; dir 1 0 1 0 root 1 amp -0.25 0 ; dir 1 0 -1 0 root 0 amp 0.25 0 ; dir 1 0 -1 0 root 1 amp 0.25 0";

fn run(args: &[&str]) -> (bool, String, String) {
    let out = Command::new(bin()).args(args).output().unwrap();
    (
        out.status.success(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn synth_inradius_prove_round_trip() {
    let dir = workdir("round_trip");
    let sym = write_laplacian_symbol(&dir);
    let field = dir.join("sin2.field");
    let lambda = 8.0 * std::f64::consts::PI * std::f64::consts::PI;

    let (ok, out, err) = run(&[
        "synth",
        "--symbol-file", sym.to_str().unwrap(),
        "--lambda", &lambda.to_string(), "0",
        "--recipe", SIN_PRODUCT_RECIPE,
        "--field-file", field.to_str().unwrap(),
    ]);
    assert!(ok, "synth failed: {err}");
    assert!(out.contains("\"terms\":4"), "{out}");
    let text = std::fs::read_to_string(&field).unwrap();
    assert!(text.starts_with("dim=2 lambda="), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("term:")).count(), 4);

    let ppm = dir.join("field.ppm");
    let (ok, out, err) = run(&[
        "inradius",
        "--symbol-file", sym.to_str().unwrap(),
        "--field-file", field.to_str().unwrap(),
        "--domain", "box 0 0 1 1",
        "--h", "0.0078125",
        "--ppm", ppm.to_str().unwrap(),
    ]);
    assert!(ok, "inradius failed: {err}");
    for key in ["\"certified\":", "\"center\":", "\"measured\":", "\"L\":", "\"h\":0.0078125"] {
        assert!(out.contains(key), "missing {key} in {out}");
    }
    let ppm_bytes = std::fs::read(&ppm).unwrap();
    assert!(ppm_bytes.starts_with(b"P6\n128 128\n255\n"));
    assert!(ppm_bytes.iter().skip(15).any(|&b| b == 255));

    let (ok, out, err) = run(&[
        "prove",
        "--symbol-file", sym.to_str().unwrap(),
        "--field-file", field.to_str().unwrap(),
        "--domain", "box 0 0 1 1",
        "--h", "0.0078125",
    ]);
    assert!(ok, "prove failed: {err}");
    assert!(out.contains("\"status\":\"ok\""), "{out}");
    assert!(out.contains("\"constructive_inradius\":"), "{out}");
    assert!(out.contains("\"rho0\":"), "{out}");
}

#[test]
fn lattice_count_json() {
    let dir = workdir("lattice");
    let sym = write_laplacian_symbol(&dir);
    let (ok, out, err) = run(&[
        "lattice-count",
        "--symbol-file", sym.to_str().unwrap(),
        "--lambda", "1", "0",
    ]);
    assert!(ok, "lattice-count failed: {err}");
    assert!(out.contains("\"count\":8"), "{out}");
    assert!(out.contains("\"R1\":"), "{out}");
    assert!(out.contains("\"witnesses\":[["), "{out}");
}

#[test]
fn cover_from_point_file() {
    let dir = workdir("cover");
    let points = dir.join("cloud.txt");
    std::fs::write(&points, "0 0\n1 0\n0.1 0.05\n0.9 0.02\n").unwrap();
    let (ok, out, err) = run(&["cover", "--points", points.to_str().unwrap(), "--r", "1.0"]);
    assert!(ok, "cover failed: {err}");
    assert!(out.contains("\"n_points\":4"), "{out}");
    assert!(out.contains("\"overlap_bound\":25"), "{out}");
}

#[test]
fn sweep_csv_deterministic_across_threads() {
    let dir = workdir("sweep");
    write_laplacian_symbol(&dir);
    let config = dir.join("sweep.cfg");
    std::fs::write(
        &config,
        format!(
            "domain = box 0 0 1 1\nsymbol_file = laplacian2.sym\nlambda_moduli = 50, 500\nlambda_phase = 0.0\nrecipe = {SIN_PRODUCT_RECIPE}\nh_policy = auto\n"
        ),
    )
    .unwrap();
    let out1 = dir.join("run1");
    let out8 = dir.join("run8");
    let (ok, _, err) = run(&[
        "sweep", "--config", config.to_str().unwrap(),
        "--out", out1.to_str().unwrap(), "--threads", "1",
    ]);
    assert!(ok, "sweep 1 failed: {err}");
    let (ok, stdout, err) = run(&[
        "sweep", "--config", config.to_str().unwrap(),
        "--out", out8.to_str().unwrap(), "--threads", "8",
    ]);
    assert!(ok, "sweep 8 failed: {err}");
    assert!(stdout.contains("\"status\":\"ok\""), "{stdout}");
    let csv1 = std::fs::read(out1.join("sweep.csv")).unwrap();
    let csv8 = std::fs::read(out8.join("sweep.csv")).unwrap();
    assert!(!csv1.is_empty());
    assert_eq!(csv1, csv8, "CSV differs across --threads");
    let text = String::from_utf8(csv1).unwrap();
    assert!(text.starts_with("# inradius-lab v1\n"), "{text}");
    assert!(
        text.lines().nth(1).unwrap().starts_with("re_lambda,im_lambda,r_lambda"),
        "{text}"
    );
}

#[test]
fn estimate_l_runs_with_seed() {
    let dir = workdir("estl");
    let sym = write_laplacian_symbol(&dir);
    let (ok, out, err) = run(&[
        "estimate-L",
        "--symbol-file", sym.to_str().unwrap(),
        "--samples", "4",
        "--seed", "7",
        "--h", "0.05",
    ]);
    assert!(ok, "estimate-L failed: {err}");
    assert!(out.contains("\"l_hat\":"), "{out}");
    // same seed → same output
    let (_, out2, _) = run(&[
        "estimate-L",
        "--symbol-file", sym.to_str().unwrap(),
        "--samples", "4",
        "--seed", "7",
        "--h", "0.05",
    ]);
    assert_eq!(out, out2);
}

#[test]
fn bad_inputs_exit_nonzero() {
    let (ok, _, err) = run(&["frobnicate"]);
    assert!(!ok);
    assert!(err.contains("unknown command"));
    let (ok, _, _) = run(&["inradius", "--domain", "box 0 0 1 1"]);
    assert!(!ok);
}

#[test]
fn characteristic_direction_is_reported() {
    // P((1, i)) = 0 for the Laplacian: the recipe direction is rejected
    let dir = workdir("char_dir");
    let sym = write_laplacian_symbol(&dir);
    let field = dir.join("bad.field");
    let (ok, _, err) = run(&[
        "synth",
        "--symbol-file", sym.to_str().unwrap(),
        "--lambda", "4", "0",
        "--recipe", "dir 1 0 0 1 root 0 amp 1 0",
        "--field-file", field.to_str().unwrap(),
    ]);
    assert!(!ok);
    assert!(err.contains("characteristic direction"), "{err}");
    assert!(!field.exists());
}
