use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;
use tsurf::flow::{cylinder_decomposition, DecompositionOutcome, Direction};
use tsurf::numfield::{cot_pi, CycNum, RealCyc};
use tsurf::surface::{build_wiman, SurfaceData, TranslationSurface};

fn tsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsurf")).args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = tsurf(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn build(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = tsurf(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn exact(v: &Value) -> RealCyc {
    let z: CycNum = serde_json::from_value(v["exact"].clone()).unwrap();
    RealCyc::new(z).unwrap()
}

#[test]
fn build_wiman_records_genus_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "s.json", &["wiman", "--g", "3", "--k", "2"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let meta: Value = serde_json::from_str::<Value>(&text).unwrap()["metadata"].clone();
    assert_eq!(meta["genus"], 3);
    // parse and re-emit: byte for byte
    let data = SurfaceData::from_json(&text).unwrap();
    assert_eq!(data.to_json_with_metadata(meta), text.trim_end());
    let lib = build_wiman(3, 2).unwrap();
    assert_eq!(TranslationSurface::from_json(&text).unwrap().to_json(), lib.to_json());
    let inv = ok_json(&["invariants", p(&path)]);
    assert_eq!(inv["genus"], 3);
    assert_eq!(exact(&inv["area"]), lib.area());
}

#[test]
fn cylinders_match_library_and_formula() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "s.json", &["wiman", "--g", "3", "--k", "2"]);
    let out = ok_json(&["cylinders", p(&path), "--dir", "0,1"]);
    let s = build_wiman(3, 2).unwrap();
    let DecompositionOutcome::Cylinders(dec) = cylinder_decomposition(&s, &Direction::vertical(), 10_000).unwrap()
    else {
        panic!("vertical direction decomposes");
    };
    let cyls = out["cylinders"].as_array().unwrap();
    assert_eq!(cyls.len(), dec.cylinders.len());
    for (j, c) in cyls.iter().zip(&dec.cylinders) {
        assert_eq!(exact(&j["modulus"]), c.modulus);
        assert!((j["modulus"]["double"].as_f64().unwrap() - c.modulus.to_f64()).abs() < 1e-12);
    }

    let path = build(&dir, "d.json", &["2ngon", "--n", "5"]);
    let out = ok_json(&["cylinders", p(&path), "--dir", "0,1"]);
    let mut moduli: Vec<RealCyc> = out["cylinders"].as_array().unwrap().iter().map(|c| exact(&c["modulus"])).collect();
    moduli.sort();
    let c = cot_pi(1, 10).unwrap();
    assert_eq!(moduli, vec![c.clone(), &c + &c, &c + &c]);
}

#[test]
fn rm_check_verdicts() {
    let v = ok_json(&["rm-check", "--g", "3", "--k", "2"]);
    assert_eq!(v["verdict"], "violated");
    assert_eq!(v["trace_field"]["degree"], 3);
    assert!(v["area_double"].as_f64().unwrap() > 0.0);
    let v = ok_json(&["rm-check", "--g", "3", "--k", "1"]);
    assert_eq!(v["verdict"], "preserved_consistent");
    let v = ok_json(&["rm-check", "--g", "4", "--k", "3"]);
    assert_eq!(v["verdict"], "preserved_consistent");
    assert_eq!(v["trace_field"]["degree"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(tsurf(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(tsurf(&["invariants", "/definitely/missing.json"]).status.code(), Some(1));
    assert_eq!(tsurf(&["build", "wiman", "--g", "3"]).status.code(), Some(1));
    assert_eq!(tsurf(&["--help"]).status.code(), Some(0));
    // domain errors
    assert_eq!(tsurf(&["build", "wiman", "--g", "3", "--k", "5"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let torus = build(&dir, "t.json", &["origami", "--h", "1", "--v", "1"]);
    // slope √2/2 is irrational
    let out = tsurf(&["cylinders", p(&torus), "--dir", "1,cos(1/4)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Jenkins-Strebel"));
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(&torus).unwrap().replacen("\"1\"", "\"2\"", 1);
    std::fs::write(&bad, text).unwrap();
    let out = tsurf(&["validate", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(ok_json(&["validate", p(&torus)])["valid"], true);
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "n9.json", &["2ngon", "--n", "9"]);
    let again = build(&dir, "n9b.json", &["2ngon", "--n", "9"]);
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
    for args in [
        vec!["render", p(&path), "--dir", "0,1"],
        vec!["cylinders", p(&path), "--dir", "1,0"],
        vec!["homology", "basis", p(&path)],
    ] {
        let a = tsurf(&args);
        let b = tsurf(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
    let t1 = tsurf(&["--threads", "1", "cylinders", p(&path), "--dir", "0,1"]);
    let t4 = tsurf(&["--threads", "4", "cylinders", p(&path), "--dir", "0,1"]);
    assert_eq!(t1.stdout, t4.stdout);
}

fn count_classes(svg: &str) -> usize {
    let mut seen: Vec<&str> = svg.split("class=\"").skip(1).map(|s| s.split('"').next().unwrap()).collect();
    seen.sort();
    seen.dedup();
    seen.len()
}

#[test]
fn render_pictures() {
    let dir = TempDir::new().unwrap();
    let torus = build(&dir, "t.json", &["origami", "--h", "1", "--v", "1"]);
    let out = String::from_utf8(tsurf(&["render", p(&torus)]).stdout).unwrap();
    assert_eq!(out.matches("<polygon").count(), 1);
    // the square is drawn at 800 units
    assert!(out.contains("20.000,820.000 820.000,820.000 820.000,20.000 20.000,20.000"));

    let n9 = build(&dir, "n9.json", &["2ngon", "--n", "9"]);
    let svg = dir.path().join("n9.svg");
    assert!(tsurf(&["render", p(&n9), "--dir", "0,1", "-o", p(&svg)]).status.success());
    let out = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(count_classes(&out), 5);
    assert_eq!(out.matches("<circle").count(), 18);

    let d5 = build(&dir, "d5.json", &["double-ngon", "--n", "5"]);
    let out = String::from_utf8(tsurf(&["--svg", "cylinders", p(&d5), "--dir", "0,1"]).stdout).unwrap();
    assert_eq!(count_classes(&out), 2);
    assert_eq!(out.matches("fill=\"none\" stroke=\"black\"").count(), 2);
}

#[test]
fn act_and_veech_commands() {
    let dir = TempDir::new().unwrap();
    let torus = build(&dir, "t.json", &["origami", "--h", "2,1", "--v", "1,2"]);
    let out = tsurf(&["act", p(&torus), "--matrix", "1,1,0,1"]);
    assert!(out.status.success());
    let sheared = TranslationSurface::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(sheared.genus(), 1);
    assert_eq!(sheared.area(), RealCyc::from_int(2));

    let g = ok_json(&["veech", "generators", "--g", "2", "--which", "omega-g"]);
    let c = exact(&serde_json::json!({"exact": g["parabolic"]["exact"]["c"]}));
    assert_eq!(c, -cot_pi(1, 10).unwrap().scale(&num_rational::BigRational::from_integer(2.into())));

    let n5 = build(&dir, "n5.json", &["2ngon", "--n", "5"]);
    let par = ok_json(&["veech", "parabolic", p(&n5), "--dir", "0,1"]);
    assert_eq!(par["kind"], "parabolic");
    let tf = ok_json(&["trace-field", p(&n5), "--dir", "0,1"]);
    assert_eq!(tf["field"]["degree"], 2);
    let sp = ok_json(&["homology", "spectra", p(&n5), "--dir", "0,1"]);
    for e in sp["elements"].as_array().unwrap() {
        assert_eq!(e["symplectic"], true);
        assert_eq!(e["spectral"]["palindromic"], true);
    }
    let hb = ok_json(&["homology", "basis", p(&n5)]);
    assert_eq!(hb["genus"], 2);
    let act = ok_json(&["homology", "action", p(&n5), "--rotate", "1/10"]);
    assert_eq!(act["spectral"]["finite_order"], 10);
}

#[test]
fn period_matrix_command() {
    let v = ok_json(&["period-matrix", "--g", "2", "--bits", "128"]);
    assert_eq!(v["symmetric"], true);
    assert_eq!(v["im_positive"], true);
    assert!(v["err"].as_f64().unwrap() < 1e-10);
}

#[test]
fn trace_from_interior_point() {
    let dir = TempDir::new().unwrap();
    let torus = build(&dir, "t.json", &["origami", "--h", "1", "--v", "1"]);
    // slope 1/2 closes after one period (2, 1)
    let v = ok_json(&["trace", p(&torus), "--polygon", "0", "--point", "1/3,1/7", "--dir", "2,1"]);
    assert_eq!(v["outcome"]["kind"], "closes");
    assert_eq!(v["displacement"]["double"], serde_json::json!([2.0, 1.0]));
    // the origin is a legitimate point, only directions must be nonzero
    let n5 = build(&dir, "n5.json", &["2ngon", "--n", "5"]);
    assert!(tsurf(&["trace", p(&n5), "--polygon", "0", "--point", "0,0", "--dir", "0,1"]).status.success());
    assert_eq!(tsurf(&["trace", p(&n5), "--polygon", "0", "--point", "0,0", "--dir", "0,0"]).status.code(), Some(1));
}
