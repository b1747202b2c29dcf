use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use hyplat::json::{
    algebraic_real_json, isometry_json, model_json, nf_vector_json, lattice_of_isometry, parse_isometry, parse_rational, parse_vector,
};
use hyplat::spectral::{lehmer_number, spectral_data};
use hyplat::surface::blowup_model;
use hyplat::weyl::{coxeter_element, coxeter_element_matrix, weyl_word, RootSystem};
use hyplat::zariski::CurveConfig;
use hyplat::{Isometry, Lattice, SurfaceModel};
use hyplat_cli::run;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

static COUNTER: AtomicUsize = AtomicUsize::new(0);

fn write_tmp(v: &Value) -> PathBuf {
    let k = COUNTER.fetch_add(1, Ordering::SeqCst);
    let p = std::env::temp_dir().join(format!("hyplat-cli-{}-{k}.json", std::process::id()));
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn write_raw(s: &str) -> PathBuf {
    let k = COUNTER.fetch_add(1, Ordering::SeqCst);
    let p = std::env::temp_dir().join(format!("hyplat-cli-{}-{k}.json", std::process::id()));
    std::fs::write(&p, s).unwrap();
    p
}

fn ok(args: &[&str]) -> Value {
    let mut argv = vec!["hyplat"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn fails(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["hyplat"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert!(out.stdout.is_empty());
    (out.code, serde_json::from_str(out.stderr.trim()).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

// Coxeter element of the E10 sub-diagram of W_12 followed by the swap of e11, e12.
fn e10_with_swap() -> (RootSystem, Isometry) {
    let rs = RootSystem::new(12).unwrap();
    let c = weyl_word(&rs, &(0..10).collect::<Vec<_>>()).unwrap();
    let g = c.compose(&rs.simple_reflection(11).unwrap()).unwrap();
    (rs, g)
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n + 1];
    v[i] = 1;
    v
}

#[test]
fn coxeter_matrix_round_trips() {
    let v = ok(&["coxeter", "--n", "10"]);
    let l = lattice_of_isometry(&v, "").unwrap();
    let g = parse_isometry(&v, &l, "").unwrap();
    assert_eq!(g.matrix(), coxeter_element(10, None).unwrap().element.matrix());
    assert_eq!(v["class"], "positive");
    assert_eq!(v["lambda"]["decimal"]["lo"], "1.17628081");
}

#[test]
fn emitted_isometry_feeds_back_in() {
    let rs = RootSystem::new(10).unwrap();
    let g = coxeter_element_matrix(&rs, None).unwrap();
    let p = write_tmp(&isometry_json(&g));
    let e = ok(&["entropy", "--g", s(&p)]);
    assert_eq!(e["class"], "positive");
    let salem = ok(&["salem", "--g", s(&p)]);
    assert_eq!(salem["irreducibility"], "verified");
    assert_eq!(salem["lehmer_check"], true);
}

#[test]
fn output_is_deterministic() {
    let a = run(["hyplat", "coxeter", "--table", "3..12"]);
    let b = run(["hyplat", "--jobs", "2", "coxeter", "--table", "3..12"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tolerance_controls_interval_width() {
    let g = write_tmp(&ok(&["coxeter", "--n", "11"]));
    let width = |v: &Value| {
        let lo = parse_rational(&v["lambda"]["lo"], "").unwrap();
        let hi = parse_rational(&v["lambda"]["hi"], "").unwrap();
        hi - lo
    };
    let coarse = width(&ok(&["--tol", "1/1000", "entropy", "--g", s(&g)]));
    let fine = width(&ok(&["--tol", "1e-20", "entropy", "--g", s(&g)]));
    assert!(coarse <= BigRational::new(1.into(), 1000.into()));
    assert!(fine <= BigRational::new(1.into(), BigInt::from(10).pow(20)));
    assert!(fine < coarse);
}

#[test]
fn eigvec_with_power_iteration() {
    let g = write_tmp(&ok(&["coxeter", "--n", "10"]));
    let mut b = vec!["0"; 11];
    b[0] = "1";
    let b = write_tmp(&json!({ "coords": b }));
    let v = ok(&["eigvec", "--g", s(&g), "--b", s(&b)]);
    let angle: f64 = v["power_iteration"]["angle_to_exact_approx"].as_str().unwrap().parse().unwrap();
    assert!(angle < 1e-8);
    assert!(v["plus"]["coords"].is_array());
}

#[test]
fn zariski_and_probe() {
    let curves = write_tmp(&json!({ "curves": [{ "name": "E1", "coords": ["0", "1", "0"] }] }));
    let d = write_tmp(&json!({ "coords": ["1", "2", "0"] }));
    let v = ok(&["zariski", "--d", s(&d), "--curves", s(&curves), "--probe", "5", "--seed", "7"]);
    assert_eq!(v["components"], json!({ "E1": "2" }));
    assert_eq!(v["positive"]["coords"], json!(["1", "0", "0"]));
    assert_eq!(v["probe"]["unique"], true);
}

#[test]
fn multiplier_of_leading_ray() {
    let rs = RootSystem::new(10).unwrap();
    let g = coxeter_element_matrix(&rs, None).unwrap();
    let rays = hyplat::nef::leading_eigenvectors(&g).unwrap();
    let gp = write_tmp(&isometry_json(&g));
    let plus = ok(&["stab", "--g", s(&gp), "--m", s(&write_tmp(&nf_vector_json(&rays.plus)))]);
    assert_eq!(plus["multiplier"]["alpha_kind"], "expanding");
    assert_eq!(plus["multiplier"]["consistent"], true);
    let minus = ok(&["stab", "--g", s(&gp), "--m", s(&write_tmp(&nf_vector_json(&rays.minus)))]);
    assert_eq!(minus["multiplier"]["alpha_kind"], "inverse");
    // same number, isolated by different intervals
    for key in ["decimal", "min_poly"] {
        assert_eq!(plus["multiplier"]["alpha"][key], minus["multiplier"]["alpha"][key]);
    }
}

#[test]
fn minimal_then_blowdown() {
    let (rs, g) = e10_with_swap();
    let l = rs.lattice().clone();
    let cfg = CurveConfig::new(
        &l,
        vec![
            ("E11".into(), l.vector_from_i64(&unit(12, 11)).unwrap()),
            ("E12".into(), l.vector_from_i64(&unit(12, 12)).unwrap()),
        ],
    )
    .unwrap();
    let model = SurfaceModel::new(&l, rs.canonical().clone(), cfg).unwrap();
    let gp = write_tmp(&isometry_json(&g));
    let mp = write_tmp(&model_json(&model));
    let m = ok(&["minimal", "--g", s(&gp), "--model", s(&mp)]);
    assert_eq!(m, json!({ "minimal": false, "contractible": ["E11", "E12"] }));
    let b = ok(&["blowdown", "--g", s(&gp), "--model", s(&mp)]);
    assert_eq!(b["contracted"], json!(["E11", "E12"]));
    let before = spectral_data(&g).unwrap();
    let coeffs: Vec<String> = before.split.salem_factor.coeffs().iter().map(|c| c.to_string()).collect();
    assert_eq!(b["spectral"]["split"]["salem_factor"]["coeffs"], json!(coeffs));
    // the contracted isometry parses back on its own lattice
    let l2 = lattice_of_isometry(&b["isometry"], "").unwrap();
    assert_eq!(l2.rank(), 11);
    parse_isometry(&b["isometry"], &l2, "").unwrap();
}

#[test]
fn stab_set_and_delta() {
    let model = blowup_model(10).unwrap().with_named_curves(&[("C", vec![6, -2, -2, -2, -2, -2, -2, -2, -2, -2, -2])]).unwrap();
    let rs = RootSystem::new(10).unwrap();
    let g = coxeter_element_matrix(&rs, None).unwrap();
    let gp = write_tmp(&isometry_json(&g));
    let mp = write_tmp(&model_json(&model));
    let st = ok(&["stab", "--g", s(&gp), "--model", s(&mp)]);
    assert_eq!(st["stab_set"], json!(["C"]));
    let d = ok(&["delta", "--g", s(&gp), "--model", s(&mp)]);
    assert_eq!(d["delta"], json!({ "C": "1/2" }));
    assert_eq!(d["d"], "2");
    assert_eq!(d["index_diagnostic"], "ok");
}

#[test]
fn multdep_finds_the_generator() {
    let l = lehmer_number();
    let alphas = json!({ "alphas": [algebraic_real_json(&l.pow(2).unwrap()), algebraic_real_json(&l.pow(3).unwrap())] });
    let v = ok(&["multdep", "--alphas", s(&write_tmp(&alphas))]);
    assert_eq!(v["dependent"], true);
    assert_eq!(v["exponents"], json!(["2", "3"]));
    assert_eq!(v["generator"]["decimal"]["lo"], "1.17628081");
}

#[test]
fn fixed_ray_of_parabolic_coxeter_element() {
    let rs = RootSystem::new(9).unwrap();
    let c = coxeter_element_matrix(&rs, None).unwrap();
    let gens = write_tmp(&json!({ "gens": [isometry_json(&c)] }));
    let v = ok(&["--word-bound", "2", "fixedray", "--gens", s(&gens)]);
    let ray = parse_vector(&v["ray"], rs.lattice(), "").unwrap();
    assert!(ray.square().is_zero());
    // proportional to K
    let k = rs.canonical();
    assert!(ray.scale(&k.coords()[0]).sub(&k.scale(&ray.coords()[0])).unwrap().coords().iter().all(Zero::is_zero));
    assert_eq!(v["word_scan"]["positive_word"], Value::Null);
}

#[test]
fn average_over_a_swap() {
    let l = Lattice::lorentzian(3).unwrap();
    let rs = RootSystem::on_lattice(&l).unwrap();
    let swap = rs.simple_reflection(1).unwrap();
    let group = write_tmp(&json!({ "gens": [isometry_json(&Isometry::identity(&l)), isometry_json(&swap)] }));
    let m = write_tmp(&json!(["0", "1", "0", "0"]));
    let v = ok(&["average", "--m", s(&m), "--group", s(&group)]);
    assert_eq!(v["coords"], json!(["0", "1", "1", "0"]));
}

#[test]
fn pretty_marks_approximations() {
    let out = run(["hyplat", "--pretty", "coxeter", "--n", "10"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("≈1.176"));
    assert!(out.stdout.contains("[1.17628081, 1.17628082]"));
}

#[test]
fn exit_codes() {
    let (code, e) = fails(&["bogus"]);
    assert_eq!((code, e["code"].as_str().unwrap()), (1, "UnknownSubcommand"));

    let (code, e) = fails(&["entropy", "--g", "/nonexistent/g.json"]);
    assert_eq!((code, e["code"].as_str().unwrap()), (1, "Io"));

    let (code, e) = fails(&["entropy", "--g", s(&write_raw("{ not json"))]);
    assert_eq!((code, e["code"].as_str().unwrap()), (1, "Parse"));

    let (code, e) = fails(&["entropy", "--g", s(&write_tmp(&json!({ "matrix": [["1", "x"], ["0", "1"]] })))]);
    assert_eq!((code, e["code"].as_str().unwrap()), (1, "SchemaViolation"));
    assert_eq!(e["pointer"], "/matrix/0/1");

    // integral but not an isometry of Z^{1,1}
    let (code, e) = fails(&["entropy", "--g", s(&write_tmp(&json!({ "matrix": [["2", "0"], ["0", "1"]] })))]);
    assert_eq!(code, 2);
    assert!(e["message"].is_string());

    let (code, e) = fails(&["--tol", "-1", "coxeter", "--n", "10"]);
    assert_eq!((code, e["code"].as_str().unwrap()), (1, "Usage"));

    assert_eq!(run(["hyplat", "--help"]).code, 0);
    assert_eq!(run(["hyplat", "--version"]).code, 0);
}

#[test]
fn degree_cap_is_a_domain_error() {
    let (code, e) = fails(&["coxeter", "--n", "70"]);
    assert_eq!((code, e["code"].as_str().unwrap()), (2, "DegreeTooLarge"));
}
