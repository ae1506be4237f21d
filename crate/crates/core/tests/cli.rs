use std::path::PathBuf;
use std::process::Command;

use eigenfence::cli::run;
use eigenfence::geometry::Region;
use eigenfence::BoundReport;
use serde_json::Value;

fn problem(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name).to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eigenfence").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn disc_list(v: &Value) -> Vec<(f64, f64)> {
    v["discs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| (d["center"].as_f64().unwrap(), d["radius"].as_f64().unwrap()))
        .collect()
}

#[test]
fn locate_prints_second_type_discs() {
    let (code, out, _) = call(&["locate", &problem("six_by_six.json"), "--classic"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["region"]["kind"], "disc_union");
    assert_eq!(disc_list(&v["region"]), vec![(10., 12.), (6., 8.), (8., 10.), (4., 6.), (2., 9.), (6., 9.)]);
    assert_eq!(disc_list(&v["classic"]["columns"])[2], (8., 34.));
    assert_eq!(v["row_sum"], 24.0);
    let _: Region = serde_json::from_value(v["region"].clone()).unwrap();
}

#[test]
fn bound_reports_disc_bounds() {
    let (code, out, _) = call(&["bound", &problem("four_by_four.json"), "--det"]);
    assert_eq!(code, 0);
    let r: Vec<BoundReport> = serde_json::from_str(&out).unwrap();
    let get = |n: &str| r.iter().find(|e| e.name == n).unwrap().value;
    assert_eq!(get("m_B"), 14.0);
    assert_eq!(get("m_F"), 6.0);
    assert!(get("det_tauinf_k1") >= 576.0);

    let (code, out, _) = call(&["bound", &problem("four_by_four.json"), "--norm", "inf", "--k", "1,3"]);
    assert_eq!(code, 0);
    let r: Vec<BoundReport> = serde_json::from_str(&out).unwrap();
    assert!(r.iter().any(|e| e.name == "tauinf_F_k3"));
    assert!(!r.iter().any(|e| e.name.starts_with("tau1")));
}

#[test]
fn bound_rejects_other_norms() {
    let (code, _, err) = call(&["bound", &problem("four_by_four.json"), "--norm", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("only 1 and inf"));
}

#[test]
fn refine_switches_on_parity() {
    let (code, out, _) = call(&["refine", &problem("six_by_six.json")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v.get("g").is_none());
    assert_eq!(disc_list(&v["region"])[4], (-1., 6.));

    let (code, out, _) = call(&["refine", &problem("row_sum_three.json")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["region"]["kind"], "pairwise_intersection_union");
    assert_eq!(v["g"][1], serde_json::json!([0.0, -3.0, 12.0]));
    assert_eq!(v["shifted_pair_region"]["kind"], "intersection");
}

#[test]
fn zero_components_print_a_notice() {
    let (code, out, err) = call(&["locate", &problem("zero_component.json")]);
    assert_eq!(code, 0);
    assert!(err.contains("desingularized"), "{err}");
    assert!(out.contains("disc_union"));
}

#[test]
fn obr_returns_intersection() {
    let (code, out, _) = call(&["obr", &problem("row_sum_three.json")]);
    assert_eq!(code, 0);
    let r: Region = serde_json::from_str(&out).unwrap();
    assert!(r.contains(eigenfence::ComplexPoint::real(-6.0)));
    assert!(r.contains(eigenfence::ComplexPoint::real(5.0)));
}

#[test]
fn validate_exit_codes() {
    let (code, out, _) = call(&["validate", &problem("six_by_six.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ok"));
    let (code, _, err) = call(&["validate", &problem("wrong_eigenvalue.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("residual"));
    let (code, _, err) = call(&["locate", &problem("matrix_only.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("eigenfence eig"));
    let (code, _, _) = call(&["locate", "/nonexistent/problem.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = call(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn math_errors_exit_one() {
    // Two-by-two problems are parseable but too small for the disc construction.
    let dir = std::env::temp_dir().join(format!("eigenfence-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("two.json");
    std::fs::write(&path, r#"{"matrix":[[1,1],[1,1]],"eigenvalue":2,"eigenvector":[1,1]}"#).unwrap();
    let (code, _, err) = call(&["locate", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn eig_lists_by_modulus() {
    let (code, out, _) = call(&["eig", &problem("six_by_six.txt")]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("24.000000"), "{out}");
    let (code, out2, _) = call(&["eig", &problem("six_by_six.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, out2);
}

#[test]
fn render_to_stdout_and_file_agree() {
    let (code, svg, _) =
        call(&["render", &problem("six_by_six.json"), "--layers", "classic,second,refined", "--eigs"]);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("fill=\"#000000\"").count(), 6);

    let dir = std::env::temp_dir().join(format!("eigenfence-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.svg");
    let (code, out, _) = call(&[
        "render",
        &problem("six_by_six.json"),
        "--layers",
        "classic,second,refined",
        "--eigs",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), svg);

    let (code, _, _) = call(&["render", &problem("matrix_only.json"), "--layers", "classic"]);
    assert_eq!(code, 0);
}

#[test]
fn binary_is_deterministic_and_honours_seed() {
    let bin = env!("CARGO_BIN_EXE_eigenfence");
    let run_bin = |seed: &str| {
        Command::new(bin)
            .args(["obr", &problem("cassini_three.json")])
            .env("EIGENFENCE_SEED", seed)
            .output()
            .unwrap()
    };
    let a = run_bin("1");
    let b = run_bin("99");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let bad = Command::new(bin).args(["validate", &problem("wrong_eigenvalue.json")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
