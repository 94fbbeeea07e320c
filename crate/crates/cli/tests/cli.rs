//! Runs the `milnor` binary on the worked examples and checks reports, exit
//! codes and written files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const E8: &str = "z1^6+t*z1^4*z2+z2^3+z3^2";
const E8_BASIS: &str = "z1^4*z2; z1; z2; z1^2; z1*z2; z1^3; z1^2*z2; z1^4; z1^3*z2";
const CURVE: &str = "z1^4+t*z1^2*z2^3+z2^6";
const CURVE_BASIS: &str = "z1^2*z2^4; z2; z1; z1^2; z1*z2; z2^2; z1^2*z2; z1*z2^2; z2^3; z1*z2^3; \
                           z1^2*z2^2; z2^4; z1^2*z2^3; z1*z2^4";
const GORENSTEIN: &str = r#"{"dim": 4, "unital": false, "basis": ["e1","e2","e3","e4"],
 "table": [{"i": 0, "j": 1, "products": [{"k": 3, "coeff": "1"}]},
           {"i": 2, "j": 2, "products": [{"k": 3, "coeff": "2"}]}],
 "grading": [1, 1, 1, 2]}"#;

fn milnor(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_milnor"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// The value of `key` in a `KEY: value` report.
fn field(out: &Output, key: &str) -> String {
    let prefix = format!("{key}: ");
    stdout(out)
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
        .unwrap_or_else(|| panic!("no `{key}` in\n{}", stdout(out)))
}

fn ok(out: Output) -> Output {
    assert_eq!(code(&out), 0, "stdout:\n{}\nstderr:\n{}", stdout(&out), stderr(&out));
    out
}

fn e8_file(dir: &Path, name: &str) {
    ok(milnor(dir, &["algebra", "from-poly", "--poly", E8, "--let", "t=1", "-o", name]));
}

#[test]
fn algebra_from_poly() {
    let dir = TempDir::new().unwrap();
    let out = ok(milnor(
        dir.path(),
        &["algebra", "from-poly", "--vars", "z1,z2,z3", "--poly", E8, "--let", "t=1", "-o", "e8.json"],
    ));
    assert_eq!(field(&out, "dim"), "10");
    assert_eq!(field(&out, "nil_index"), "6");
    assert_eq!(field(&out, "dim_ann"), "1");
    assert_eq!(field(&out, "admissible"), "yes");
    assert_eq!(field(&out, "weights"), "[1,2,3]");
    let file: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("e8.json")).unwrap()).unwrap();
    assert_eq!(file["dim"], 10);
}

#[test]
fn algebra_from_ideal_without_grading() {
    let dir = TempDir::new().unwrap();
    let gens = "z1^3*z2; z1^5; z1*z2^3+z1^3; z1^2*z2^2+z2^4";
    let out = ok(milnor(dir.path(), &["algebra", "from-ideal", "--gens", gens]));
    assert_eq!(field(&out, "admissible"), "yes");
    assert_eq!(field(&out, "dim_ann"), "1");
    assert_eq!(field(&out, "grading"), "none");
}

#[test]
fn algebra_from_table() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("gorenstein.json"), GORENSTEIN).unwrap();
    let out = ok(milnor(dir.path(), &["algebra", "from-table", "gorenstein.json"]));
    assert_eq!(field(&out, "dim"), "4");
    assert_eq!(field(&out, "nil_index"), "2");
}

#[test]
fn nilpoly_of_gorenstein_table() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("gorenstein.json"), GORENSTEIN).unwrap();
    let out = ok(milnor(dir.path(), &["nilpoly", "gorenstein.json", "-o", "p.json"]));
    assert_eq!(field(&out, "polynomial"), "x1*x2 + x3^2");
    let file: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    assert_eq!(file["polynomial"], "x1*x2 + x3^2");
}

#[test]
fn nilpoly_of_e8_on_listed_monomials() {
    let dir = TempDir::new().unwrap();
    let out = ok(milnor(
        dir.path(),
        &["nilpoly", "--poly", E8, "--let", "t=1", "--monomials", E8_BASIS],
    ));
    let p = field(&out, "polynomial");
    assert!(p.starts_with("-1/1080*x1^6 + 1/24*x1^4*x2 - 1/36*x1^4*x3 + 1/6*x1^3*x4 - 1/9*x1^3*x5"), "{p}");
    assert_eq!(field(&out, "degree"), "6");

    // the same basis applied to a stored algebra file
    e8_file(dir.path(), "e8.json");
    let again = ok(milnor(dir.path(), &["nilpoly", "e8.json", "--monomials", E8_BASIS]));
    assert_eq!(field(&again, "polynomial"), p);
}

#[test]
fn non_admissible_algebra_is_a_precondition_failure() {
    let dir = TempDir::new().unwrap();
    let table = r#"{"dim": 2, "unital": false, "basis": ["a","b"], "table": []}"#;
    fs::write(dir.path().join("flat.json"), table).unwrap();
    let out = milnor(dir.path(), &["nilpoly", "flat.json", "-o", "p.json"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("dim Ann = 2"), "{}", stderr(&out));
    assert!(!dir.path().join("p.json").exists());
}

#[test]
fn checks_on_e8() {
    let dir = TempDir::new().unwrap();
    e8_file(dir.path(), "e8.json");
    let saito = ok(milnor(dir.path(), &["check", "saito", "e8.json"]));
    assert_eq!(field(&saito, "saito"), "pass");
    assert_eq!(field(&saito, "normal_form"), "0");
    assert_eq!(field(&ok(milnor(dir.path(), &["check", "blaschke", "e8.json"])), "blaschke"), "pass");
    let rec = ok(milnor(dir.path(), &["check", "recursion", "e8.json"]));
    for l in 4..=6 {
        assert_eq!(field(&rec, &format!("p{l}")), "match");
    }
    for kind in ["admissible", "nondegen", "grading", "translation", "homogeneity"] {
        ok(milnor(dir.path(), &["check", kind, "e8.json", "--count", "3"]));
    }
}

#[test]
fn saito_fails_off_quasi_homogeneous() {
    let dir = TempDir::new().unwrap();
    let out = milnor(dir.path(), &["check", "saito", "--poly", "z1^5+z2^5+z1^3*z2^3"]);
    assert_eq!(code(&out), 1);
    assert_eq!(field(&out, "saito"), "fail");
    assert_eq!(field(&out, "milnor"), "16");
    assert_eq!(field(&out, "tjurina"), "15");
}

#[test]
fn sign_flip_on_curve_family_gives_verified_certificate() {
    let dir = TempDir::new().unwrap();
    let out = ok(milnor(
        dir.path(),
        &[
            "equiv", "from-map", "--poly", CURVE, "--let", "t=1", "--let-tilde", "t=-1", "--basis", CURVE_BASIS,
            "--map", "z1->z1; z2->-z2", "-o", "cert.json",
        ],
    ));
    assert_eq!(field(&out, "n"), "13");
    assert_eq!(field(&out, "certificate"), "pass");
    let cert: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("cert.json")).unwrap()).unwrap();
    assert_eq!(cert["convention"], "c*Ptilde(x)=P(Cx)");
    assert_eq!(cert["C"].as_array().unwrap().len(), 13);

    // re-check the written certificate against separately built nil-polynomials
    let nil = |t: &str, name: &str| {
        ok(milnor(
            dir.path(),
            &["nilpoly", "--poly", CURVE, "--let", t, "--monomials", CURVE_BASIS, "-o", name],
        ));
    };
    nil("t=1", "p.json");
    nil("t=-1", "pt.json");
    let verify = ok(milnor(
        dir.path(),
        &["equiv", "verify", "--p", "p.json", "--ptilde", "pt.json", "--cert", "cert.json"],
    ));
    assert_eq!(field(&verify, "certificate"), "pass");
    assert_eq!(field(&verify, "low_degrees"), "pass");
}

#[test]
fn fingerprints_separate_the_families() {
    let dir = TempDir::new().unwrap();
    e8_file(dir.path(), "e8.json");
    ok(milnor(dir.path(), &["algebra", "from-poly", "--poly", CURVE, "--let", "t=1", "-o", "c.json"]));
    let out = ok(milnor(dir.path(), &["equiv", "fingerprint", "e8.json", "c.json"]));
    assert_eq!(field(&out, "result"), "distinct");
}

#[test]
fn identity_certificate_verifies() {
    let dir = TempDir::new().unwrap();
    let id = r#"{"c":"1","C":[["1","0","0"],["0","1","0"],["0","0","1"]],"convention":"c*Ptilde(x)=P(Cx)"}"#;
    fs::write(dir.path().join("id.json"), id).unwrap();
    let p = "x1*x2+x3^2";
    let out = ok(milnor(dir.path(), &["equiv", "verify", "--p", p, "--ptilde", p, "--cert", "id.json"]));
    assert_eq!(field(&out, "certificate"), "pass");

    let out = milnor(dir.path(), &["equiv", "verify", "--p", p, "--ptilde", "x1*x2+2*x3^2", "--cert", "id.json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(field(&out, "certificate"), "fail");
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&milnor(dir.path(), &["algebra", "from-poly", "--poly", "z1^^2"])), 2);
    assert_eq!(code(&milnor(dir.path(), &["algebra", "from-poly", "--bogus"])), 2);
    assert_eq!(code(&milnor(dir.path(), &["algebra", "from-table", "missing.json"])), 2);
    assert_eq!(code(&milnor(dir.path(), &["check", "saito", "--poly", "z1^3", "--let", "t"])), 2);
}

#[test]
fn infinite_quotient_leaves_no_file() {
    let dir = TempDir::new().unwrap();
    let out = milnor(
        dir.path(),
        &["algebra", "from-poly", "--vars", "z1,z2", "--poly", "z1^2", "-o", "out.json"],
    );
    assert_eq!(code(&out), 3);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn json_reports() {
    let dir = TempDir::new().unwrap();
    let out = ok(milnor(dir.path(), &["--json", "algebra", "from-poly", "--poly", E8, "--let", "t=1"]));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], 10);
    assert_eq!(v["hilbert_chain"], serde_json::json!([9, 7, 5, 3, 2, 1]));
    assert_eq!(v["admissible"], "yes");
}

#[test]
fn grid_writes_one_file_per_point() {
    let dir = TempDir::new().unwrap();
    let out = ok(milnor(
        dir.path(),
        &["algebra", "from-poly", "--poly", E8, "--grid", "t=-1..1 step 1/2", "-o", "e8_{t}.json"],
    ));
    assert_eq!(field(&out, "points"), "5");
    for tag in ["-1", "-1_2", "0", "1_2", "1"] {
        assert!(dir.path().join(format!("e8_{tag}.json")).exists(), "missing e8_{tag}.json");
    }
    let text = stdout(&out);
    let t0 = text.split("[t=0]").nth(1).unwrap();
    assert!(t0.contains("nil_index: 5"));

    let missing = milnor(dir.path(), &["algebra", "from-poly", "--poly", E8, "--grid", "t=0..1", "-o", "e8.json"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn replayed_manifest_reproduces_outputs() {
    let dir = TempDir::new().unwrap();
    let args = [
        "--manifest", "run.json", "nilpoly", "--poly", E8, "--let", "t=1/2", "--monomials", E8_BASIS, "-o", "p.json",
    ];
    let first = ok(milnor(dir.path(), &args));
    let written = fs::read(dir.path().join("p.json")).unwrap();
    fs::remove_file(dir.path().join("p.json")).unwrap();

    let manifest: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("run.json")).unwrap()).unwrap();
    assert_eq!(manifest["outputs"], serde_json::json!(["p.json"]));

    let second = ok(milnor(dir.path(), &["replay", "run.json"]));
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(fs::read(dir.path().join("p.json")).unwrap(), written);
}
