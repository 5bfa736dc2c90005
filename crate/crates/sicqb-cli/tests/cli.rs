//! End-to-end tests of the binary: exit codes, golden outputs, and
//! thin-wrapper agreement with direct library calls.

use std::path::Path;
use std::process::{Command, Output};

use sicqb::born::{conditional_matrix, reciprocity_posterior, sky_conditional, Povm};
use sicqb::geometry::max_distant_gram;
use sicqb::io::{to_json, ConditionalMatrixJson, PovmJson, ProbVectorJson};
use sicqb::sic::{builtin_sic, verify_sic};
use sicqb::state::ProbVector;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sicqb"))
        .args(args)
        .env_remove("SICQB_MAX_D")
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(path: &Path, contents: &str) {
    std::fs::write(path, contents).expect("write test file");
}

fn basis_distribution_json(d: usize, k: usize) -> String {
    let n = d * d;
    let off = 1.0 / (d as f64 * (d as f64 + 1.0));
    let p: Vec<f64> = (0..n)
        .map(|i| if i == k - 1 { 1.0 / d as f64 } else { off })
        .collect();
    to_json(&ProbVectorJson { n, p })
}

#[test]
fn verify_builtin_matches_library_golden() {
    let out = run(&["verify", "--builtin", "2"]);
    assert_eq!(code(&out), 0);
    let expected = to_json(&verify_sic(&builtin_sic(2).unwrap(), 1e-10));
    assert_eq!(stdout_str(&out).trim(), expected);
}

#[test]
fn validate_point_mass_reports_negative_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    write(&p, r#"{"n":4,"p":[1.0,0.0,0.0,0.0]}"#);
    let out = run(&["validate", "--state", p.to_str().unwrap(), "--d", "2"]);
    assert_eq!(code(&out), 1);
    let doc: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(doc["status"], "invalid");
    assert!(doc["min_eigenvalue"].as_f64().unwrap() < 0.0);
}

#[test]
fn axioms_solve_emits_golden_json() {
    let out = run(&["axioms", "solve", "--qbar", "2", "--m0", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_str(&out).trim(), r#"{"n":25,"alpha":"6","beta":"1/5"}"#);
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn malformed_json_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    write(&p, "{this is not json");
    let out = run(&["validate", "--state", p.to_str().unwrap(), "--builtin", "2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unsupported_builtin_is_usage_error() {
    assert_eq!(code(&run(&["verify", "--builtin", "4"])), 2);
}

#[test]
fn env_var_caps_dimension() {
    let out = Command::new(env!("CARGO_BIN_EXE_sicqb"))
        .args(["find-sic", "--d", "4"])
        .env("SICQB_MAX_D", "3")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 2);
}

#[test]
fn convert_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let probs = dir.path().join("p.json");
    write(&probs, &basis_distribution_json(2, 1));
    let out = run(&["convert", "--probs", probs.to_str().unwrap(), "--builtin", "2"]);
    assert_eq!(code(&out), 0);
    let state = dir.path().join("rho.json");
    write(&state, stdout_str(&out).trim());
    let back = run(&["convert", "--state", state.to_str().unwrap(), "--builtin", "2"]);
    assert_eq!(code(&back), 0);
    let doc: ProbVectorJson = serde_json::from_str(stdout_str(&back).trim()).unwrap();
    let original: ProbVectorJson =
        serde_json::from_str(&basis_distribution_json(2, 1)).unwrap();
    assert_eq!(doc.n, 4);
    for (a, b) in doc.p.iter().zip(&original.p) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn geometry_gram_matches_library_golden() {
    let out = run(&["geometry", "gram", "--d", "3", "--n", "4"]);
    assert_eq!(code(&out), 0);
    let expected = to_json(&max_distant_gram(3, 4).unwrap());
    assert_eq!(stdout_str(&out).trim(), expected);
    let doc: serde_json::Value = serde_json::from_str(&expected).unwrap();
    assert!((doc["lambda0"].as_f64().unwrap() + 1.0 / 36.0).abs() < 1e-15);
    assert_eq!(doc["psd"], false);
}

#[test]
fn urgleichung_with_sky_conditional_is_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    let sic = builtin_sic(2).unwrap();
    let r = dir.path().join("sky.json");
    write(&r, &to_json(&ConditionalMatrixJson::from(&sky_conditional(&sic))));
    let prior = dir.path().join("p.json");
    write(&prior, &basis_distribution_json(2, 3));
    let out = run(&[
        "urgleichung",
        "--prior",
        prior.to_str().unwrap(),
        "--conditional",
        r.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc: ProbVectorJson = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    let original: ProbVectorJson =
        serde_json::from_str(&basis_distribution_json(2, 3)).unwrap();
    for (a, b) in doc.p.iter().zip(&original.p) {
        assert!((a - b).abs() < 1e-13);
    }
}

#[test]
fn posterior_from_povm_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let sic = builtin_sic(2).unwrap();
    let povm = Povm::from_sic(&sic);
    let povm_path = dir.path().join("povm.json");
    write(&povm_path, &to_json(&PovmJson::from(&povm)));
    let out = run(&[
        "posterior",
        "--povm",
        povm_path.to_str().unwrap(),
        "--builtin",
        "2",
        "--outcome",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let expected = reciprocity_posterior(&conditional_matrix(&sic, &povm).unwrap(), 2).unwrap();
    let doc: ProbVectorJson = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    for (a, b) in doc.p.iter().zip(expected.iter()) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn evolve_pauli_x_permutes_basis_distribution() {
    let dir = tempfile::tempdir().unwrap();
    let prior = dir.path().join("p.json");
    write(&prior, &basis_distribution_json(2, 1));
    let unitary = dir.path().join("x.json");
    write(&unitary, r#"{"d":2,"entries":[[0,0],[1,0],[1,0],[0,0]]}"#);
    let out = run(&[
        "evolve",
        "--prior",
        prior.to_str().unwrap(),
        "--unitary",
        unitary.to_str().unwrap(),
        "--builtin",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let doc: ProbVectorJson = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    let expected = ProbVector::new(vec![1.0 / 6.0, 0.5, 1.0 / 6.0, 1.0 / 6.0]).unwrap();
    for (a, b) in doc.p.iter().zip(expected.iter()) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn find_sic_is_deterministic_per_seed() {
    let a = run(&["find-sic", "--d", "2", "--seed", "7"]);
    let b = run(&["find-sic", "--d", "2", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout_str(&a), stdout_str(&b));
    let c = run(&["find-sic", "--d", "2", "--seed", "8"]);
    assert_ne!(stdout_str(&a), stdout_str(&c));
}

#[test]
fn find_sic_orbit_file_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let orbit = dir.path().join("sic.json");
    let out = run(&[
        "find-sic",
        "--d",
        "4",
        "--search-tol",
        "1e-12",
        "--orbit-out",
        orbit.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let verify = run(&[
        "verify",
        "--sic",
        orbit.to_str().unwrap(),
        "--verify-tol",
        "1e-11",
    ]);
    assert_eq!(code(&verify), 0);
}

#[test]
fn angle_table_csv_has_header_and_quantum_row() {
    let out = run(&[
        "axioms", "table", "--qbar-max", "2", "--m0-max", "4", "--output", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "qbar,m0,n,alpha,beta,cos_theta,real_hilbert"
    );
    assert!(text.lines().any(|l| l == "2,3,9,4,1/3,1/2,false"));
    assert!(text.lines().any(|l| l == "1,3,6,5/2,1/4,1/3,true"));
}

#[test]
fn table_output_renders_aligned_report() {
    let out = run(&["verify", "--builtin", "3", "--output", "table"]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    assert!(text.contains("max_overlap_deviation"));
    assert!(text.lines().any(|l| l.starts_with("pass") && l.ends_with("true")));
}

#[test]
fn selftest_single_criterion_passes() {
    let out = run(&["selftest", "--criterion", "6"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(doc["id"], 6);
    assert_eq!(doc["pass"], true);
}

#[test]
fn negative_tolerance_is_usage_error() {
    let out = run(&["verify", "--builtin", "2", "--verify-tol", "-1.0"]);
    assert_eq!(code(&out), 2);
}
