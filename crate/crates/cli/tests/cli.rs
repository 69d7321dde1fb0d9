//! End-to-end tests of the `qkey` binary: output formats, exit codes, and
//! agreement with the library the commands wrap.

use std::process::{Command, Output};

use qkey_core::poly::LaurentPoly;
use qkey_core::qkey::{family_poly, transition_matrix, FamilyId};
use qkey_core::qrat::QRat;

fn qkey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkey"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qkey_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkey"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

#[test]
fn compute_json_matches_library() {
    let o = qkey(&["compute", "--family", "U", "--index", "1,0,2", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let expected = family_poly(FamilyId::U, &[1, 0, 2]).unwrap();
    assert_eq!(LaurentPoly::from_json(&v).unwrap(), expected);
}

#[test]
fn compute_specializes_at_q_zero() {
    let o = qkey(&["compute", "--family", "U", "--index", "0,1,2", "--q0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let expected = family_poly(FamilyId::K, &[0, 1, 2]).unwrap();
    assert_eq!(LaurentPoly::from_json(&v).unwrap(), expected);
}

#[test]
fn compute_rejects_bad_input() {
    let o = qkey(&["compute", "--family", "U", "--index", "1,-1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("nonnegative"));

    let o = qkey(&["compute", "--family", "Z", "--index", "1,0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown family"));

    let o = qkey(&["compute", "--family", "U", "--index", "1,x"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("invalid integer"));
}

#[test]
fn hl_matches_library() {
    let o = qkey(&["hl", "--family", "P", "--lambda", "2,1", "--n", "3", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let lam = qkey_core::hall::Partition::new(&[2, 1]).unwrap();
    let expected = qkey_core::hall::hl_p(&lam, 3).unwrap();
    assert_eq!(LaurentPoly::from_json(&v).unwrap(), expected);

    let o = qkey(&["hl", "--family", "Q", "--lambda", "1,2", "--n", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not a partition") || !stderr(&o).is_empty());
}

#[test]
fn straighten_prints_expansion_and_top_term() {
    let o = qkey(&["straighten", "--u", "-2,3,2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("Q[1,1,1]"), "{out}");
    assert!(out.contains("top term: q^4·Q[1,1,1]"), "{out}");

    let o = qkey(&["straighten", "--u", "0,-1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn straighten_json_schema() {
    let o = qkey(&["straighten", "--u", "-1,1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let expansion = qkey_core::hall::HLExpansion::from_json(&v["expansion"]).unwrap();
    assert_eq!(expansion, qkey_core::hall::straighten_q(&[-1, 1]).unwrap());
    assert_eq!(v["top_term"]["partition"], serde_json::json!([]));
}

#[test]
fn scalar_values_and_errors() {
    let o = qkey(&["scalar", "--left", "U:2,1,0", "--right", "Uhat:0,1,2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1");

    let o = qkey(&["scalar", "--left", "M:1,0,3", "--right", "M:0,1,3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let got = QRat::from_json(&v).unwrap();
    assert_eq!(got, "q^2(1-q)(1-q^2)".parse().unwrap());

    // Monomials accept negative exponents; the q0 flag evaluates the value.
    let o = qkey(&["scalar", "--left", "M:-1,1", "--right", "M:0,0", "--q0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "-1");

    let o = qkey(&["scalar", "--left", "M:1,0", "--right", "M:1,0,0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("variables"));

    let o = qkey(&["scalar", "--left", "U:1,0", "--right", "plainwrong"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("FAMILY:INDEX"));
}

#[test]
fn matrix_json_matches_library() {
    let o = qkey(&["matrix", "--from", "U", "--to", "K", "--n", "3", "--degree", "3", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["from"], "U");
    assert_eq!(v["weights"][0], serde_json::json!([3, 0, 0]));
    let expected = transition_matrix(FamilyId::U, FamilyId::K, 3, 3).unwrap();
    let rows = v["matrix"].as_array().unwrap();
    assert_eq!(rows.len(), expected.len());
    for (r, row) in rows.iter().enumerate() {
        for (c, cell) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(QRat::from_json(cell).unwrap(), expected[r][c], "({r},{c})");
        }
    }
}

#[test]
fn verify_passes_and_reports() {
    for args in [
        &["verify", "--check", "duality", "--lambda", "2,0,0", "--n", "3"][..],
        &["verify", "--check", "flag", "--n", "2", "--degree", "2"],
        &["verify", "--check", "operators", "--n", "2", "--trials", "5", "--degree", "2"],
        &["verify", "--check", "cauchy", "--n", "2", "--degree", "3"],
        &["verify", "--check", "lemma-topterm", "--n", "2", "--trials", "5"],
    ] {
        let o = qkey(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        let out = stdout(&o);
        assert!(out.lines().all(|l| l.ends_with("PASS")), "{args:?}: {out}");
    }
}

#[test]
fn verify_json_format() {
    let o = qkey(&["verify", "--check", "duality", "--lambda", "1,0", "--n", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    let first: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(first["check"], "duality");
    assert_eq!(first["pass"], true);
    assert_eq!(first["lambda"], serde_json::json!([1, 0]));
    assert!(first["gram"].is_array());
    let second: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(second["check"], "monomial-duality");
    assert_eq!(second["pass"], true);
}

#[test]
fn verify_usage_errors() {
    let o = qkey(&["verify", "--check", "duality", "--n", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--lambda"));

    let o = qkey(&["verify", "--check", "nonsense", "--n", "3"]);
    assert_eq!(code(&o), 2);

    let o = qkey(&["verify", "--check", "duality", "--lambda", "2,1,1,1", "--n", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("parts"));
}

#[test]
fn fuel_override_is_honored() {
    let o = qkey_env(&["straighten", "--u", "-2,3,2"], "QKEY_FUEL", "1");
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("fuel"));

    let o = qkey_env(&["straighten", "--u", "0,1"], "QKEY_FUEL", "abc");
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("QKEY_FUEL"));

    let o = qkey_env(&["straighten", "--u", "-2,3,2"], "QKEY_FUEL", "100000");
    assert_eq!(code(&o), 0);
}
