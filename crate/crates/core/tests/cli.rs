use std::path::PathBuf;
use std::sync::Arc;

use thetaklr::cli::run;
use thetaklr::fmod::{build_crystal, write_module};
use thetaklr::ground::Matrix;
use thetaklr::hecke::{HeckeModule, HeckeParams};
use thetaklr::quiver::Quiver;

const W2: &str = "values=2,8,1/2,1/8;p=2;q=2";
const W5: &str = "values=2,8,1/2,1/8;p=2;q=5";

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["thetaklr"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("thetaklr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_window_up_to_rank_two() {
    let (code, out, _) = call(&["--hecke", W2, "verify", "--rank", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains(" 0 failed\nverdict: PASS"));
}

#[test]
fn corrupt_q_fails_with_code_one() {
    let (code, out, _) = call(&["--hecke", W2, "verify", "--rank", "2", "--corrupt-Q"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL B(c) sigma^2"));
}

#[test]
fn broken_quiver_file_reports_line() {
    let p = scratch("broken.quiver");
    std::fs::write(&p, "[vertices]\na\nb\n[arrows]\na => b\n").unwrap();
    let (code, _, err) = call(&["--quiver", p.to_str().unwrap(), "verify"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 5"), "{err}");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(call(&["--hecke", W2, "verify", "--rank", "4"]).0, 2);
    assert_eq!(call(&["--hecke", "values=2,8;p=2;q=2", "verify"]).0, 2);
    assert_eq!(call(&["--hecke", W2, "gdim", "--left", "(3)", "--right", "(2)"]).0, 2);
    assert_eq!(call(&["verify"]).0, 2);
    assert_eq!(call(&["--hecke", W2, "frobnicate"]).0, 2);
}

#[test]
fn gdim_rank_one() {
    let (code, out, _) = call(&["--hecke", W2, "gdim", "--left", "(2)", "--right", "(2)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("gdim 1_(1/2,2) R 1_(1/2,2) = 1 / (1-v^2)^1\n"), "{out}");
}

#[test]
fn character_routes_match() {
    let (code, out, _) = call(&["--hecke", W2, "character", "--nu", "2+8+1/2+1/8"]);
    assert_eq!(code, 0);
    assert!(out.contains("MATCH parity ok"));
    assert!(!out.contains("MISMATCH"));
    let (code, out, _) = call(&["--hecke", W2, "character", "--nu", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("() : 1\n"));
}

#[test]
fn shuffle_matches_concatenation() {
    let (code, out, _) = call(&["--hecke", W5, "shuffle", "--left", "(2)", "--right", "(8,2)"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("MATCH with"));
}

#[test]
fn crystal_rank_one_counts() {
    let (_, out, _) = call(&["--hecke", W2, "crystal", "--depth", "1"]);
    assert!(out.starts_with("depth 1: 4 nodes (1 3 per rank)"), "{out}");
    let (_, out, _) = call(&["--hecke", W5, "crystal", "--depth", "1"]);
    assert!(out.starts_with("depth 1: 3 nodes (1 2 per rank)"), "{out}");
    let (code, out, _) = call(&["--hecke", W2, "crystal", "--depth", "0"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("depth 0: 1 nodes"));
    let dot = scratch("c.dot");
    call(&["--hecke", W2, "crystal", "--depth", "1", "--out", dot.to_str().unwrap()]);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph crystal {") && text.contains("n0 -> n3"));
}

#[test]
fn reports_are_deterministic() {
    let a = call(&["--hecke", W2, "crystal", "--depth", "2"]);
    let b = call(&["--hecke", W2, "crystal", "--depth", "2"]);
    assert_eq!(a, b);
}

#[test]
fn hecke_rank_one_table() {
    let (code, out, _) = call(&["--hecke", W2, "hecke"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("X1 = [2]  T0 = [2]"));
    assert!(out.contains("X1 = [1/2]  T0 = [-1/2]"));
    assert!(out.contains("X1 = [8 0; 0 1/8]  T0 = [32/21 "));
}

#[test]
fn type_c_with_equal_parameters() {
    let (code, out, _) = call(&["--hecke", "values=2,8,1/2,1/8;p=2;q0=2;q1=2", "hecke", "--depth", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("coincides with type B"));
}

#[test]
fn hecke_needs_vertex_values() {
    let p = scratch("abstract.quiver");
    std::fs::write(&p, "[vertices]\na\nb\n[arrows]\na -> b\n[theta]\na = b\n").unwrap();
    let (code, _, err) = call(&["--quiver", p.to_str().unwrap(), "hecke"]);
    assert_eq!(code, 2);
    assert!(err.contains("has no value"), "{err}");
}

#[test]
fn module_files_round_trip_through_the_cli() {
    let (values, params) = HeckeParams::parse_inline(W2).unwrap();
    let q = Arc::new(Quiver::build_from_params(&values, &params).unwrap());
    let g = build_crystal(q, 2).unwrap();
    let node = g.nodes.iter().max_by_key(|n| n.witness.dim()).unwrap();
    let m = scratch("m.klr");
    std::fs::write(&m, write_module(&node.witness)).unwrap();
    let h = scratch("m.hecke");
    let (code, out, _) = call(&["--hecke", W2, "hecke", "--module", m.to_str().unwrap(), "--out", h.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = call(&["--hecke", W2, "verify", "--hecke-module", h.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let back = scratch("back.klr");
    let (code, out, _) = call(&["--hecke", W2, "hecke", "--inverse", h.to_str().unwrap(), "--out", back.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("round trip: ok"));

    // T0 + 1 breaks the quadratic relation
    let mut hm = HeckeModule::parse(&std::fs::read_to_string(&h).unwrap()).unwrap();
    hm.t[0] = &hm.t[0] + &Matrix::identity(hm.dim());
    let bad = scratch("bad.hecke");
    std::fs::write(&bad, hm.to_text()).unwrap();
    let (code, out, _) = call(&["--hecke", W2, "verify", "--hecke-module", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL (d) quadratic relation of T0"), "{out}");
    std::fs::write(&bad, "family B\np 2\nq 2\nrank 1\ndim 1\nmatrix Y1\nend\n").unwrap();
    let (code, _, err) = call(&["--hecke", W2, "verify", "--hecke-module", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 6"), "{err}");
}
