use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn sc(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = sc(args, stdin);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn clique_pipeline_to_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("edges.txt");
    std::fs::write(&edges, "0 1\n1 2\n0 2\n2 3\n").unwrap();
    let doc = ok(&["generate", "clique", "--edges", edges.to_str().unwrap(), "--max-dim", "2"], None);
    let json: Value = serde_json::from_str(&ok(&["spectrum", "--flavor", "hodge", "--dim", "1"], Some(&doc))).unwrap();
    assert_eq!(json["flavor"], "hodge");
    assert_eq!(json["k"], 1);
    assert_eq!(json["eigenvalues"].as_array().unwrap().len(), 4);
    assert_eq!(json["zero_dim"], 0);
}

#[test]
fn check_all_on_tetrahedron() {
    let doc = ok(&["generate", "simplex", "--dim", "3"], None);
    let out = ok(&["check", "--all"], Some(&doc));
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_spectral_on_fan_truncation() {
    let doc = ok(&["generate", "fan", "--n", "5"], None);
    let out = ok(&["verify", "--spectral", "--radius", "2", "--bc", "neumann"], Some(&doc));
    assert!(out.starts_with("PASS spectral"));
    assert!(out.contains("requested neumann"));
    assert!(out.contains("identity_i=true"));
}

#[test]
fn malformed_document_names_the_key() {
    let out = sc(&["curvature"], Some(r#"{"maximal": [[0,1]], "empty": "maybe"}"#));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`empty`"));
    let out = sc(&["laplacian", "--flavor", "sideways"], Some("{}"));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(sc(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn sigma_needs_a_radius() {
    let doc = ok(&["generate", "cycle", "--n", "4"], None);
    let out = sc(&["laplacian", "--flavor", "sigma", "--dim", "0"], Some(&doc));
    assert_eq!(out.status.code(), Some(2));
    let trip = ok(&["laplacian", "--flavor", "sigma", "--dim", "0", "--radius", "1", "--root", "0"], Some(&doc));
    assert!(!trip.is_empty());
}

#[test]
fn documents_round_trip_and_random_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let a = ok(&["generate", "random", "--n", "7", "--p", "0.5", "--seed", "11", "--empty", "include"], None);
    let b = ok(&["generate", "random", "--n", "7", "--p", "0.5", "--seed", "11", "--empty", "include"], None);
    assert_eq!(a, b);
    let path = dir.path().join("doc.json");
    std::fs::write(&path, &a).unwrap();
    let doc = hodge_complex::io::load(&path).unwrap();
    assert_eq!(hodge_complex::io::to_canonical_string(&doc), a);
}

#[test]
fn edge_laplacian_triplets() {
    let doc = ok(&["generate", "simplex", "--dim", "1"], None);
    let out = ok(&["laplacian", "--flavor", "up", "--dim", "0"], Some(&doc));
    assert_eq!(out, "0 0 1\n0 1 -1\n1 0 -1\n1 1 1\n");
}

#[test]
fn curvature_and_criteria_outputs() {
    let doc = ok(&["generate", "simplex", "--dim", "2"], None);
    let csv = ok(&["curvature"], Some(&doc));
    assert_eq!(csv.lines().next().unwrap(), "key,dim,m,c_plus,c_minus,c_H,forman,gamma_plus");
    assert_eq!(csv.lines().count(), 8);
    let json: Value =
        serde_json::from_str(&ok(&["criteria", "--boundedness", "--curvature", "--metric", "down", "--ball-radius", "2"], Some(&doc)))
            .unwrap();
    assert_eq!(json["boundedness"]["verdict"], "finite");
    assert!(json["metric"]["intrinsic"]["max_row_ratio"].as_f64().unwrap() <= 1.0 + 1e-12);
    assert_eq!(json["ball"]["count"], 3);
    let fan = ok(&["generate", "fan", "--n", "4"], None);
    let json: Value = serde_json::from_str(&ok(&["criteria", "--ball-radius", "1", "--budget", "500"], Some(&fan))).unwrap();
    assert_eq!(json["ball"]["budget_exceeded"], true);
}

#[test]
fn decompose_reports_betti() {
    let doc = ok(&["generate", "cycle", "--n", "5"], None);
    let json: Value = serde_json::from_str(&ok(&["decompose", "--dim", "1", "--samples", "10"], Some(&doc))).unwrap();
    assert_eq!(json["betti"], 1);
    assert_eq!(json["passed"], true);
}
