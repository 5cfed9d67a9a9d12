use twistcalc::run;

fn ok(args: &[&str]) -> String {
    let mut full = vec!["twistcalc"];
    full.extend_from_slice(args);
    let (code, out, err) = run(full);
    assert_eq!(code, 0, "{args:?}: {err}");
    out.trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    let mut full = vec!["twistcalc"];
    full.extend_from_slice(args);
    run(full).0
}

#[test]
fn command_examples() {
    assert_eq!(ok(&["dhat", "X1*X2", "--algebra", "heisenberg", "--ordering", "symmetric"]), "X2 dx1 + X1 dx2 + 1/2 dx3");
    assert_eq!(ok(&["dhat", "1"]), "0");
    assert_eq!(ok(&["dhat", "dx1*X2"]), "-dx1^dx2");
    assert_eq!(ok(&["star", "x1", "x2"]), "x1 x2 + 1/2 x3");
    assert_eq!(ok(&["commutator", "D1", "Xhat1"]), "1");
    assert_eq!(ok(&["--algebra", "abelian:2", "star", "x1", "x1"]), "x1^2");
    assert_eq!(ok(&["normal-form", "X2*X1"]), "X1 X2 - X3");
}

#[test]
fn phi_output() {
    let out = ok(&["phi", "--trunc", "4"]);
    assert!(out.contains("[3][1] = 1/2 D2"));
    assert!(out.contains("[3][2] = -1/2 D1"));
    assert!(out.contains("[1][1] = 1\n"));
    let abelian = ok(&["phi", "--algebra", "abelian:3"]);
    assert!(!abelian.contains('D'));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["dhat", "X1 +"]), 2);
    assert_eq!(code(&["dhat", "X9"]), 2);
    assert_eq!(code(&["--algebra", "nope", "phi"]), 2);
    assert_eq!(code(&["--trunc", "2", "--degree", "3", "phi"]), 2);
    assert_eq!(code(&["--ordering", "series:2,1", "phi"]), 2);
    assert_eq!(code(&["--ordering", "series:1,1,1", "verify"]), 1);
    assert_eq!(code(&["--trunc", "4", "--degree", "2", "verify"]), 0);
}

#[test]
fn parse_errors_report_a_column() {
    let (code, _, err) = run(["twistcalc", "dhat", "X1 + y2"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 6"), "{err}");
}

#[test]
fn user_series_verify_stops_after_phi() {
    let (code, out, _) = run(["twistcalc", "--ordering", "series:1,1,1", "--format", "json", "verify"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"][0]["check"], "phi_equation");
    assert_eq!(v["checks"][0]["pass"], false);
    assert!(!v["skipped"].as_array().unwrap().is_empty());
}

#[test]
fn algebra_file_and_out() {
    let dir = std::env::temp_dir().join(format!("twistcalc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let lie = twisted_calculus::StructureConstants::heisenberg().to_json();
    let path = dir.join("h.json");
    std::fs::write(&path, lie.to_string()).unwrap();
    let out_path = dir.join("out.txt");
    let p = path.to_str().unwrap();
    let o = out_path.to_str().unwrap();
    let (status, out, err) = run(["twistcalc", "--algebra-file", p, "--out", o, "dhat", "X1*X2"]);
    assert_eq!(status, 0, "{err}");
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&out_path).unwrap().trim(), "X2 dx1 + X1 dx2 + 1/2 dx3");
    assert_eq!(code(&["--algebra", "su2", "--algebra-file", p, "phi"]), 2);
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&["--algebra-file", p, "phi"]), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_results_carry_the_config() {
    let (_, out, _) = run(["twistcalc", "--algebra", "su2", "--format", "json", "star", "x1", "x2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["algebra"], "su2");
    assert_eq!(v["N"], 6);
    assert_eq!(v["D"], 4);
    assert_eq!(v["command"], "star");
}

#[test]
fn non_jacobi_algebra_is_rejected() {
    let dir = std::env::temp_dir().join(format!("twistcalc-jacobi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut lie = twisted_calculus::StructureConstants::su2();
    lie.set_bracket(0, 1, 0, twisted_calculus::rational::int(1));
    let path = dir.join("bad.json");
    std::fs::write(&path, lie.to_json().to_string()).unwrap();
    let (code, _, err) = run(["twistcalc", "--algebra-file", path.to_str().unwrap(), "phi"]);
    assert_ne!(code, 0);
    assert!(!err.is_empty());
    std::fs::remove_dir_all(&dir).ok();
}
