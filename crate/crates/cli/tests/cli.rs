use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hesse-lab")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hesse-lab")).args(args).env(key, val).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_hesse-lab"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn derive_parameter_sequences() {
    let o = run(&["derive", "--hesse-c", "0", "--iterations", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_lines(&o)[0]["sequence"], serde_json::json!(["∞"]));
    let o = run(&["derive", "--hesse-c", "6", "--iterations", "2"]);
    assert_eq!(json_lines(&o)[0]["sequence"], serde_json::json!(["-3", "-3"]));
    let o = run(&["derive", "--hesse-c", "1/2", "--iterations", "1"]);
    assert_eq!(json_lines(&o)[0]["sequence"], serde_json::json!(["-865/6"]));
}

#[test]
fn derive_cubic_forms() {
    let gamma11 = r#"{"monomials":{"x3":"1","xy2":"3","x2z":"3","z3":"-1"}}"#;
    let o = run_stdin(&["derive", "--input", "-"], gamma11);
    assert_eq!(code(&o), 0);
    let m = &json_lines(&o)[0]["cubic"]["monomials"];
    assert_eq!((m["x3"].as_str(), m["x2z"].as_str(), m["xz2"].as_str(), m["y2z"].as_str()), (Some("1"), Some("1"), Some("1"), Some("-1")));
    let o = run_stdin(&["derive", "--input", "-"], r#"{"monomials":{"x3":"1"}}"#);
    assert_eq!(code(&o), 2);
    let o = run_stdin(&["derive", "--input", "-"], r#"{"monomials":{"w3":"1"}}"#);
    assert_eq!(code(&o), 1);
}

#[test]
fn count_tables() {
    let o = run(&["counts", "--max-n", "16", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let row16 = out.lines().find(|l| l.starts_with("16,")).unwrap();
    assert_eq!(row16.split(',').nth(4), Some("810"));
    let row5 = out.lines().find(|l| l.starts_with("5,")).unwrap();
    assert!(row5.starts_with("5,17,1,9,"));
}

#[test]
fn count_table_oracle_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.csv");
    let o = run(&["counts", "--max-n", "6", "--oracle-max", "6", "--format", "json", "--csv", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["agree"] == Value::Bool(true)));
    assert!(rows.iter().all(|r| r["reports"].as_array().unwrap().iter().all(|c| c["agreement"] == Value::Bool(true))));
    assert!(std::fs::read_to_string(path).unwrap().starts_with("n,chi,phi,rho,lambda"));
}

#[test]
fn oracle_budget_from_environment() {
    let o = run_env(&["counts", "--max-n", "6", "--oracle-max", "4"], "HESSE_LAB_NMAX", "3");
    assert_eq!(code(&o), 2);
    let o = run_env(&["counts", "--max-n", "6", "--oracle-max", "7"], "HESSE_LAB_NMAX", "99");
    assert_eq!(code(&o), 2);
    let o = run_env(&["chains", "--n", "3"], "HESSE_LAB_NMAX", "2");
    assert_eq!(code(&o), 2);
}

#[test]
fn theorem_seven() {
    let o = run(&["verify-thm7", "--a", "0", "--b=-1", "--x0", "4"]);
    assert_eq!(code(&o), 0);
    let r = &json_lines(&o)[0];
    assert_eq!(r["status"], "PASS");
    let s = &r["points"]["s"];
    assert!((s["x"][0].as_f64().unwrap() + 0.25).abs() < 1e-12);
    assert!((s["y"][0].as_f64().unwrap() - 60f64.sqrt() / 16.0).abs() < 1e-12);
    for seed in ["1", "2", "3"] {
        let o = run(&["verify-thm7", "--a", "0", "--b", "3+2*sqrt3", "--seed", seed]);
        assert_eq!(code(&o), 0, "seed {seed}");
        assert_eq!(json_lines(&o)[0]["status"], "PASS");
    }
    let o = run(&["verify-thm7", "--a", "0", "--b=-1", "--x0", "0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("pole at x0=0"));
    let o = run(&["verify-thm7", "--a", "1", "--b", "0", "--x0", "2"]);
    assert_eq!(code(&o), 2);
    let o = run(&["verify-thm7", "--a", "x", "--b", "1", "--x0", "2"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn plots() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("g.svg");
    let o = run(&["plot", "--hesse-c=-4", "--window=-4,4,-4,4", "--resolution", "512", "--out", svg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_lines(&o)[0]["layers"][0][1], 2);

    let caption = "2*sqrt3,0,9+9*sqrt3,-6*sqrt3,0,0,0,9+9*sqrt3,0,-9";
    let o = run(&["plot", "--coeffs", caption, "--with-derivative", "--window=-21,14,-12,11"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("<g id=\"curve\"") && text.contains("<g id=\"derivative\""));
    let again = run(&["plot", "--coeffs", caption, "--with-derivative", "--window=-21,14,-12,11"]);
    assert_eq!(o.stdout, again.stdout);

    let o = run(&["plot", "--hesse-c", "inf", "--format", "csv", "--resolution", "64"]);
    assert_eq!(code(&o), 0);
    let tol = 8.0 / 64.0;
    for line in stdout(&o).lines().skip(1) {
        let f: Vec<f64> = line.split(',').skip(2).map(|v| v.parse().unwrap()).collect();
        assert!(f[0].abs() <= tol || f[1].abs() <= tol, "{line}");
    }

    let o = run(&["plot", "--hesse-c", "1", "--window", "9,11,9,11", "--format", "csv"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "layer,path,x,y\n");
    let o = run(&["plot", "--hesse-c", "1", "--resolution", "8"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn loops_chains_orbits() {
    let o = run(&["loops", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let l = json_lines(&o);
    assert_eq!(l.len(), 1);
    let v: Vec<f64> = l[0]["values"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!((v[0] + 8.19615).abs() < 1e-5 && (v[1] - 2.19615).abs() < 1e-5);
    let o = run(&["loops", "--n", "8"]);
    assert_eq!(json_lines(&o).len(), 18);
    let o = run(&["loops", "--n", "12"]);
    assert_eq!(code(&o), 2);

    let o = run(&["chains", "--target", "minus3", "--n", "3"]);
    assert_eq!(json_lines(&o).len(), 3);
    let o = run(&["chains", "--target", "infinity", "--n", "4"]);
    assert_eq!(json_lines(&o).len(), 3);
    let o = run(&["chains", "--target", "sideways", "--n", "4"]);
    assert_eq!(code(&o), 1);
    let o = run(&["chains", "--witness", "1000"]);
    assert!(json_lines(&o)[0]["c"].as_f64().unwrap().abs() > 1000.0);

    let o = run(&["orbit", "--c0", "0", "--max-steps", "3"]);
    let r = &json_lines(&o)[0];
    assert_eq!(r["states"], serde_json::json!(["0", "∞"]));
    assert_eq!(r["terminal"]["kind"], "FIXED_INFINITY");
    let o = run(&["orbit", "--c0=-3"]);
    assert_eq!(json_lines(&o)[0]["terminal"], serde_json::json!({"kind": "FIXED_MINUS3", "at": 0}));
}

#[test]
fn halving_and_conversions() {
    let o = run(&["halve", "--a", "0", "--b=-1", "--x0", "4"]);
    assert_eq!(code(&o), 0);
    let q = json_lines(&o);
    assert_eq!(q.len(), 4);
    assert!(q.iter().all(|l| l["status"] == "PASS"));
    let o = run(&["halve", "--a", "0", "--b=-1", "--x0", "0"]);
    assert_eq!(code(&o), 2);

    let o = run(&["convert", "wnf", "--q=-1/2-1/2*sqrt3"]);
    let w = &json_lines(&o)[0]["exact"];
    assert_eq!((w["c"].as_str(), w["a"].as_str(), w["b"].as_str()), (Some("-3+3*sqrt3"), Some("0"), Some("3+2*sqrt3")));
    let o = run(&["convert", "wnf", "--q", "1"]);
    assert_eq!(json_lines(&o)[0]["exact"]["degenerate"], true);
    let o = run(&["convert", "wnf", "--q", "0"]);
    assert_eq!(code(&o), 2);
    let o = run(&["convert", "d3", "--c=-3"]);
    assert_eq!(code(&o), 2);
    let o = run(&["convert", "d3", "--c", "6"]);
    assert_eq!(json_lines(&o)[0]["exact"][2], "0");
    let o = run(&["convert", "loop2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_lines(&o)[0]["pass"], true);
}
