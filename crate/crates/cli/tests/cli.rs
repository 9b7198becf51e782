use std::process::{Command, Output};

use serde_json::Value;

fn rinfty(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rinfty")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = rinfty(&full);
    let code = out.status.code().expect("exit code");
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (code, value)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn check_named<'a>(result: &'a Value, needle: &str) -> &'a Value {
    result["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().contains(needle))
        .unwrap_or_else(|| panic!("no check containing '{needle}'"))
}

#[test]
fn gw_case_reports_fix_of_order_two() {
    let (code, v) = json(&["case", "gw", "--b", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "case gw");
    assert_eq!(v["ok"], true);
    let fix = check_named(&v["result"], "|Fix(phi^ab)|");
    assert_eq!(fix["passed"], true);
    assert!(fix["detail"].as_str().unwrap().starts_with("2 "));
    assert!(v["result"]["checks"].as_array().unwrap().iter().all(|c| c["basis"].is_string()));
}

#[test]
fn lm4_passes_where_it_applies() {
    let (code, v) = json(&["lm", "relations", "--s", "0", "--t", "1", "--depth", "12"]);
    assert_eq!(code, 0);
    let yg_y = v["result"]["groups"].as_array().unwrap().iter().find(|g| g["variant"] == "yGy").unwrap();
    let lm4 = yg_y["outcomes"].as_array().unwrap().iter().find(|o| o["relation"] == "LM4").unwrap();
    assert_eq!(lm4["status"], "passed");
}

#[test]
fn x0_is_in_thompsons_group() {
    let out = rinfty(&["pl", "member", "--spec", "1 Z[1/2] <2>", "--map", "x0"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "true");

    let lit = "pl ell=1 breaks=[1/2,3/4] slopes=[1/2,1,2]";
    let (_, v) = json(&["pl", "member", "--spec", "1 Z[1/2] <2>", "--map", lit]);
    assert_eq!(v["result"]["member"], true);
    let (_, v) = json(&["pl", "member", "--spec", "1 Z[1/2] <2>", "--map", "pl ell=1 breaks=[1/3] slopes=[2,1/2]"]);
    assert_eq!(v["result"]["member"], false);
    assert_eq!(v["result"]["violations"][0]["clause"], "singularity");
}

#[test]
fn parse_errors_exit_with_two_and_point_at_the_problem() {
    let out = rinfty(&["reid", "snf", "--matrix", "[[1,2],[3]]"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("position"), "{err}");
    assert!(err.contains('^'), "{err}");

    let out = rinfty(&["pl", "invert", "--map", "pl ell=1 breaks=[1/2] slopes=[2]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rinfty(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rinfty(&["sigma", "ball", "--group", "Z", "--radius", "99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_checks_exit_with_one() {
    // The printed conjugation formula has a wrong entry.
    let (code, v) = json(&["case", "sl2", "--bound", "100", "--samples", "50"]);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
    let (code, _) = json(&["reid", "tecnico", "--chars", "[[1,0],[0,1]]", "--matrix", "[[-1,0],[0,-1]]"]);
    assert_eq!(code, 1);
}

#[test]
fn tree_pair_arithmetic() {
    let out = rinfty(&["f", "multiply", "x0", "x0'"]);
    assert_eq!(out.status.code(), Some(2), "x0' is not a literal");
    let (_, v) = json(&["f", "chars", "x0"]);
    assert_eq!((v["result"]["chi0"].as_i64(), v["result"]["chi1"].as_i64()), (Some(-1), Some(1)));
    let (_, inv) = json(&["f", "inverse", "x1"]);
    let (_, prod) = json(&["f", "multiply", "x1", inv["result"]["tree_pair"].as_str().unwrap()]);
    assert_eq!(prod["result"]["leaves"], 1);
    let (_, pl) = json(&["f", "to-pl", "x0"]);
    let (_, back) = json(&["f", "from-pl", pl["result"]["map"].as_str().unwrap()]);
    let (_, x0) = json(&["f", "reduce", "x0"]);
    assert_eq!(back["result"], x0["result"]);
}

#[test]
fn braided_diagrams() {
    let (_, v) = json(&["fbr", "braid-equal", "--strands", "3", "s1 s2 s1", "s2 s1 s2"]);
    assert_eq!(v["result"]["equal"], true);
    let (_, v) = json(&["fbr", "braid-equal", "--strands", "2", "s1 s1", ""]);
    assert_eq!(v["result"]["equal"], false);
    let (_, v) = json(&["fbr", "generators"]);
    assert_eq!(v["result"].as_array().unwrap().len(), 10);
    let (_, v) = json(&["fbr", "chars", "((..).) |  | (.(..))"]);
    assert_eq!((v["result"]["phi0"].as_i64(), v["result"]["phi1"].as_i64()), (Some(-1), Some(1)));
}

#[test]
fn reidemeister_commands() {
    let (_, v) = json(&["reid", "fix", "--moduli", "2,0,0", "--matrix", "[[-1,0,0],[0,-1,0],[0,0,-1]]"]);
    assert_eq!(v["result"]["order"], 2);
    assert_eq!(v["result"]["elements"].as_array().unwrap().len(), 2);
    let (_, v) = json(&["reid", "number", "--matrix", "[[-1,0],[0,-1]]"]);
    assert_eq!(v["result"]["reidemeister"], 4);
    let (_, v) = json(&["reid", "number", "--matrix", "[[1]]"]);
    assert_eq!(v["result"]["reidemeister"], "infinite");
    let (code, v) = json(&["reid", "oracle", "--moduli", "3,9", "--matrix", "[[1,0],[3,1]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["agree"], true);
    let (_, v) = json(&["reid", "oracle", "--group", "S3"]);
    assert_eq!(v["result"]["automorphisms"].as_array().unwrap().len(), 6);
    let (_, v) = json(&["reid", "tecnico", "--case", "1", "--swap"]);
    assert!(v["result"]["certificate"]["fixed_vector"].is_array());
    let (_, v) = json(&["reid", "independence", "--values", "[[1,2],[2,4]]"]);
    assert_eq!(v["result"]["independence"]["independent"], false);
}

#[test]
fn csv_tables_are_read_from_files() {
    let dir = std::env::temp_dir().join(format!("rinfty-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c3.csv");
    std::fs::write(&path, "0,1,2\n1,2,0\n2,0,1\n").unwrap();
    let (code, v) = json(&["reid", "oracle", "--table", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 3);
    std::fs::write(&path, "0,1\n1,1\n").unwrap();
    let out = rinfty(&["reid", "oracle", "--table", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sigma_exploration() {
    let (_, v) = json(&["sigma", "ball", "--group", "F", "--radius", "2", "--char", "chi0"]);
    assert_eq!(v["result"]["ball_sizes"], serde_json::json!([1, 5, 17]));
    assert!(v["result"]["components"]["count"].as_u64().unwrap() >= 1);
    let (_, v) = json(&["sigma", "components", "--group", "Z^2", "--radius", "4", "--char", "-e2*"]);
    assert_eq!(v["result"]["components"]["count"], 1);
    let out = rinfty(&["sigma", "ball", "--group", "GW:2", "--radius", "2", "--char", "chi0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = rinfty(&["case", "sl2", "--bound", "50", "--samples", "20", "--seed", "7"]);
    let b = rinfty(&["case", "sl2", "--bound", "50", "--samples", "20", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}
