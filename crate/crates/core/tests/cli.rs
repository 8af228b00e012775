use std::process::{Command, Output};

use serde_json::{json, Value};

fn fml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmlattice"))
        .args(args)
        .env_remove("FMLATTICE_SEARCH_CEILING")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = fml(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

const EX2: [&str; 8] = ["--kind", "k3", "--r0", "2", "--d0", "-1", "--k", "3"];

fn with_ex2<'a>(rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = EX2.to_vec();
    v.extend_from_slice(rest);
    v
}

#[test]
fn theorem_headline_and_json_agree() {
    let o = fml(&with_ex2(&["theorem", "1,1,3"]));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("case=FM target=3,-1,1"));
    let j = json_of(&with_ex2(&["theorem", "1,1,3"]));
    assert_eq!(j["command"], "theorem");
    assert_eq!(j["inputs"]["v"], json!([1, 1, 3]));
    assert_eq!(j["outputs"]["case"], "FM");
    assert_eq!(j["outputs"]["target"], json!([3, -1, 1]));
    let raw: Vec<String> = j["outputs"]["raw_image"]
        .as_array()
        .unwrap()
        .iter()
        .map(ToString::to_string)
        .collect();
    assert!(text.contains(&format!("raw_image={}", raw.join(","))));
    assert!(!j["assumptions"].as_array().unwrap().is_empty());
    for a in j["assumptions"].as_array().unwrap() {
        assert!(text.contains(&format!("assume: {}", a.as_str().unwrap())));
    }
}

#[test]
fn scalar_commands_print_bare_values() {
    let o = fml(&["--kind", "k3", "--lsq", "12", "pair", "2,-1,3", "2,-1,3"]);
    assert_eq!(stdout(&o), "0\n");
    let o = fml(&["dual", "3,-2,5"]);
    assert_eq!(stdout(&o), "3,2,5\n");
    let o = fml(&["--kind", "k3", "--lsq", "12", "hilb", "1,1,3"]);
    assert_eq!(stdout(&o), "4\n");
    let o = fml(&["--kind", "k3", "--lsq", "12", "dim", "1,1,3"]);
    assert_eq!(stdout(&o), "8\n");
    let o = fml(&["--lsq", "12", "twist", "1,0,0", "-2"]);
    assert_eq!(stdout(&o), "1,-2,24\n");
}

#[test]
fn flags_may_follow_the_subcommand() {
    let a = fml(&["pair", "--lsq", "12", "--kind", "k3", "1,0,1", "1,0,1"]);
    assert_eq!(stdout(&a), "-2\n");
}

#[test]
fn domain_errors_exit_one() {
    let o = fml(&with_ex2(&["theorem", "2,1,1"]));
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("deg_G1(v)=0 ≠ 1"), "{}", stderr(&o));
    let o = fml(&["--lsq", "12", "reflect", "1,0,0", "1,0,0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = fml(&["--r0", "2", "--d0", "2", "--k", "1", "setup"]);
    assert_eq!(o.status.code(), Some(1));
    let o = fml(&["--lsq", "7", "pair", "1,0,0", "1,0,0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let o = fml(&["--lsq", "12", "pair", "1,0,zz", "1,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1,0,zz"));
    assert_eq!(fml(&["square", "1,0,0"]).status.code(), Some(2));
    assert_eq!(
        fml(&["--kind", "enriques", "dual", "1,0,0"]).status.code(),
        Some(2)
    );
    assert_eq!(fml(&[]).status.code(), Some(2));
    assert_eq!(fml(&["--help"]).status.code(), Some(0));
}

#[test]
fn search_honors_environment_ceiling() {
    let args = with_ex2(&["search", "--bound", "3"]);
    let o = Command::new(env!("CARGO_BIN_EXE_fmlattice"))
        .args(&args)
        .env("FMLATTICE_SEARCH_CEILING", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("ceiling"));
    let o = fml(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1,1,3 case=FM target=3,-1,1"), "{text}");
    let j = json_of(&args);
    let count = j["outputs"]["count"].as_u64().unwrap();
    assert_eq!(
        j["outputs"]["results"].as_array().unwrap().len() as u64,
        count
    );
    assert_eq!(text.lines().next(), Some(format!("count={count}").as_str()));
}

#[test]
fn setup_matrix_in_json() {
    let j = json_of(&with_ex2(&["setup"]));
    assert_eq!(j["outputs"]["d1"], 1);
    assert_eq!(j["outputs"]["l"], -2);
    assert_eq!(j["outputs"]["det"], 1);
    assert_eq!(j["outputs"]["matrix"].as_array().unwrap().len(), 3);
}

#[test]
fn fm_and_inverse_round_trip() {
    let img = fml(&with_ex2(&["fm", "5,-7,11"]));
    let w = stdout(&img).trim().to_string();
    let back = fml(&with_ex2(&["inverse", &w]));
    assert_eq!(stdout(&back), "5,-7,11\n");
}

#[test]
fn chern_both_directions() {
    let o = fml(&["--kind", "k3", "--lsq", "12", "chern", "2", "1", "-3"]);
    let w = stdout(&o).trim().to_string();
    let o = fml(&["--kind", "k3", "--lsq", "12", "chern", "--invert", &w]);
    assert_eq!(stdout(&o), "rank=2 c1=1 c2=-3\n");
    assert_eq!(
        fml(&["--lsq", "12", "chern", "2", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn examples_replay() {
    let o = fml(&["example2"]);
    assert!(stdout(&o).starts_with("source=1,1,3 fm_image=3,-1,1 target=1,1,3\n"));
    let j = json_of(&["example2"]);
    assert_eq!(j["outputs"]["steps"].as_array().unwrap().len(), 7);
    let j = json_of(&[
        "--kind", "k3", "--r0", "2", "example1", "--n", "1", "--s", "1",
    ]);
    assert_eq!(j["outputs"]["case"], "FM");
    assert_eq!(j["outputs"]["target"], json!([1, 1, 1]));
}

#[test]
fn verify_paper_lists_checks() {
    let o = fml(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("checks="));
    assert!(text.lines().skip(1).all(|l| l.starts_with("PASS ")));
    let o = fml(&["verify-paper", "--override", "no such check=1"]);
    assert_eq!(o.status.code(), Some(2));
}
