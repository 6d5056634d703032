use std::path::PathBuf;
use std::process::{Command, Output};

const R2: &str = "n=x+y & x<y & T[x]=@0 & T[y]=@0";

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autoseq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_slice(&run(&all).stdout).expect("valid JSON")
}

#[test]
fn eval_reports_states_and_free_variables() {
    let o = run(&["eval", R2]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "12 states, free variables n,x,y");
}

#[test]
fn eval_decides_sentences() {
    assert!(stdout(&run(&["eval", "A n: E x: x>n & T[x]=@1"])).contains("TRUE"));
    assert!(stdout(&run(&["eval", "E x: T[x]=@2"])).contains("FALSE"));
}

#[test]
fn eval_save_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r2.dot");
    let o = run(&["eval", R2, "--save", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("digraph"));
}

#[test]
fn count_minimize_and_save_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r2.txt");
    let p = path.to_str().unwrap();
    let v = json(&["count", "r2a", "n", R2, "--minimize", "--save", p, "--pad", "2"]);
    assert_eq!(v["rank"], 12);
    assert_eq!(v["minimized_rank"], 5);
    assert_eq!(v["padding_stable"], true);
    let cmp = run(&["compare", p, &fixture("r2_minimal.txt")]);
    assert_eq!(stdout(&cmp).trim(), "EQUAL");
}

#[test]
fn count_rejects_bound_index() {
    let o = run(&["count", "r", "n", "E n: n=x+y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not free"));
}

#[test]
fn values_match_oracle() {
    let o = run(&["values", &fixture("r2_minimal.txt"), "0", "200", "--oracle", "R2:A", "--pad", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains("MISMATCH") && !text.contains("CHANGED"));
    assert_eq!(text.lines().count(), 201);
}

#[test]
fn values_flag_oracle_mismatch() {
    let o = run(&["values", &fixture("r2_minimal.txt"), "0", "20", "--oracle", "R2:C"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn compare_gives_least_witness() {
    let v = json(&["compare", &fixture("r2_minimal.txt"), &fixture("r3_shifted_minimal.txt")]);
    assert_eq!(v["equal"], false);
    assert_eq!(v["witness"], 1);
}

#[test]
fn load_binds_representations_by_name() {
    let spec = format!("F={}", fixture("r2_minimal.txt"));
    let o = run(&["--load", &spec, "values", "F", "9", "9"]);
    assert_eq!(stdout(&o).trim(), "9 2");
}

#[test]
fn builtin_rebinding_needs_force() {
    let tt = fixture("TT.txt");
    assert_eq!(run(&["def", "T", &tt]).status.code(), Some(2));
    assert!(run(&["--force", "def", "T", &tt]).status.success());
    assert!(run(&["def", "U", &tt]).status.success());
    assert_eq!(run(&["def", "lower", &tt]).status.code(), Some(2));
}

#[test]
fn minpoly_lists_rational_roots() {
    let v = json(&["minpoly", &fixture("r2_minimal.txt"), "0"]);
    assert_eq!(v["polynomial"], "X^4 - X^3 - 4*X^2 + 4*X");
    assert_eq!(v["factorization"]["remainder"], "1");
    assert_eq!(run(&["minpoly", &fixture("r2_minimal.txt"), "2"]).status.code(), Some(2));
}

#[test]
fn closedform_for_all_ones() {
    let o = run(&["closedform", &fixture("r2_minimal.txt"), "1^t", "--upto", "12"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("closed form: 1/8*(-2)^t + 1/8*2^t for t >= 1"));
    assert!(text.contains("\n12 1024\n") || text.trim_end().ends_with("12 1024"));
}

#[test]
fn dominant_checks_expected_limit() {
    let dir = tempfile::tempdir().unwrap();
    let sums = dir.path().join("sums.txt");
    let zero = dir.path().join("zero.txt");
    assert!(run(&["count", "s", "n", "n=x+y", "--save", sums.to_str().unwrap()]).status.success());
    std::fs::write(&zero, "base 2\nrank 0\nu:\ngamma 0:\ngamma 1:\nv:\n").unwrap();
    let (a, z) = (sums.to_str().unwrap(), zero.to_str().unwrap());
    let v = json(&["dominant", a, z, "1^t", "2", "20", "--expect", "1"]);
    assert_eq!(v["stabilized"], true);
    assert_eq!(v["n0"], 0);
    assert_eq!(v["coefficient"], "1");
    assert_eq!(v["matches_expected"], true);
    assert_eq!(run(&["dominant", a, z, "1^t", "2", "20", "--expect", "2"]).status.code(), Some(1));
}

#[test]
fn scan_monotone_lists_violations() {
    let v = json(&["scan-monotone", &fixture("r2_minimal.txt"), "0", "10"]);
    assert_eq!(v["violations"], serde_json::json!([0, 1, 3, 5, 6, 9, 10]));
}

#[test]
fn reproduce_evil_pairs_passes() {
    let o = run(&["reproduce", "dombi"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
}

#[test]
fn reproduce_rejects_unknown_target() {
    assert_eq!(run(&["reproduce", "nope"]).status.code(), Some(2));
}

#[test]
fn export_dot_for_sequence_and_formula() {
    assert!(stdout(&run(&["export-dot", "TT", "--sequence"])).starts_with("digraph"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.dot");
    let o = run(&["export-dot", "x<y", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&path).unwrap().contains("->"));
}

#[test]
fn malformed_representation_reports_line() {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), "base 2\nrank 1\nu: 1\ngamma 0:\n1 x\n").unwrap();
    let o = run(&["values", f.path().to_str().unwrap(), "0", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}
