use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const LISTING: &str = include_str!("../../core/tests/fixtures/listing_25.txt");

fn boxkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxkit")).args(args).output().unwrap()
}

fn boxkit_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_boxkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn construct_p25_matches_listing() {
    let o = boxkit(&["construct", "p25"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), LISTING);
}

#[test]
fn verify_passes_and_fails_with_counterexample() {
    let o = boxkit_stdin(&["verify", "-", "--odd", "--proper"], LISTING);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let missing: String = LISTING.lines().take(24).map(|l| format!("{l}\n")).collect();
    let o = boxkit_stdin(&["verify", "-"], &missing);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("point (5,4,5)"));
    let o = boxkit_stdin(&["verify", "-", "--brick"], LISTING);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("is not a brick"));
}

#[test]
fn verify_piercing_reports_line() {
    let path = scratch("quadrant.txt");
    let o = boxkit(&["construct", "quadrant", "--d", "2", "--k", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(boxkit(&["verify", path.to_str().unwrap()]).status.code(), Some(0));
    let o = boxkit(&["verify", path.to_str().unwrap(), "--k", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line ("));
    let o = boxkit(&["graph", "--from-partition", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("vertices 12"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(boxkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(boxkit(&["verify", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(boxkit(&["construct", "quadrant", "--d", "2", "--k", "1"]).status.code(), Some(2));
    let o = boxkit_stdin(&["verify", "-"], "Box(1) = {1,1}\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn search_exit_codes() {
    let o = boxkit(&["search", "--ambient", "5,5", "--candidates", "odd-proper-brick"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("Box(")).count(), 9);
    assert!(stderr(&o).contains("(optimal)"));
    let o = boxkit(&["search", "--ambient", "5,5,5", "--max-nodes", "50"]);
    assert_eq!(o.status.code(), Some(3));
    let o = boxkit(&["search", "--ambient", "3", "--candidates", "odd-proper-box", "--t", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn export_lp_text() {
    let o = boxkit(&["export", "--ambient", "3", "--candidates", "odd-proper-box", "--format", "lp"]);
    assert_eq!(
        stdout(&o),
        "Minimize\n obj: x_1 + x_2 + x_3\nSubject To\n p_1: x_1 = 1\n p_2: x_2 = 1\n p_3: x_3 = 1\nBinary\n x_1 x_2 x_3\nEnd\n"
    );
    let o = boxkit(&["export", "--ambient", "3", "--t", "2", "--format", "cnf"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_and_graphs() {
    let o = boxkit(&["bounds", "root", "--coeffs", "0,13,9"]);
    assert!(stdout(&o).starts_with("root 3.9116"));
    let o = boxkit(&["bounds", "piercing", "--d", "3", "--k", "3"]);
    let out = stdout(&o);
    assert!(out.contains("= 20") && out.contains("= 27"), "{out}");
    let o = boxkit(&["bounds", "table", "--d", "1..3", "--k", "3", "--csv"]);
    assert!(stdout(&o).starts_with("name,d,k,n,value\n"));
    let o = boxkit(&["graph", "--fig9", "5", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("vertices 16"));
    let o = boxkit(&["graph", "--fig9", "5", "--k", "6", "--check"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn render_and_json_round_trip() {
    let o = boxkit_stdin(&["render", "-"], LISTING);
    assert_eq!(stdout(&o).matches("layer").count(), 5);
    let json = stdout(&boxkit(&["construct", "grid", "--d", "2", "--k", "3", "--as", "json"]));
    assert!(json.starts_with(r#"{"ambient":[3,3],"#));
    let svg = stdout(&boxkit_stdin(&["render", "-", "--format", "svg"], &json));
    assert_eq!(svg.matches("<rect").count(), 9);
    let o = boxkit_stdin(&["render", "-", "--format", "svg"], LISTING);
    assert_eq!(o.status.code(), Some(2));
}
