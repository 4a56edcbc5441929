use rankharm::element::Element;
use rankharm::heisenberg::HeisQuad;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const DELTA_Z0: &str = r#"{"schema":"rank2fn","alpha":[0,"-inf"],"staircase":{"slope":0,"intercept":0,"exceptions":[]},"klo":0,"slots":[],"below":"staircase"}"#;
const DELTA_POINT: &str = r#"{"schema":"rank2dist","alpha":[0,"-inf"],"terms":[{"k":0,"g":{"k":0,"start":1,"middle":[],"lower":[["1","1"]],"upper":[["[[0,1]]/[[1,1]]","1"]]},"lambda":{"alpha":[0,"-inf"],"beta":[1,"-inf"],"c":"1"}}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rankharm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

fn fixture(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verify_passes_with_exit_zero() {
    let o = run(&["verify", "--suite", "heisenberg-laws", "--size", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("PASS associativity")));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_json_is_a_report() {
    let o = run(&["verify", "--suite", "torsor-oracle", "--size", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "torsor-oracle");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["heis", "mul", "[1,2,3]"]).status.code(), Some(2));
    assert_eq!(run_stdin(&["fourier", "--gamma", "[0,0]"], "{}").status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_command_runs() {
    let o = run(&["oracle", "--p", "3", "--M", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(run(&["oracle", "--p", "6"]).status.code(), Some(2));
}

#[test]
fn characteristic_function_pairs_to_one() {
    let q = fixture("cli_z0.json", DELTA_Z0);
    let s = fixture("cli_point.json", DELTA_POINT);
    let o = run(&["pair", "--in", q.to_str().unwrap(), s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "\"1\"");
    let o = run(&["pair", "--in", q.to_str().unwrap(), q.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fourier_twice_is_identity() {
    let once = run_stdin(&["fourier", "--gamma", "[1,2]", "--alpha", "[0,\"-inf\"]"], DELTA_Z0);
    assert_eq!(once.status.code(), Some(0));
    let twice = run_stdin(&["fourier", "--gamma", "[1,2]"], &stdout(&once));
    assert_eq!(Element::parse(&stdout(&twice)).unwrap(), Element::parse(DELTA_Z0).unwrap());
    let wrong = run_stdin(&["fourier", "--gamma", "[1,2]", "--alpha", "[3,1]"], DELTA_Z0);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn act_preserves_pairing() {
    let moved_q = stdout(&run_stdin(&["act", "--by", "[1,2,-1,1]"], DELTA_Z0));
    let moved_s = stdout(&run_stdin(&["act", "--by", "[1,2,-1,1]"], DELTA_POINT));
    let q = fixture("cli_moved_q.json", &moved_q);
    let s = fixture("cli_moved_s.json", &moved_s);
    let o = run(&["pair", "--in", s.to_str().unwrap(), q.to_str().unwrap()]);
    assert_eq!(stdout(&o), "\"1\"");
}

#[test]
fn heisenberg_operations() {
    let x = HeisQuad::new(1, 2, 3, 4);
    let y = HeisQuad::new(-1, 0, 2, 1);
    let parse = |o: Output| serde_json::from_str::<HeisQuad>(&stdout(&o)).unwrap();
    assert_eq!(parse(run(&["heis", "mul", "[1,2,3,4]", "[-1,0,2,1]"])), x.mul(&y));
    assert_eq!(parse(run(&["heis", "inv", "[1,2,3,4]"])), x.inverse());
    assert_eq!(parse(run(&["heis", "comm", "[1,2,3,4]", "[-1,0,2,1]"])), x.commutator(&y));
    let ext = stdout(&run(&["heis", "iso", "[1,2,3,4]"]));
    let back = run(&["heis", "iso", "--repr", "ext", &ext]);
    assert_eq!(parse(back), x);
}

#[test]
fn output_file_is_written() {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli_report.json");
    let o = run(&["verify", "--suite", "normal-form", "--size", "5", "--json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["suite"], "normal-form");
}
