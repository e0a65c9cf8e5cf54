use std::path::PathBuf;
use std::process::{Command, Output};

use ajcable_core::grid::{default_grid, render_grid};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ajcable")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

#[test]
fn torus_jones_text() {
    let o = run(&["jones", "torus", "-p", "3", "-q", "2", "-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "t^-2 + t^-6 + t^-10 - t^-18");
}

#[test]
fn verify_json_passes() {
    let o = run(&["--format", "json", "verify", "-p", "3", "-q", "2", "-r", "13", "-s", "2", "--nmax", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc = json(&o);
    assert_eq!(doc["meta"]["tool"], "ajcable");
    assert_eq!(doc["meta"]["command"], "verify");
    let r = &doc["results"][0];
    assert_eq!(r["annihilates"], true);
    assert_eq!(r["aj_match"], true);
    assert_eq!(r["L_degree"], 3);
    assert_eq!(r["passed"], true);
}

#[test]
fn json_round_trips_byte_for_byte() {
    let o = run(&["--format", "json", "annihilator", "-p", "5", "-q", "3", "-r", "-1", "-s", "3", "--eval-t-neg1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let again = serde_json::to_string_pretty(&json(&o)).unwrap();
    assert_eq!(text.trim_end(), again);
}

#[test]
fn text_and_json_verdicts_agree() {
    for r in ["-7", "13"] {
        let base = ["verify", "-p", "3", "-q", "2", "-r", r, "-s", "2", "--nmax", "6"];
        let text = run(&base);
        let mut args = vec!["--format", "json"];
        args.extend(base);
        let js = run(&args);
        assert_eq!(text.status.code(), js.status.code());
        let passed = json(&js)["results"][0]["passed"].as_bool().unwrap();
        let verdict = if passed { "verdict: pass" } else { "verdict: FAIL" };
        assert!(stdout(&text).contains(verdict), "{}", stdout(&text));
    }
}

#[test]
fn inapplicable_r_warns_but_passes() {
    let o = run(&["verify", "-p", "3", "-q", "2", "-r", "5", "-s", "2", "--nmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning: r strictly between 0 and pqs"));
}

#[test]
fn bad_input_exits_1() {
    assert_eq!(run(&["verify", "-p", "3", "-q", "2", "-r", "4", "-s", "2"]).status.code(), Some(1));
    assert_eq!(run(&["jones", "torus", "-p", "2", "-q", "4", "-n", "3"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn failed_check_exits_2() {
    // At the constructed L-degree with M-span 0 nothing is found, which
    // contradicts the existence of the constructed annihilator.
    let o = run(&["minimality", "-p", "3", "-q", "2", "-r", "13", "-s", "2", "--ldeg", "3", "--mspan", "0"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("no annihilator within bounds"));
}

#[test]
fn minimality_screen_finds_nothing_below() {
    let o = run(&["minimality", "-p", "3", "-q", "2", "-r", "13", "-s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("L-degree 2 (screen"));
    assert!(stdout(&o).contains("no annihilator within bounds"));
}

fn grid_file(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn small_grid_file() {
    let path = grid_file("small.grid", "# p q r s\n3 2 -1 2\n5 3 -1 3\n\n-3 2 1 2\n");
    let o = run(&["grid", "--grid", path.to_str().unwrap(), "--nmax", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.trim_end().ends_with("3/3 tuples pass"), "{out}");

    let o = run(&["--format", "json", "grid", "--grid", path.to_str().unwrap(), "--nmax", "6"]);
    let rows = json(&o)["results"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["row_passed"] == true));
    assert!(rows[0]["minimality"].is_object());
}

#[test]
fn malformed_grid_exits_1() {
    let path = grid_file("bad.grid", "3 2 -1\n");
    let o = run(&["grid", "--grid", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
}

#[test]
fn shipped_grid_is_the_default() {
    let shipped = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/grids/default.grid")).unwrap();
    assert_eq!(shipped, render_grid(&default_grid()));
}
