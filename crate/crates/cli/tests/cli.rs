use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_queen-cover"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(out)))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("queen-cover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn construct_nine_on_eleven() {
    let out = run(&["construct", "--k", "9", "--n", "11"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["n"], 11);
    assert_eq!(v["queens"].as_array().unwrap().len(), 9);
    assert_eq!(v["stats"]["covered"], 89);
    assert_eq!(v["stats"]["attacked"], 80);
    assert_eq!(v["stats"]["m_star"], 10);
    assert_eq!(v["stats"]["strategy"], "nine");
}

#[test]
fn tables_row_eighteen() {
    let out = run(&["tables", "--max-m", "20"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.starts_with("m,G,F,source\n"));
    assert!(csv.lines().any(|l| l.starts_with("18,28,")), "{csv}");
    assert_eq!(csv.lines().count(), 20);

    let out = run(&["tables", "--max-m", "20", "--source", "maximized"]);
    assert!(stdout(&out).contains("18,28,28,maximized"));

    let out = run(&["tables", "--max-k", "10"]);
    assert!(stdout(&out).lines().any(|l| l == "9,10"));
}

#[test]
fn render_ascii_block() {
    let coords: Vec<String> =
        (1..=3).flat_map(|x| (1..=3).map(move |y| format!("[{x},{y}]"))).collect();
    let file = temp_file("block.json", &format!(r#"{{"n":11,"queens":[{}]}}"#, coords.join(",")));
    let out = run(&["render", file.to_str().unwrap(), "--format", "ascii"]);
    assert!(out.status.success());
    let art = stdout(&out);
    let lines: Vec<&str> = art.lines().collect();
    assert_eq!(lines.len(), 11);
    assert!(lines.iter().all(|l| l.len() == 11));
    assert_eq!(art.matches('Q').count(), 9);
    assert!(art.chars().all(|c| "Q#.\n".contains(c)));
    assert_eq!(lines[10], "QQQ########");
    assert_eq!(lines[0], "###.....###");
}

#[test]
fn render_svg_is_balanced_xml() {
    let file = temp_file("pair.json", r#"{"n":6,"queens":[[1,1],[4,3]]}"#);
    let out = run(&[
        "render",
        file.to_str().unwrap(),
        "--format",
        "svg",
        "--show",
        "queens,covered,rings,certificate-lines",
        "--cell-size",
        "12",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    // Every opened element is either self-closing or closed.
    let opened = svg.matches('<').count() - svg.matches("</").count();
    let self_closed = svg.matches("/>").count();
    let closed = svg.matches("</").count();
    assert_eq!(opened, self_closed + closed, "{svg}");
    assert_eq!(svg.matches("<circle").count(), 2);
}

#[test]
fn construct_then_analyze_round_trip() {
    let out = run(&["construct", "--k", "12", "--n", "30"]);
    assert!(out.status.success());
    let built = json(&out);
    let file = temp_file("built.json", &stdout(&out));
    let out = run(&["analyze", file.to_str().unwrap(), "--certificate", "--rings"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    for key in ["k", "covered", "attacked", "rows", "cols", "pos_diags", "neg_diags"] {
        assert_eq!(report[key], built["stats"][key], "{key}");
    }
    assert_eq!(report["certificate"]["sound"], true);
    assert_eq!(report["k_within_F"], true);
    assert!(report["rings"]["bound"]["points"].as_u64().unwrap() >= 12);
}

#[test]
fn search_reports_optimum() {
    let out = run(&["search", "--k", "2", "--n", "6", "--threads", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["optimum"], 23);
    assert!(v["wall_time_ms"].is_number());
    assert_eq!(v["witnesses"][0]["queens"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["search", "--k", "4", "--n", "8", "--budget", "100"]).status.code(), Some(3));
    assert_eq!(run(&["construct", "--k", "0", "--n", "8"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--k", "3", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--k", "3", "--n", "8", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--suite", "lemma3"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let missing = run(&["analyze", "/nonexistent/placement.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(missing.stdout.is_empty());
    assert!(!missing.stderr.is_empty());
}

#[test]
fn verify_suites_pass() {
    for suite in ["lemma2", "eq1", "konig", "formulas", "rings", "constructions"] {
        let out = run(&["verify", "--suite", suite, "--seed", "7"]);
        assert!(out.status.success(), "{suite}: {}", stdout(&out));
        let v = json(&out);
        assert_eq!(v["passed"], true);
        assert_eq!(v["seed"], 7);
        assert_eq!(v["suites"][0]["suite"], suite);
    }
}
