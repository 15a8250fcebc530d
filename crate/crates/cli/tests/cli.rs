use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mcds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcds"))
        .args(args)
        .env_remove("MCDS_FORCE_LIMIT")
        .output()
        .unwrap()
}

fn mcds_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mcds"))
        .args(args)
        .env_remove("MCDS_FORCE_LIMIT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = mcds(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn assert_json_lines(text: &str) {
    assert!(!text.trim().is_empty());
    for line in text.lines() {
        serde_json::from_str::<serde_json::Value>(line)
            .unwrap_or_else(|e| panic!("not JSON: {line:?}: {e}"));
    }
}

#[test]
fn construct_dot_has_all_vertices() {
    let dot = ok(&["construct", "--t", "3", "--k", "3", "--format", "dot"]);
    assert_eq!(dot.lines().filter(|l| l.contains("[label")).count(), 22);
}

#[test]
fn construct_edges_header() {
    let edges = ok(&["construct", "--base", "--t", "4", "--clique-x", "--format", "edges"]);
    assert_eq!(edges.lines().next(), Some("9 22"));
}

#[test]
fn construct_rejects_t1() {
    assert_eq!(mcds(&["construct", "--t", "1", "--k", "2"]).status.code(), Some(64));
    assert_eq!(mcds(&["construct", "--t", "3"]).status.code(), Some(64));
}

#[test]
fn construct_rotation_passes_euler() {
    let text = ok(&["construct", "--t", "3", "--k", "3", "--rotation"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("# rotation")).count(), 22);
    assert!(text.lines().last().unwrap().ends_with("V-E+F=2 PASS"));
}

#[test]
fn counts_match_known_values() {
    assert_eq!(ok(&["count", "--base", "--t", "4", "--clique-x", "--filter-x"]), "36\n");
    assert_eq!(ok(&["count", "--t", "3", "--k", "2"]), "225\n");
    assert_eq!(ok(&["count", "--base", "--t", "4", "--block", "--attach", "X"]), "36\n");
}

#[test]
fn count_reads_stdin_in_either_format() {
    let g6 = ok(&["construct", "--t", "3", "--k", "2"]);
    let out = mcds_stdin(&["count", "--input", "-"], &g6);
    assert_eq!(stdout(&out), "225\n");
    let edges = ok(&["construct", "--base", "--t", "4", "--format", "edges"]);
    let out = mcds_stdin(&["count", "--input", "-", "--block", "--attach", "0,1,2,3"], &edges);
    assert_eq!(stdout(&out), "36\n");
}

#[test]
fn filter_x_needs_a_construction() {
    let g6 = ok(&["construct", "--base", "--t", "3"]);
    let out = mcds_stdin(&["count", "--input", "-", "--filter-x"], &g6);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn disconnected_input_aborts() {
    let out = mcds_stdin(&["count", "--input", "-"], "4 2\n0 1\n2 3\n");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumerate_lists_sorted_sets() {
    let text = ok(&["enumerate", "--t", "3", "--k", "2"]);
    let sets: Vec<Vec<usize>> = text
        .lines()
        .map(|l| l.split(' ').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(sets.len(), 225);
    for s in &sets {
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s[0], 0);
    }
    assert_json_lines(&ok(&["enumerate", "--base", "--t", "3", "--json"]));
}

#[test]
fn order_guard_exits_65() {
    let out = Command::new(env!("CARGO_BIN_EXE_mcds"))
        .args(["count", "--t", "3", "--k", "2"])
        .env("MCDS_FORCE_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
    // 5 blocks of order 7 plus the hub: 36 vertices.
    assert_eq!(mcds(&["count", "--t", "3", "--k", "5"]).status.code(), Some(65));
}

#[test]
fn threshold_and_rate() {
    assert_eq!(ok(&["threshold", "--order", "11"]), "80\n");
    let table = ok(&["rate", "--t-max", "6"]);
    let marked: Vec<&str> = table.lines().filter(|l| l.ends_with('*')).collect();
    assert_eq!(marked.len(), 1);
    assert!(marked[0].trim_start().starts_with("4 "));
}

#[test]
fn properties_of_g33() {
    let text = ok(&["properties", "--t", "3", "--k", "3"]);
    assert!(text.contains("bipartite=yes"));
    assert!(text.contains("degeneracy=3"));
    assert!(text.contains("cut={s}"));
}

#[test]
fn verify_commands_pass() {
    let lemma = ok(&["verify", "--lemma1", "--t-max", "4"]);
    for t in 2..=4 {
        assert!(lemma.contains(&format!("PASS lemma1 t={t}")));
    }
    assert!(!lemma.contains("FAIL"));
    let product = ok(&["verify", "--product", "--t", "3", "--k", "2"]);
    assert!(product.contains("225 = f(3)^2 = 225"));
    let corollary = ok(&["verify", "--corollary"]);
    assert!(!corollary.contains("FAIL"));
    assert!(corollary.contains("1.4723"));
}

#[test]
fn json_outputs_parse() {
    assert_json_lines(&ok(&["count", "--t", "3", "--k", "2", "--json"]));
    assert_json_lines(&ok(&["rate", "--t-max", "8", "--json"]));
    assert_json_lines(&ok(&["threshold", "--order", "8", "--json"]));
    assert_json_lines(&ok(&["properties", "--t", "3", "--k", "3", "--json"]));
    assert_json_lines(&ok(&["search", "--generate", "5", "--policy", "all", "--json"]));
}

#[test]
fn search_reports_block_hit() {
    let g6 = ok(&["construct", "--base", "--t", "4"]);
    let out = mcds_stdin(
        &["search", "--input", "-", "--policy", "sets:0,1,2,3", "--mode", "min-count:36", "--json"],
        &g6,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_json_lines(&text);
    let hit: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(hit["count"], "36");
    assert_eq!(hit["attachment"], serde_json::json!([0, 1, 2, 3]));
    assert!(text.lines().last().unwrap().starts_with("{\"summary\""));
}

#[test]
fn search_skips_bad_lines_with_exit_2() {
    let g6 = ok(&["construct", "--base", "--t", "3"]);
    let out = mcds_stdin(&["search", "--input", "-", "--json"], &format!("{g6}bad!\n"));
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["skipped"][0]["line"], 2);
}

#[test]
fn search_output_ignores_job_count() {
    let args = ["search", "--generate", "6", "--policy", "all", "--mode", "min-count:6", "--json"];
    let one = ok(&[&args[..], &["--jobs", "1"]].concat());
    let eight = ok(&[&args[..], &["--jobs", "8"]].concat());
    assert_eq!(one, eight);
    assert!(one.lines().count() > 1);
}

#[test]
fn bad_search_parameters_are_usage_errors() {
    assert_eq!(mcds(&["search", "--generate", "4", "--mode", "beat"]).status.code(), Some(64));
    assert_eq!(mcds(&["search", "--generate", "4", "--policy", "some"]).status.code(), Some(64));
    assert_eq!(mcds(&["search", "--generate", "9"]).status.code(), Some(65));
}
