use std::io::Write;
use std::process::{Command, Stdio};

use pmw_core::io::{parse_bipartite, parse_digraph, parse_dtd};
use pmw_core::iso::bipartite_isomorphic;
use pmw_core::mwidth::validate_dtd;
use pmw_core::width2::ladder;
use pmw_core::BipartiteGraph;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn pmw(args: &[&str], input: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pmw"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn pmw");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

const C6: &str = "p bgraph 3 3 6\ne 1 1\ne 2 1\ne 2 2\ne 3 2\ne 3 3\ne 1 3\n";

fn bi_k(n: usize) -> String {
    let mut s = format!("p digraph {n} {}\n", n * (n - 1));
    for u in 1..=n {
        for v in 1..=n {
            if u != v {
                s += &format!("a {u} {v}\n");
            }
        }
    }
    s
}

#[test]
fn ladder_output_parses_and_is_width_two() {
    let r = pmw(&["ladder", "-n", "5"], "");
    assert_eq!(r.code, 0);
    let (g, _) = parse_bipartite(&r.stdout).unwrap();
    assert_eq!(g, ladder(5));
    let r = pmw(&["pmw2", "-"], &emit(&g));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("width 2\n"));
}

fn emit(g: &BipartiteGraph) -> String {
    pmw_core::io::emit_bipartite(g, None)
}

#[test]
fn porosity_of_a_cycle_shore() {
    let r = pmw(&["porosity", "-", "--shore", "a1,b1,a2"], C6);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().next(), Some("1"));
}

#[test]
fn bi_k4_is_refuted_with_a_witness() {
    let r = pmw(&["cyclewidth2", "-", "--via", "both"], &bi_k(4));
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("false\n"));
    assert!(r.stdout.contains("c forbidden butterfly minor"));
    let r = pmw(&["cyclewidth2", "-"], &bi_k(3));
    assert_eq!(r.code, 0);
}

#[test]
fn split_of_bi_k4_is_k44() {
    let r = pmw(&["split", "-"], &bi_k(4));
    assert_eq!(r.code, 0);
    let (g, m) = parse_bipartite(&r.stdout).unwrap();
    assert!(bipartite_isomorphic(&g, &BipartiteGraph::complete(4, 4)));
    assert!(m.unwrap().is_perfect(&g));
    let back = pmw(&["mdirect", "-"], &r.stdout);
    assert_eq!(back.code, 0);
    assert_eq!(parse_digraph(&back.stdout).unwrap().arc_count(), 12);
}

#[test]
fn dtd_output_validates() {
    let d = "p digraph 4 6\na 1 2\na 2 1\na 2 3\na 3 2\na 3 4\na 4 3\n";
    let r = pmw(&["dtd2", "-"], d);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let d = parse_digraph(d).unwrap();
    let t = parse_dtd(&r.stdout, 4).unwrap();
    assert!(validate_dtd(&d, &t).is_valid());
    assert_eq!(pmw(&["dtd2", "-"], &bi_k(4)).code, 1);
}

#[test]
fn structured_output_has_an_envelope() {
    let r = pmw(&["is-brace", "-", "--format", "structured"], C6);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["data"]["value"], false);
}

#[test]
fn input_errors_and_caps() {
    let r = pmw(&["is-brace", "-"], "p bgraph 2 2 1\ne 3 1\n");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
    assert_eq!(pmw(&["porosity", "-", "--shore", "a9"], C6).code, 2);
    assert_eq!(pmw(&["is-brace", "/nonexistent/graph.txt"], "").code, 2);
    assert_eq!(pmw(&["--cap", "4", "brute-pmw", "-"], C6).code, 3);
}

#[test]
fn tight_cuts_of_a_hexagon() {
    let r = pmw(&["tightcuts", "-"], C6);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("cuts 1\n"), "{}", r.stdout);
    assert!(r.stdout.contains("braces 2\n"));
    assert_eq!(r.stdout.matches("brace C4").count(), 2, "{}", r.stdout);
}
