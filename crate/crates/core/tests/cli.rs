use std::path::Path;
use std::process::Command;

use graphviz_rust::dot_structures::{Attribute, EdgeTy, Graph, Id, Stmt, Vertex};
use fattree_core::cli::{run_with, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["fattree"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn id_text(id: &Id) -> String {
    match id {
        Id::Html(s) | Id::Escaped(s) | Id::Plain(s) | Id::Anonymous(s) => s.trim_matches('"').to_string(),
    }
}

fn vertex_name(v: &Vertex) -> String {
    match v {
        Vertex::N(node) => id_text(&node.0),
        Vertex::S(_) => String::from("<subgraph>"),
    }
}

/// Top-level edges as (from, to, label).
fn edges(dot: &str) -> Vec<(String, String, Option<String>)> {
    let graph = graphviz_rust::parse(dot).unwrap_or_else(|e| panic!("invalid DOT: {e}\n{dot}"));
    let Graph::Graph { stmts, .. } = graph else { panic!("expected an undirected graph") };
    stmts
        .iter()
        .filter_map(|s| match s {
            Stmt::Edge(e) => {
                let EdgeTy::Pair(a, b) = &e.ty else { return None };
                let label = e
                    .attributes
                    .iter()
                    .find(|Attribute(k, _)| id_text(k) == "label")
                    .map(|Attribute(_, v)| id_text(v));
                Some((vertex_name(a), vertex_name(b), label))
            }
            _ => None,
        })
        .collect()
}

fn dot_for(nodes: &str, dir: &Path) -> String {
    let path = dir.join(format!("n{nodes}.dot"));
    let (code, _, err) = run(&["design", "--nodes", nodes, "--dot", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn text_output_matches_golden() {
    let (code, out, _) = run(&["design", "--nodes", "60", "--format", "text"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, include_str!("golden/design_60.txt"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dot_for("200", dir.path());
    let b = dot_for("200", dir.path());
    assert_eq!(a, b);
    for args in [
        &["design", "--nodes", "200"][..],
        &["sweep", "--from", "40", "--to", "120"],
        &["place", "--nodes", "396", "--rows", "2", "--racks-per-row", "7", "--dense"],
    ] {
        let (code, first, err) = run(args);
        assert_eq!(code, EXIT_OK, "{args:?}: {err}");
        assert_eq!(first, run(args).1, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["design", "--nodes", "2000"]);
    assert_eq!(code, EXIT_INFEASIBLE);
    assert!(err.contains("insufficient radix"), "{err}");
    assert_eq!(run(&["design", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&["design", "--nodes", "10", "--catalog", "/nonexistent/catalog.json"]).0, EXIT_USAGE);
    assert_eq!(run(&["design", "--nodes", "10", "--blocking", "0"]).0, EXIT_USAGE);
}

#[test]
fn fat_tree_dot_has_expected_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let e = edges(&dot_for("60", dir.path()));
    let node_links: Vec<_> = e.iter().filter(|(a, _, _)| a.starts_with('n')).collect();
    let bundles: Vec<_> = e.iter().filter(|(_, b, _)| b.starts_with('c')).collect();
    assert_eq!(node_links.len(), 60);
    assert_eq!(bundles.len(), 8);
    assert!(bundles.iter().all(|(_, _, l)| l.as_deref() == Some("9")));

    let e = edges(&dot_for("280", dir.path()));
    assert_eq!(e.iter().filter(|(a, _, _)| a.starts_with('n')).count(), 280);
    let bundles: Vec<_> = e.iter().filter(|(_, b, _)| b.starts_with('c')).collect();
    assert_eq!(bundles.len(), 16 * 9);
    assert!(bundles.iter().all(|(_, _, l)| l.as_deref() == Some("2")));
}

#[test]
fn star_dot_has_no_core() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dot_for("20", dir.path());
    let e = edges(&dot);
    assert_eq!(e.len(), 20);
    assert!(e.iter().all(|(_, b, _)| b == "e1"));
    assert!(!dot.contains("subgraph core"));
}

#[test]
fn binary_reports_exit_status() {
    let bin = env!("CARGO_BIN_EXE_fattree");
    let ok = Command::new(bin).args(["design", "--nodes", "60", "--format", "text"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), include_str!("golden/design_60.txt"));
    let bad = Command::new(bin).args(["design", "--nodes", "5000"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INFEASIBLE));
}
