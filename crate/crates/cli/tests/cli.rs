use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fairdiv::document::{instance_from_json, instance_to_json};
use fairdiv::{int, Bundle, Instance, Valuation};
use tempfile::TempDir;

fn fairdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairdiv"))
        .args(args)
        .env_remove("FAIRDIV_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(out)))
}

struct Work {
    dir: TempDir,
}

impl Work {
    fn new() -> Self {
        Work { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }

    fn instance(&self, name: &str, inst: &Instance) -> String {
        self.write(name, &instance_to_json(inst))
    }

    fn gen(&self, name: &str, args: &[&str]) -> String {
        let p = self.path(name);
        let p = p.to_str().unwrap();
        let mut full = vec!["gen"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", p]);
        let out = fairdiv(&full);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        p.to_string()
    }
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path).unwrap()
}

fn infeasible_binary() -> Instance {
    let wants_first = Valuation::binary_from_fn(4, |s| s.contains(0));
    let two_pairs = Valuation::binary_from_fn(4, |s| {
        Bundle::from_items([0, 1]).is_subset(s) || Bundle::from_items([2, 3]).is_subset(s)
    });
    Instance::new(4, vec![wants_first, two_pairs]).unwrap()
}

const CCG_ONE_STEP: [&str; 8] = ["--kind", "random-binary-mms-feasible", "--n", "3", "--m", "5", "--seed", "9"];

#[test]
fn maf_trace_matches_golden() {
    let w = Work::new();
    let inst = w.gen("t1.json", &["--kind", "table1"]);
    let alloc = w.path("alloc.json");
    let out = fairdiv(&["solve", "--algo", "maf", "--in", &inst, "--trace", "--out", alloc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), include_str!("../../core/tests/golden/table1_trace.txt"));
    let doc: serde_json::Value = serde_json::from_str(&read(&alloc)).unwrap();
    assert_eq!(doc["bundles"].as_array().unwrap().len(), 4);
}

#[test]
fn alternating_freeze_rule_is_selectable() {
    let w = Work::new();
    let inst = w.gen("t1.json", &["--kind", "table1"]);
    let out = fairdiv(&["solve", "--algo", "maf", "--in", &inst, "--freeze-rule", "alternating-path"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("{\"bundles\":"));
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let args = ["gen", "--kind", "random-bivalued", "--n", "3", "--m", "6", "--seed", "7"];
    let (a, b) = (fairdiv(&args), fairdiv(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(instance_to_json(&instance_from_json(&text).unwrap()), text);

    let other = fairdiv(&["gen", "--kind", "random-bivalued", "--n", "3", "--m", "6", "--seed", "8"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn gen_named_instances() {
    let s3 = json(&fairdiv(&["gen", "--kind", "separation3"]));
    assert_eq!((s3["n"].as_u64(), s3["m"].as_u64()), (Some(3), Some(6)));
    let stars = json(&fairdiv(&["gen", "--kind", "stars", "--n", "3"]));
    assert_eq!(stars["m"].as_u64(), Some(5));
    let t1 = json(&fairdiv(&["gen", "--kind", "table1"]));
    assert!(t1.to_string().contains("\"5/2\""));
}

#[test]
fn gen_usage_errors_exit_2() {
    assert_eq!(fairdiv(&["gen", "--kind", "nonsense"]).status.code(), Some(2));
    assert_eq!(fairdiv(&["gen", "--kind", "random-additive", "--n", "2"]).status.code(), Some(2));
    assert_eq!(fairdiv(&["gen", "--kind", "stars", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn rrr_single_agent_takes_everything() {
    let w = Work::new();
    let inst = w.gen("pd.json", &["--kind", "random-pair-demand", "--n", "1", "--m", "5", "--seed", "3"]);
    let out = fairdiv(&["solve", "--algo", "rrr", "--in", &inst, "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let first = text.lines().next().unwrap();
    assert_eq!(first, "{\"bundles\":[[0,1,2,3,4]]}");
    assert!(text.contains("\nforward 0:"));
}

#[test]
fn ccg_cap_trip_exits_3() {
    let w = Work::new();
    let inst = w.instance("bad.json", &infeasible_binary());
    let out = fairdiv(&["solve", "--algo", "ccg", "--in", &inst]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("MMS-feasible"));

    let feasible = fairdiv(&["check", "--notion", "feasible", "--in", &inst]);
    assert_eq!(feasible.status.code(), Some(1));
}

#[test]
fn ccg_solves_a_feasible_table() {
    let w = Work::new();
    let inst = w.gen("ok.json", &CCG_ONE_STEP);
    let alloc = w.path("alloc.json");
    let out = fairdiv(&["solve", "--algo", "ccg", "--in", &inst, "--trace", "--out", alloc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("iteration 1 s=1 "));
    assert!(stdout(&out).contains("\nfinal W=1 E=3"));
    let check = fairdiv(&["check", "--notion", "pmms", "--in", &inst, "--alloc", alloc.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn class_mismatch_exits_2() {
    let w = Work::new();
    let inst = w.gen("s3.json", &["--kind", "separation3"]);
    for algo in ["maf", "ccg", "rrr"] {
        assert_eq!(fairdiv(&["solve", "--algo", algo, "--in", &inst]).status.code(), Some(2), "{algo}");
    }
    let bad = w.write("bad.json", "{\"n\": 1}");
    assert_eq!(fairdiv(&["solve", "--algo", "maf", "--in", &bad]).status.code(), Some(2));
}

#[test]
fn balanced_separation_allocation_fails_pmms() {
    let w = Work::new();
    let inst = w.gen("s3.json", &["--kind", "separation3"]);
    let alloc = w.write("a.json", "{\"bundles\":[[0,1],[2,3],[4,5]]}");
    let out = fairdiv(&["check", "--notion", "pmms", "--in", &inst, "--alloc", &alloc]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["holds"], false);
    assert!(report["violations"][0]["witness"]["partition"].is_array());
}

#[test]
fn pmms_without_efx() {
    let w = Work::new();
    let inst = w.gen("ex.json", &["--kind", "pmms-not-efx"]);
    let alloc = w.write("a.json", "{\"bundles\":[[0],[1,2]]}");
    let pmms = fairdiv(&["check", "--notion", "pmms", "--in", &inst, "--alloc", &alloc]);
    assert_eq!(pmms.status.code(), Some(0));
    let efx = fairdiv(&["check", "--notion", "efx", "--in", &inst, "--alloc", &alloc]);
    assert_eq!(efx.status.code(), Some(1));
    let efx_pos = fairdiv(&["check", "--notion", "efx+", "--in", &inst, "--alloc", &alloc]);
    assert_eq!(efx_pos.status.code(), Some(0));
}

#[test]
fn check_input_errors_exit_2() {
    let w = Work::new();
    let inst = w.gen("ex.json", &["--kind", "pmms-not-efx"]);
    let overlap = w.write("a.json", "{\"bundles\":[[0,1],[1,2]]}");
    assert_eq!(fairdiv(&["check", "--notion", "efx", "--in", &inst, "--alloc", &overlap]).status.code(), Some(2));
    assert_eq!(fairdiv(&["check", "--notion", "efx", "--in", &inst]).status.code(), Some(2));
}

#[test]
fn additive_instances_are_feasible() {
    let w = Work::new();
    let inst = w.gen("add.json", &["--kind", "random-additive", "--n", "3", "--m", "30", "--seed", "1"]);
    let out = fairdiv(&["check", "--notion", "feasible", "--in", &inst]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn verify_claims() {
    let w = Work::new();
    let s3 = w.gen("s3.json", &["--kind", "separation3"]);
    let none = json(&fairdiv(&["verify", "--claim", "no-pmms", "--in", &s3]));
    assert_eq!((none["scanned"].as_u64(), none["found"].is_null()), (Some(729), true));
    assert_eq!(fairdiv(&["verify", "--claim", "mms-exists", "--in", &s3]).status.code(), Some(0));
    let tri = json(&fairdiv(&["verify", "--claim", "triangle-free", "--in", &s3]));
    assert!(tri["triangle"].is_null() && tri["edges"].as_u64().unwrap() > 0);

    let mnw = w.gen("mnw.json", &["--kind", "mnw"]);
    let out = fairdiv(&["verify", "--claim", "mnw-not-efx", "--in", &mnw]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["max_nw"], "25");
    assert_eq!(v["maximizers"].as_array().unwrap().len(), 2);

    let ex = w.gen("ex.json", &["--kind", "pmms-not-efx"]);
    assert_eq!(fairdiv(&["verify", "--claim", "no-pmms", "--in", &ex]).status.code(), Some(1));
}

#[test]
fn budget_trip_exits_3() {
    let w = Work::new();
    let s3 = w.gen("s3.json", &["--kind", "separation3"]);
    let out = Command::new(env!("CARGO_BIN_EXE_fairdiv"))
        .args(["verify", "--claim", "no-pmms", "--in", &s3])
        .env("FAIRDIV_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let bad = Command::new(env!("CARGO_BIN_EXE_fairdiv"))
        .args(["verify", "--claim", "no-pmms", "--in", &s3])
        .env("FAIRDIV_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

/// Minimal reader for the DOT subset we emit: node statements and `--`/`->` edges.
struct Dot {
    directed: bool,
    nodes: BTreeSet<String>,
    edges: Vec<(String, String)>,
}

fn parse_dot(text: &str) -> Dot {
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    let directed = header.starts_with("digraph ");
    assert!(directed || header.starts_with("graph "), "header {header:?}");
    assert!(header.ends_with('{'));
    assert_eq!(text.matches('{').count() - text.matches("\"{").count(), 1, "unbalanced braces");
    let mut dot = Dot { directed, nodes: BTreeSet::new(), edges: Vec::new() };
    let mut closed = false;
    for line in lines {
        let line = line.trim();
        assert!(!closed, "content after closing brace");
        if line == "}" {
            closed = true;
            continue;
        }
        let stmt = line.strip_suffix(';').unwrap_or_else(|| panic!("unterminated {line:?}"));
        if stmt.starts_with("node ") {
            continue;
        }
        let arrow = if directed { " -> " } else { " -- " };
        if let Some((a, b)) = stmt.split_once(arrow) {
            let id = |s: &str| {
                assert!(s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'), "bad id {s:?}");
                s.to_string()
            };
            dot.edges.push((id(a), id(b)));
        } else {
            let (id, attrs) = stmt.split_once(' ').unwrap();
            assert!(attrs.starts_with('[') && attrs.ends_with(']'), "bad attrs {attrs:?}");
            dot.nodes.insert(id.to_string());
        }
    }
    assert!(closed);
    dot
}

fn has_triangle(edges: &[(String, String)]) -> bool {
    let mut adj: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (a, b) in edges {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    adj.iter().any(|(a, na)| {
        na.iter().any(|b| adj[b].iter().any(|c| c != a && na.contains(c)))
    })
}

#[test]
fn compat_export_is_triangle_free() {
    let w = Work::new();
    let s3 = w.gen("s3.json", &["--kind", "separation3"]);
    let dot_path = w.path("g.dot");
    let out = fairdiv(&["export-graph", "--in", &s3, "--kind", "compat", "--dot", dot_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dot = parse_dot(&read(&dot_path));
    assert!(!dot.directed);
    assert!(!dot.edges.is_empty());
    assert!(!has_triangle(&dot.edges));
    let touched: BTreeSet<String> = dot.edges.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    assert_eq!(touched, dot.nodes, "isolated nodes must be omitted");
}

#[test]
fn triangle_check_sees_triangles() {
    let e = |a: &str, b: &str| (a.to_string(), b.to_string());
    assert!(has_triangle(&[e("a", "b"), e("b", "c"), e("c", "a")]));
    assert!(!has_triangle(&[e("a", "b"), e("b", "c"), e("c", "d"), e("d", "a")]));
}

#[test]
fn compat_export_without_edges_has_empty_body() {
    let w = Work::new();
    let inst = Instance::new(3, vec![Valuation::additive(vec![int(1); 3]); 2]).unwrap();
    let p = w.instance("small.json", &inst);
    let out = fairdiv(&["export-graph", "--in", &p, "--kind", "compat"]);
    assert_eq!(stdout(&out), "graph compat {\n  node [style=filled];\n}\n");
}

#[test]
fn ccg_export_has_one_out_edge_per_agent() {
    let w = Work::new();
    let inst = w.gen("ok.json", &CCG_ONE_STEP);
    let out = fairdiv(&["export-graph", "--in", &inst, "--kind", "ccg", "--iteration", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = parse_dot(&stdout(&out));
    assert!(dot.directed);
    assert_eq!(dot.nodes.len(), 3);
    for node in &dot.nodes {
        assert_eq!(dot.edges.iter().filter(|e| &e.0 == node).count(), 1);
    }

    let alloc = w.write("rr.json", "{\"bundles\":[[0,3],[1,4],[2]]}");
    let explicit = fairdiv(&["export-graph", "--in", &inst, "--kind", "ccg", "--alloc", &alloc, "--s", "0"]);
    assert_eq!(explicit.status.code(), Some(0));
    assert_eq!(parse_dot(&stdout(&explicit)).edges.len(), 3);

    let missing = fairdiv(&["export-graph", "--in", &inst, "--kind", "ccg", "--iteration", "99"]);
    assert_eq!(missing.status.code(), Some(2));
}
