//! Graphviz output for the pair compatibility graph and the cut-and-choose graph.

use std::fmt::Write as _;

use crate::instance::Instance;
use crate::oracles::CompatGraph;

const PALETTE: [&str; 3] = ["lightblue", "palegreen", "khaki"];

fn color(agent: usize) -> &'static str {
    PALETTE.get(agent).copied().unwrap_or("lightgray")
}

fn compat_node_id(graph: &CompatGraph, idx: usize) -> String {
    let node = graph.nodes[idx];
    let items: Vec<String> = node.bundle.items().map(|g| g.to_string()).collect();
    format!("a{}_{}", node.agent, items.join("_"))
}

/// Undirected graph over `(agent, pair)` nodes. Isolated nodes are omitted; nodes
/// are filled by agent (blue, green, yellow, then gray).
pub fn compat_to_dot(inst: &Instance, graph: &CompatGraph) -> String {
    let mut out = String::from("graph compat {\n  node [style=filled];\n");
    for idx in graph.visible_nodes() {
        let node = graph.nodes[idx];
        let label: Vec<String> = node.bundle.items().map(|g| inst.label(g)).collect();
        let _ = writeln!(
            out,
            "  {} [label=\"{{{}}}_{}\", fillcolor={}];",
            compat_node_id(graph, idx),
            label.join(","),
            node.agent,
            color(node.agent)
        );
    }
    for &(a, b) in &graph.edges {
        let _ = writeln!(out, "  {} -- {};", compat_node_id(graph, a), compat_node_id(graph, b));
    }
    out.push_str("}\n");
    out
}

/// Directed pointer graph `i -> π(i)` with `s` drawn as a double circle.
pub fn pointer_graph_to_dot(pi: &[usize], s: usize) -> String {
    let mut out = String::from("digraph ccg {\n  node [style=filled];\n");
    for i in 0..pi.len() {
        let shape = if i == s { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {i} [shape={shape}, fillcolor={}];", color(i));
    }
    for (i, &j) in pi.iter().enumerate() {
        let _ = writeln!(out, "  {i} -> {j};");
    }
    out.push_str("}\n");
    out
}
