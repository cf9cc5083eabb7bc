//! Browser bindings for the demo page. Every function takes and returns JSON
//! strings; failures come back as `{"error": "..."}`.

use fairdiv::algorithms::{match_and_freeze_with, reversed_round_robin_traced, FreezeRule};
use fairdiv::document::{fmt_rational, parse_rational};
use fairdiv::instances::{gen_separation3, gen_table1_example};
use fairdiv::oracles::{check_efx, check_pmms, CompatGraph};
use fairdiv::{int, Budget, Instance, Valuation, Value};
use serde_json::{json, Value as Json};
use wasm_bindgen::prelude::*;

fn respond(result: Result<Json, String>) -> String {
    result.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn bad_input(e: serde_json::Error) -> String {
    format!("bad input: {e}")
}

/// Four-agent reference instance with the agents' high values replaced by `a`.
fn table1_with(a: &[Value]) -> Result<Instance, String> {
    let base = gen_table1_example();
    if a.len() != base.n() {
        return Err(format!("expected {} high values, got {}", base.n(), a.len()));
    }
    let mut vals = Vec::new();
    for (v, &ai) in base.valuations().iter().zip(a) {
        let Valuation::PersonalizedBivalued { b, high, .. } = v else { unreachable!() };
        if ai <= *b {
            return Err(format!("high value {} must exceed the low value {}", fmt_rational(&ai), fmt_rational(b)));
        }
        vals.push(Valuation::bivalued(ai, *b, *high, base.m()));
    }
    let labels = base.labels().map(|l| l.to_vec()).unwrap_or_default();
    Instance::new(base.m(), vals).and_then(|i| i.with_labels(labels)).map_err(|e| e.to_string())
}

/// Runs Match-and-Freeze on the four-agent reference instance with custom high values, given
/// as a JSON list of four rationals such as `["5/2", "3", "4", "5"]`. `rule` is
/// `component` or `alternating_path`.
#[wasm_bindgen]
pub fn maf_table1(a_json: &str, rule: &str) -> String {
    respond((|| {
        let raw: Vec<String> = serde_json::from_str(a_json).map_err(bad_input)?;
        let a = raw.iter().map(|s| parse_rational(s.trim())).collect::<Result<Vec<_>, _>>()?;
        let rule = match rule {
            "component" => FreezeRule::Component,
            "alternating_path" => FreezeRule::AlternatingPath,
            other => return Err(format!("unknown freeze rule {other:?}")),
        };
        let inst = table1_with(&a)?;
        let (x, trace) = match_and_freeze_with(&inst, rule).map_err(|e| e.to_string())?;
        let pmms = check_pmms(&inst, &x, Budget::DEFAULT).map_err(|e| e.to_string())?;
        let bundles: Vec<Vec<String>> =
            x.bundles.iter().map(|b| b.items().map(|g| inst.label(g)).collect()).collect();
        Ok(json!({
            "log": trace.to_log(&inst, &x),
            "bundles": bundles,
            "values": x.own_values(&inst).iter().map(fmt_rational).collect::<Vec<_>>(),
            "efx": check_efx(&inst, &x).holds,
            "pmms": pmms.holds,
            "factored": inst.valuations().iter().all(Valuation::is_factored),
        }))
    })())
}

/// Reversed Round-Robin on pair-demand agents given as a matrix of non-negative
/// integer item values, followed by an exhaustive PMMS check.
#[wasm_bindgen]
pub fn rrr_pair_demand(values_json: &str, leftover_owner: usize) -> String {
    respond((|| {
        let rows: Vec<Vec<i64>> = serde_json::from_str(values_json).map_err(bad_input)?;
        let m = rows.first().map(Vec::len).ok_or("need at least one agent")?;
        if rows.iter().any(|r| r.len() != m) {
            return Err("every agent needs a value for every item".into());
        }
        if m > 12 {
            return Err("at most 12 items".into());
        }
        let vals = rows.iter().map(|r| Valuation::pair_demand(r.iter().map(|&x| int(x)).collect())).collect();
        let inst = Instance::new(m, vals).map_err(|e| e.to_string())?;
        let (x, trace) = reversed_round_robin_traced(&inst, leftover_owner).map_err(|e| e.to_string())?;
        let report = check_pmms(&inst, &x, Budget::DEFAULT).map_err(|e| e.to_string())?;
        Ok(json!({
            "log": trace.to_log(&inst),
            "bundles": x.bundles,
            "values": x.own_values(&inst).iter().map(fmt_rational).collect::<Vec<_>>(),
            "pmms": report.holds,
            "violations": report.violations,
        }))
    })())
}

/// Pair compatibility graph of the three-agent separation instance, restricted to
/// non-isolated nodes, with a triangle search.
#[wasm_bindgen]
pub fn separation_graph() -> String {
    respond((|| {
        let inst = gen_separation3();
        let graph = CompatGraph::build(&inst, Budget::DEFAULT).map_err(|e| e.to_string())?;
        let visible = graph.visible_nodes();
        let nodes: Vec<Json> = visible
            .iter()
            .map(|&idx| {
                let node = graph.nodes[idx];
                let label: Vec<String> = node.bundle.items().map(|g| inst.label(g)).collect();
                json!({ "id": idx, "agent": node.agent, "label": format!("{{{}}}", label.join(",")) })
            })
            .collect();
        Ok(json!({
            "nodes": nodes,
            "edges": graph.edges,
            "triangle": graph.find_triangle(),
            "dot": fairdiv::dot::compat_to_dot(&inst, &graph),
        }))
    })())
}
