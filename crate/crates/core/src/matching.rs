//! Bipartite matching between agents and items.
//!
//! The production matcher maximises cardinality first and total weight second,
//! and breaks remaining ties toward the lexicographically smallest sorted list of
//! `(agent, item)` pairs. It reduces to an assignment problem by adding a constant
//! `C = 1 + m · max_weight` to every edge, so one extra edge always outweighs any
//! weight difference.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub agent: usize,
    pub item: usize,
    #[serde(with = "crate::document::rational")]
    pub weight: Value,
}

/// Bipartite graph between `agents` and `items`. Node ids are global agent and
/// item indices, not positions in these lists.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RoundGraph {
    pub agents: Vec<usize>,
    pub items: Vec<usize>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Matching {
    /// Sorted `(agent, item)` pairs.
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn item_of(&self, agent: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == agent).map(|p| p.1)
    }

    pub fn is_matched(&self, agent: usize) -> bool {
        self.item_of(agent).is_some()
    }

    pub fn total_weight(&self, graph: &RoundGraph) -> Value {
        self.pairs
            .iter()
            .map(|&(a, g)| graph.weight(a, g).expect("matched pair is an edge"))
            .sum()
    }

    /// Each agent and item at most once, every pair an edge.
    pub fn is_valid_for(&self, graph: &RoundGraph) -> bool {
        let agents: BTreeSet<usize> = self.pairs.iter().map(|p| p.0).collect();
        let items: BTreeSet<usize> = self.pairs.iter().map(|p| p.1).collect();
        agents.len() == self.pairs.len()
            && items.len() == self.pairs.len()
            && self.pairs.iter().all(|&(a, g)| graph.weight(a, g).is_some())
    }
}

impl RoundGraph {
    pub fn weight(&self, agent: usize, item: usize) -> Option<Value> {
        self.edges
            .iter()
            .find(|e| e.agent == agent && e.item == item)
            .map(|e| e.weight)
    }

    fn boost(&self) -> Value {
        let max = self
            .edges
            .iter()
            .map(|e| e.weight)
            .max()
            .unwrap_or_else(Value::zero);
        Value::from_integer(1) + max * Value::from_integer(self.items.len().max(1) as i64)
    }
}

/// Minimum-cost assignment of every row to a distinct column (`rows <= cols`).
/// Returns the optimal cost. Classic potentials-based Hungarian method.
fn assignment_min_cost(cost: &[Vec<Value>]) -> Value {
    let rows = cost.len();
    if rows == 0 {
        return Value::zero();
    }
    let cols = cost[0].len();
    debug_assert!(rows <= cols);
    let zero = Value::zero();
    let mut u = vec![zero; rows + 1];
    let mut v = vec![zero; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for row in 1..=rows {
        owner[0] = row;
        let mut col0 = 0usize;
        let mut minv: Vec<Option<Value>> = vec![None; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[col0] = true;
            let r0 = owner[col0];
            let mut delta: Option<Value> = None;
            let mut col1 = 0usize;
            for col in 1..=cols {
                if used[col] {
                    continue;
                }
                let cur = cost[r0 - 1][col - 1] - u[r0] - v[col];
                if minv[col].is_none_or(|m| cur < m) {
                    minv[col] = Some(cur);
                    way[col] = col0;
                }
                let mv = minv[col].expect("just set");
                if delta.is_none_or(|d| mv < d) {
                    delta = Some(mv);
                    col1 = col;
                }
            }
            let delta = delta.expect("a free column always exists");
            for col in 0..=cols {
                if used[col] {
                    u[owner[col]] += delta;
                    v[col] -= delta;
                } else if let Some(m) = minv[col].as_mut() {
                    *m -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            owner[col0] = owner[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }
    (1..=cols)
        .filter(|&c| owner[c] != 0)
        .map(|c| cost[owner[c] - 1][c - 1])
        .sum()
}

/// Best boosted total over the sub-graph induced by `agents` and `items`.
fn best_boosted(graph: &RoundGraph, agents: &[usize], items: &[usize], boost: Value) -> Value {
    if agents.is_empty() || items.is_empty() {
        return Value::zero();
    }
    // one private "stay unmatched" column per agent keeps rows <= cols
    let cols = items.len() + agents.len();
    let cost: Vec<Vec<Value>> = agents
        .iter()
        .map(|&a| {
            let mut row = vec![Value::zero(); cols];
            for (c, &g) in items.iter().enumerate() {
                if let Some(w) = graph.weight(a, g) {
                    row[c] = -(w + boost);
                }
            }
            row
        })
        .collect();
    -assignment_min_cost(&cost)
}

/// Maximum-cardinality matching of maximum total weight, ties broken toward the
/// lexicographically smallest sorted pair list. Weights must be non-negative.
pub fn max_cardinality_max_weight_matching(graph: &RoundGraph) -> Matching {
    debug_assert!(graph.edges.iter().all(|e| !e.weight.is_negative()));
    let boost = graph.boost();
    let mut agents: Vec<usize> = graph.agents.clone();
    agents.sort_unstable();
    let mut items: Vec<usize> = graph.items.clone();
    items.sort_unstable();

    let target = best_boosted(graph, &agents, &items, boost);
    let mut gained = Value::zero();
    let mut pairs = Vec::new();
    let mut rest_agents: Vec<usize> = agents.clone();

    for &agent in &agents {
        rest_agents.retain(|&a| a != agent);
        let mut candidates: Vec<(usize, Value)> = graph
            .edges
            .iter()
            .filter(|e| e.agent == agent && items.contains(&e.item))
            .map(|e| (e.item, e.weight))
            .collect();
        candidates.sort_by_key(|c| c.0);
        for (item, w) in candidates {
            let rest_items: Vec<usize> = items.iter().copied().filter(|&g| g != item).collect();
            let with = gained + w + boost + best_boosted(graph, &rest_agents, &rest_items, boost);
            if with == target {
                gained += w + boost;
                pairs.push((agent, item));
                items = rest_items;
                break;
            }
        }
    }
    Matching { pairs }
}

/// Exhaustive reference matcher with the same objective and tie-break. At most 20 edges.
pub fn brute_force_matching_oracle(graph: &RoundGraph) -> Result<Matching> {
    const EDGE_CAP: usize = 20;
    if graph.edges.len() > EDGE_CAP {
        return Err(Error::InvalidArgument(format!(
            "brute-force matching handles at most {EDGE_CAP} edges, got {}",
            graph.edges.len()
        )));
    }
    let mut edges: Vec<&Edge> = graph.edges.iter().collect();
    edges.sort_by_key(|e| (e.agent, e.item));

    type Key = (usize, Value, Vec<(usize, usize)>);
    fn better(cand: &Key, best: &Key) -> bool {
        (cand.0, cand.1) > (best.0, best.1) || ((cand.0, cand.1) == (best.0, best.1) && cand.2 < best.2)
    }
    fn walk(
        edges: &[&Edge],
        idx: usize,
        used_a: &mut BTreeSet<usize>,
        used_i: &mut BTreeSet<usize>,
        chosen: &mut Vec<(usize, usize)>,
        weight: Value,
        best: &mut Key,
    ) {
        if idx == edges.len() {
            let mut pairs = chosen.clone();
            pairs.sort_unstable();
            let cand = (pairs.len(), weight, pairs);
            if better(&cand, best) {
                *best = cand;
            }
            return;
        }
        walk(edges, idx + 1, used_a, used_i, chosen, weight, best);
        let e = edges[idx];
        if !used_a.contains(&e.agent) && !used_i.contains(&e.item) {
            used_a.insert(e.agent);
            used_i.insert(e.item);
            chosen.push((e.agent, e.item));
            walk(edges, idx + 1, used_a, used_i, chosen, weight + e.weight, best);
            chosen.pop();
            used_a.remove(&e.agent);
            used_i.remove(&e.item);
        }
    }

    let mut best: Key = (0, Value::zero(), Vec::new());
    walk(
        &edges,
        0,
        &mut BTreeSet::new(),
        &mut BTreeSet::new(),
        &mut Vec::new(),
        Value::zero(),
        &mut best,
    );
    Ok(Matching { pairs: best.2 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub agents: Vec<usize>,
    pub items: Vec<usize>,
}

/// Connected components over agent and item nodes. Isolated nodes form their own
/// components. Components come out ordered by their smallest agent, item-only
/// components last.
pub fn connected_components(graph: &RoundGraph) -> Vec<Component> {
    let na = graph.agents.len();
    let mut parent: Vec<usize> = (0..na + graph.items.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for e in &graph.edges {
        let a = graph.agents.iter().position(|&x| x == e.agent);
        let g = graph.items.iter().position(|&x| x == e.item);
        if let (Some(a), Some(g)) = (a, g) {
            let (ra, rg) = (find(&mut parent, a), find(&mut parent, na + g));
            if ra != rg {
                parent[ra] = rg;
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut comps: Vec<Component> = Vec::new();
    for node in 0..parent.len() {
        let root = find(&mut parent, node);
        let idx = match roots.iter().position(|&r| r == root) {
            Some(i) => i,
            None => {
                roots.push(root);
                comps.push(Component {
                    agents: Vec::new(),
                    items: Vec::new(),
                });
                roots.len() - 1
            }
        };
        if node < na {
            comps[idx].agents.push(graph.agents[node]);
        } else {
            comps[idx].items.push(graph.items[node - na]);
        }
    }
    for c in &mut comps {
        c.agents.sort_unstable();
        c.items.sort_unstable();
    }
    comps.sort_by_key(|c| (c.agents.first().copied().unwrap_or(usize::MAX), c.items.first().copied()));
    comps
}

/// In every component where some but not all agents are matched, the largest
/// weight among unmatched agents is at most the smallest weight among matched
/// ones. Assumes each agent's edges share one weight.
pub fn check_unmatched_weights_dominated(graph: &RoundGraph, matching: &Matching) -> std::result::Result<(), String> {
    let weight_of = |agent: usize| graph.edges.iter().find(|e| e.agent == agent).map(|e| e.weight);
    for comp in connected_components(graph) {
        let (unmatched, matched): (Vec<usize>, Vec<usize>) =
            comp.agents.iter().partition(|&&a| !matching.is_matched(a));
        if unmatched.is_empty() || matched.is_empty() {
            continue;
        }
        let hi = unmatched.iter().filter_map(|&a| weight_of(a)).max();
        let lo = matched.iter().filter_map(|&a| weight_of(a)).min();
        if let (Some(hi), Some(lo)) = (hi, lo) {
            if hi > lo {
                return Err(format!(
                    "component {:?}: unmatched weight {hi} exceeds matched weight {lo}",
                    comp.agents
                ));
            }
        }
    }
    Ok(())
}

/// Matched agents reachable from the unmatched agent `from` along alternating paths:
/// a non-matching edge from an agent to an item, then that item's matching edge.
pub fn alternating_reach(graph: &RoundGraph, matching: &Matching, from: usize) -> Vec<usize> {
    let holder = |item: usize| matching.pairs.iter().find(|p| p.1 == item).map(|p| p.0);
    let mut seen = BTreeSet::from([from]);
    let mut stack = vec![from];
    while let Some(agent) = stack.pop() {
        let own = matching.item_of(agent);
        for e in graph.edges.iter().filter(|e| e.agent == agent && Some(e.item) != own) {
            if let Some(next) = holder(e.item) {
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    seen.remove(&from);
    seen.into_iter().collect()
}

/// No unmatched agent outweighs a matched agent it reaches by an alternating path.
/// Holds for every maximum-cardinality maximum-weight matching.
pub fn check_alternating_weights_dominated(
    graph: &RoundGraph,
    matching: &Matching,
) -> std::result::Result<(), String> {
    let weight_of = |agent: usize| graph.edges.iter().find(|e| e.agent == agent).map(|e| e.weight);
    for &u in graph.agents.iter().filter(|&&a| !matching.is_matched(a)) {
        let Some(wu) = weight_of(u) else { continue };
        for i in alternating_reach(graph, matching, u) {
            if let Some(wi) = weight_of(i) {
                if wu > wi {
                    return Err(format!(
                        "unmatched agent {u} (weight {wu}) reaches matched agent {i} (weight {wi})"
                    ));
                }
            }
        }
    }
    Ok(())
}
