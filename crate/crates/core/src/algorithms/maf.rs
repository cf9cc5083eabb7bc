//! Match-and-Freeze for personalized bivalued instances.
//!
//! Each round builds a graph between active agents and the remaining items they
//! value highly, weighted by `a_i / b_i`, takes a maximum-cardinality matching of
//! maximum weight, freezes the matched agents of every component that left some
//! agent unmatched, and lets the unmatched active agents pick a leftover item in
//! priority order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use crate::allocation::Allocation;
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matching::{
    alternating_reach, check_alternating_weights_dominated, check_unmatched_weights_dominated,
    connected_components, max_cardinality_max_weight_matching, Edge, Matching, RoundGraph,
};
use crate::valuation::{Valuation, ValuationClass};
use crate::{int, Value};

/// Who gets frozen after a round's matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FreezeRule {
    /// Every matched agent of a component with unmatched agents, for `⌊t − 1⌋`
    /// rounds with `t` the largest unmatched ratio in the component.
    #[default]
    Component,
    /// Each matched agent reached by an alternating path from some unmatched
    /// agent, for `⌊t − 1⌋` rounds with `t` the largest ratio among those agents.
    AlternatingPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MafRound {
    /// 1-based round number.
    pub round: usize,
    pub active: Vec<usize>,
    pub graph: RoundGraph,
    pub matching: Matching,
    /// `(agent, rounds)` for agents frozen at the end of this round.
    pub frozen_now: Vec<(usize, usize)>,
    /// `(agent, item)` picks by unmatched agents, in picking order.
    pub leftovers: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MafTrace {
    pub rule: FreezeRule,
    pub rounds: Vec<MafRound>,
    /// Final priorities `w_i`.
    pub priorities: Vec<usize>,
    /// Last round in which an item agent `i` values at `a_i` was handed out; 0 if never.
    pub last_high_round: Vec<usize>,
    /// Stand-in for `a_i / b_i` when `b_i = 0`.
    #[serde(with = "crate::document::rational")]
    pub k: Value,
    /// Effective ratio per agent, `K` where `b_i = 0`.
    #[serde(with = "crate::document::rational_vec")]
    pub ratios: Vec<Value>,
}

fn parts(v: &Valuation) -> (Value, Value, Bundle) {
    match v {
        Valuation::PersonalizedBivalued { a, b, high, .. } => (*a, *b, *high),
        _ => unreachable!("class checked by caller"),
    }
}

/// `K = m · (1 + largest finite a_i / b_i)`, 0 taken as the largest ratio when none is finite.
fn big_k(inst: &Instance) -> Value {
    let max_finite = inst
        .valuations()
        .iter()
        .map(parts)
        .filter(|(_, b, _)| !b.is_zero())
        .map(|(a, b, _)| a / b)
        .max()
        .unwrap_or_else(Value::zero);
    int(inst.m() as i64) * (int(1) + max_finite)
}

/// Runs Match-and-Freeze with the component freeze rule. Unmatched agents pick in
/// increasing `(w_i, i)` order and take the lowest-index remaining item; a freeze
/// lasts `⌊t − 1⌋` rounds, cut short at round `m`.
pub fn match_and_freeze(inst: &Instance) -> Result<(Allocation, MafTrace)> {
    match_and_freeze_with(inst, FreezeRule::Component)
}

/// Freeze targets and their `t` for one round.
fn freeze_plan(
    rule: FreezeRule,
    graph: &RoundGraph,
    matching: &Matching,
    ratios: &[Value],
) -> Vec<(usize, Value)> {
    let mut plan: Vec<(usize, Value)> = Vec::new();
    match rule {
        FreezeRule::Component => {
            for comp in connected_components(graph) {
                let t = comp
                    .agents
                    .iter()
                    .filter(|&&i| !matching.is_matched(i))
                    .map(|&i| ratios[i])
                    .max();
                if let Some(t) = t {
                    for &i in comp.agents.iter().filter(|&&i| matching.is_matched(i)) {
                        plan.push((i, t));
                    }
                }
            }
        }
        FreezeRule::AlternatingPath => {
            for &u in graph.agents.iter().filter(|&&a| !matching.is_matched(a)) {
                for i in alternating_reach(graph, matching, u) {
                    match plan.iter_mut().find(|p| p.0 == i) {
                        Some(p) => p.1 = p.1.max(ratios[u]),
                        None => plan.push((i, ratios[u])),
                    }
                }
            }
        }
    }
    plan.sort_unstable_by_key(|p| p.0);
    plan
}

fn freeze_length(t: Value, round: usize, m: usize) -> usize {
    ((t - int(1)).floor().to_integer().max(0) as usize).min(m - round)
}

pub fn match_and_freeze_with(inst: &Instance, rule: FreezeRule) -> Result<(Allocation, MafTrace)> {
    inst.require_class("match-and-freeze", ValuationClass::PersonalizedBivalued)?;
    let (n, m) = (inst.n(), inst.m());
    let k = big_k(inst);
    let ratios: Vec<Value> = inst
        .valuations()
        .iter()
        .map(parts)
        .map(|(a, b, _)| if b.is_zero() { k } else { a / b })
        .collect();
    let highs: Vec<Bundle> = inst.valuations().iter().map(|v| parts(v).2).collect();

    let mut pool = inst.items();
    let mut w = vec![0usize; n];
    // frozen_until[i]: agent i sits out every round <= this
    let mut frozen_until = vec![0usize; n];
    let mut bundles = vec![Bundle::EMPTY; n];
    let mut last_high = vec![0usize; n];
    let mut rounds = Vec::new();

    let mut r = 0;
    while !pool.is_empty() {
        r += 1;
        if r > m {
            return Err(Error::InvalidArgument(format!(
                "match-and-freeze did not finish within {m} rounds"
            )));
        }
        let active: Vec<usize> = (0..n).filter(|&i| frozen_until[i] < r).collect();
        let mut edges = Vec::new();
        for &i in &active {
            for g in (pool & highs[i]).items() {
                edges.push(Edge {
                    agent: i,
                    item: g,
                    weight: ratios[i],
                });
            }
        }
        let graph = RoundGraph {
            agents: active.clone(),
            items: pool.items().collect(),
            edges,
        };
        let matching = max_cardinality_max_weight_matching(&graph);
        for &(i, g) in &matching.pairs {
            bundles[i].insert(g);
            pool.remove(g);
        }

        let mut frozen_now = Vec::new();
        for (i, t) in freeze_plan(rule, &graph, &matching, &ratios) {
            let duration = freeze_length(t, r, m);
            frozen_until[i] = r + duration;
            w[i] = r;
            frozen_now.push((i, duration));
        }

        let mut pickers: Vec<usize> =
            active.iter().copied().filter(|&i| !matching.is_matched(i)).collect();
        pickers.sort_by_key(|&i| (w[i], i));
        let mut leftovers = Vec::new();
        for i in pickers {
            let Some(g) = pool.first() else { break };
            bundles[i].insert(g);
            pool.remove(g);
            leftovers.push((i, g));
        }

        let handed_out = matching.pairs.iter().chain(&leftovers).map(|p| p.1);
        let handed_out: Bundle = handed_out.collect();
        for (i, last) in last_high.iter_mut().enumerate() {
            if !(handed_out & highs[i]).is_empty() {
                *last = r;
            }
        }

        rounds.push(MafRound {
            round: r,
            active,
            graph,
            matching,
            frozen_now,
            leftovers,
        });
    }

    let trace = MafTrace {
        rule,
        rounds,
        priorities: w,
        last_high_round: last_high,
        k,
        ratios,
    };
    Ok((Allocation::new(bundles), trace))
}

impl MafTrace {
    /// Item agent `i` received in `round`, if any.
    pub fn received(&self, agent: usize, round: usize) -> Option<usize> {
        let rd = self.rounds.get(round.checked_sub(1)?)?;
        rd.matching
            .item_of(agent)
            .or_else(|| rd.leftovers.iter().find(|p| p.0 == agent).map(|p| p.1))
    }

    /// Rounds in which `agent` was not active.
    pub fn frozen_rounds(&self, agent: usize) -> Vec<usize> {
        self.rounds
            .iter()
            .filter(|rd| !rd.active.contains(&agent))
            .map(|rd| rd.round)
            .collect()
    }

    /// Line-oriented log: one line per round, then priorities, last high rounds
    /// and the final own values. Items are printed by label.
    pub fn to_log(&self, inst: &Instance, x: &Allocation) -> String {
        fn list<T>(xs: &[T], f: impl Fn(&T) -> String) -> String {
            if xs.is_empty() {
                "-".to_string()
            } else {
                xs.iter().map(f).collect::<Vec<_>>().join(",")
            }
        }
        let mut out = String::new();
        for rd in &self.rounds {
            let _ = writeln!(
                out,
                "round {} active={} matched={} frozen={} leftovers={}",
                rd.round,
                list(&rd.active, |i| i.to_string()),
                list(&rd.matching.pairs, |&(i, g)| format!("{i}:{}", inst.label(g))),
                list(&rd.frozen_now, |&(i, d)| format!("{i}+{d}")),
                list(&rd.leftovers, |&(i, g)| format!("{i}:{}", inst.label(g))),
            );
        }
        let _ = writeln!(out, "priorities {}", list(&self.priorities, |w| w.to_string()));
        let _ = writeln!(out, "last_high_round {}", list(&self.last_high_round, |r| r.to_string()));
        let values = x.own_values(inst);
        let _ = writeln!(out, "values {}", list(&values, crate::document::fmt_rational));
        out
    }

    /// First violation found by [`MafTrace::invariant_violations`], if any. The
    /// equal-freezes form is not required; the containment form is.
    pub fn verify_invariants(&self, inst: &Instance) -> std::result::Result<(), String> {
        let mut found = self.invariant_violations(inst).into_iter();
        match found.find(|v| v.0 != Invariant::SharedFreezeEqual) {
            Some((kind, msg)) => Err(format!("{}: {msg}", kind.name())),
            None => Ok(()),
        }
    }

    /// Every violated structural property, in the order checked.
    pub fn invariant_violations(&self, inst: &Instance) -> Vec<(Invariant, String)> {
        let (n, m) = (inst.n(), inst.m());
        let highs: Vec<Bundle> = inst.valuations().iter().map(|v| parts(v).2).collect();
        let mut out = Vec::new();

        let mut seen = BTreeSet::new();
        for rd in &self.rounds {
            for &(_, g) in rd.matching.pairs.iter().chain(&rd.leftovers) {
                if !seen.insert(g) {
                    out.push((Invariant::ItemsOnce, format!("item {g} handed out twice")));
                }
            }
        }
        if seen.len() != m {
            out.push((Invariant::ItemsOnce, format!("{} of {m} items handed out", seen.len())));
        }

        for rd in &self.rounds {
            let r = rd.round;
            if !rd.matching.is_valid_for(&rd.graph) {
                out.push((Invariant::Matching, format!("round {r}: not a matching of the round graph")));
            }
            let dominated = match self.rule {
                FreezeRule::Component => check_unmatched_weights_dominated(&rd.graph, &rd.matching),
                FreezeRule::AlternatingPath => {
                    check_alternating_weights_dominated(&rd.graph, &rd.matching)
                }
            };
            if let Err(e) = dominated {
                out.push((Invariant::WeightOrder, format!("round {r}: {e}")));
            }
            let expected: Vec<(usize, usize)> =
                freeze_plan(self.rule, &rd.graph, &rd.matching, &self.ratios)
                    .into_iter()
                    .map(|(i, t)| (i, freeze_length(t, r, m)))
                    .collect();
            if rd.frozen_now != expected {
                out.push((
                    Invariant::FreezePlan,
                    format!("round {r}: frozen {:?}, expected {expected:?}", rd.frozen_now),
                ));
            }
        }

        let high_received = |i: usize, r: usize, agent: usize| {
            self.received(agent, r).is_some_and(|g| highs[i].contains(g))
        };
        let frozen: Vec<Vec<usize>> = (0..n).map(|i| self.frozen_rounds(i)).collect();
        for i in 0..n {
            let ri = self.last_high_round[i];
            for r in 1..ri {
                if let Some(g) = self.received(i, r) {
                    if !highs[i].contains(g) {
                        out.push((
                            Invariant::HighBeforeLast,
                            format!("agent {i} received low item {g} in round {r} before r_i = {ri}"),
                        ));
                    }
                }
            }
            if !frozen[i].is_empty() {
                let span = (self.ratios[i] - int(1)).floor().to_integer().max(0) as usize;
                if ri == 0 || !high_received(i, ri, i) {
                    out.push((
                        Invariant::FreezeWindow,
                        format!("agent {i} was frozen without a high item in r_i = {ri}"),
                    ));
                } else if frozen[i].iter().any(|&f| f <= ri || f > ri + span) {
                    out.push((
                        Invariant::FreezeWindow,
                        format!("agent {i} frozen in {:?}, outside {}..={}", frozen[i], ri + 1, ri + span),
                    ));
                }
            }
            if ri > 0 && high_received(i, ri, i) {
                for j in (0..n).filter(|&j| j != i && high_received(i, ri, j)) {
                    let contained = frozen[i].iter().all(|f| frozen[j].contains(f));
                    if !contained {
                        out.push((
                            Invariant::SharedFreezeSubset,
                            format!(
                                "agents {i} and {j} took {i}-high items in round {ri}; frozen {:?} not within {:?}",
                                frozen[i], frozen[j]
                            ),
                        ));
                    }
                    if frozen[i] != frozen[j] {
                        out.push((
                            Invariant::SharedFreezeEqual,
                            format!(
                                "agents {i} and {j} took {i}-high items in round {ri}; frozen {:?} vs {:?}",
                                frozen[i], frozen[j]
                            ),
                        ));
                    }
                }
            }
        }
        out
    }
}

/// Properties checked on a finished run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    /// Each item leaves the pool exactly once and the pool ends empty.
    ItemsOnce,
    /// The recorded matching is a matching of the round graph.
    Matching,
    /// Freeze targets and lengths `min(⌊t − 1⌋, m − r)` follow the freeze rule.
    FreezePlan,
    /// Unmatched ratios never exceed the ratios of the matched agents they can
    /// freeze (same component, or alternating path, per the rule).
    WeightOrder,
    /// Before `r_i`, whatever agent `i` receives is high-valued to `i`.
    HighBeforeLast,
    /// A frozen agent got a high item in round `r_i` and its frozen rounds lie in
    /// `r_i + 1 ..= r_i + ⌊ratio_i − 1⌋`.
    FreezeWindow,
    /// If `i` and `j` both received an `a_i`-valued item in round `r_i`, every
    /// round `i` is frozen in, `j` is frozen in too.
    SharedFreezeSubset,
    /// As above, with equal frozen rounds.
    SharedFreezeEqual,
}

impl Invariant {
    pub const ALL: [Invariant; 8] = [
        Invariant::ItemsOnce,
        Invariant::Matching,
        Invariant::FreezePlan,
        Invariant::WeightOrder,
        Invariant::HighBeforeLast,
        Invariant::FreezeWindow,
        Invariant::SharedFreezeSubset,
        Invariant::SharedFreezeEqual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::ItemsOnce => "items_once",
            Invariant::Matching => "matching",
            Invariant::FreezePlan => "freeze_plan",
            Invariant::WeightOrder => "weight_order",
            Invariant::HighBeforeLast => "high_before_last",
            Invariant::FreezeWindow => "freeze_window",
            Invariant::SharedFreezeSubset => "shared_freeze_subset",
            Invariant::SharedFreezeEqual => "shared_freeze_equal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NoEnvyCertificate {
    pub efx_safe: bool,
    pub pmms_safe: bool,
}

/// Quick certificate that agent `i` (valuation `v`) does not envy the holder of
/// `xj`: `v(X_i) >= v(X_j) − b` rules out EFX envy, and also PMMS envy when `v`
/// is factored. A `false` is inconclusive, not a violation.
pub fn sufficient_no_envy(v: &Valuation, xi: Bundle, xj: Bundle) -> Result<NoEnvyCertificate> {
    let Valuation::PersonalizedBivalued { b, .. } = v else {
        return Err(Error::WrongClass {
            operation: "sufficient_no_envy",
            expected: "personalized bivalued",
            agent: 0,
            found: v.class(),
        });
    };
    let efx_safe = v.value(xi)? >= v.value(xj)? - *b;
    Ok(NoEnvyCertificate {
        efx_safe,
        pmms_safe: efx_safe && v.is_factored(),
    })
}
