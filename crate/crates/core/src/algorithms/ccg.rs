//! Cut-and-Choose-Graph for binary-valued (0/1) valuations, which need not be
//! monotone or normalized.
//!
//! Starting from round-robin, every iteration picks the lowest-index agent `s`
//! whose pairwise share is violated, builds the pointer graph `π` relative to `s`
//! and follows it from `s`. If the walk closes at `s` everyone on it takes the
//! bundle they point to. Otherwise the walk closes at some `i_w`: the agent that
//! led into `i_w` and the last agent on the walk split `X_s ∪ X_{i_w}` by cut and
//! choose, and the rest of the walk shifts bundles as before.

use serde::Serialize;

use crate::allocation::Allocation;
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracles::{mu, Budget};
use crate::valuation::ValuationClass;
use crate::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CcgCase {
    Cycle,
    Lollipop,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CcgIteration {
    pub s: usize,
    pub pi: Vec<usize>,
    /// `i_0 = s, i_1, …, i_k`.
    pub walk: Vec<usize>,
    pub case: CcgCase,
    pub swap_applied: bool,
    /// Sum of own values at the start of the iteration.
    #[serde(rename = "W")]
    pub w: usize,
    /// Agents whose pairwise share holds at the start of the iteration.
    #[serde(rename = "E")]
    pub e: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CcgTrace {
    pub iterations: Vec<CcgIteration>,
    /// `(W, E)` of the returned allocation.
    pub final_potential: (usize, usize),
}

impl CcgTrace {
    /// `(W, E)` before each iteration followed by the final one.
    pub fn potentials(&self) -> Vec<(usize, usize)> {
        self.iterations
            .iter()
            .map(|it| (it.w, it.e))
            .chain(std::iter::once(self.final_potential))
            .collect()
    }

    pub fn potential_strictly_increases(&self) -> bool {
        self.potentials().windows(2).all(|p| p[0] < p[1])
    }

    /// One line per iteration.
    pub fn to_log(&self) -> String {
        let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut out = String::new();
        for (t, it) in self.iterations.iter().enumerate() {
            out.push_str(&format!(
                "iteration {} s={} pi={} walk={} case={} swap={} W={} E={}\n",
                t + 1,
                it.s,
                join(&it.pi),
                join(&it.walk),
                match it.case {
                    CcgCase::Cycle => "cycle",
                    CcgCase::Lollipop => "lollipop",
                },
                it.swap_applied,
                it.w,
                it.e
            ));
        }
        out.push_str(&format!(
            "final W={} E={}\n",
            self.final_potential.0, self.final_potential.1
        ));
        out
    }
}

fn require_binary(inst: &Instance, operation: &'static str) -> Result<()> {
    inst.require_class(operation, ValuationClass::BinaryTable)
}

fn share(inst: &Instance, agent: usize, set: Bundle, budget: Budget) -> Result<Value> {
    Ok(mu(inst.valuation(agent), set, 2, budget)?.mu)
}

fn pmms_holds_for(inst: &Instance, bundles: &[Bundle], agent: usize, budget: Budget) -> Result<bool> {
    let own = inst.value(agent, bundles[agent]);
    for (j, &other) in bundles.iter().enumerate() {
        if j != agent && own < share(inst, agent, bundles[agent] | other, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The pointer graph relative to `s`: `π(i) = s` when `v_i(X_s) >= μ_i(X_s ∪ X_j)`
/// for every `j ≠ s`, otherwise the lowest such `j` where it fails.
pub fn build_cut_and_choose_graph(inst: &Instance, x: &Allocation, s: usize) -> Result<Vec<usize>> {
    require_binary(inst, "cut-and-choose graph")?;
    x.validate(inst)?;
    if s >= inst.n() {
        return Err(Error::InvalidArgument(format!("agent {s} out of range")));
    }
    pointer_graph(inst, &x.bundles, s, Budget::DEFAULT)
}

fn pointer_graph(inst: &Instance, bundles: &[Bundle], s: usize, budget: Budget) -> Result<Vec<usize>> {
    let mut pi = Vec::with_capacity(inst.n());
    for i in 0..inst.n() {
        let held = inst.value(i, bundles[s]);
        let mut target = s;
        for (j, &other) in bundles.iter().enumerate() {
            if j != s && held < share(inst, i, bundles[s] | other, budget)? {
                target = j;
                break;
            }
        }
        pi.push(target);
    }
    Ok(pi)
}

fn potential(inst: &Instance, bundles: &[Bundle], budget: Budget) -> Result<(usize, usize, Vec<bool>)> {
    let mut w = 0;
    let mut ok = Vec::with_capacity(bundles.len());
    for i in 0..inst.n() {
        w += inst.value(i, bundles[i]).to_integer() as usize;
        ok.push(pmms_holds_for(inst, bundles, i, budget)?);
    }
    let e = ok.iter().filter(|&&b| b).count();
    Ok((w, e, ok))
}

/// Runs Cut-and-Choose-Graph from the round-robin allocation. Fails with
/// `IterationCap` after `n²` iterations, which cannot happen on MMS-feasible input.
pub fn cut_and_choose_graph_procedure(inst: &Instance) -> Result<(Allocation, CcgTrace)> {
    require_binary(inst, "cut-and-choose-graph")?;
    let budget = Budget::DEFAULT;
    let n = inst.n();
    let cap = n * n;
    let mut bundles = Allocation::round_robin(n, inst.m()).bundles;
    let mut iterations = Vec::new();

    loop {
        let (w, e, ok) = potential(inst, &bundles, budget)?;
        let Some(s) = ok.iter().position(|&b| !b) else {
            let trace = CcgTrace {
                iterations,
                final_potential: (w, e),
            };
            return Ok((Allocation::new(bundles), trace));
        };
        if iterations.len() == cap {
            return Err(Error::IterationCap { cap });
        }

        let pi = pointer_graph(inst, &bundles, s, budget)?;
        let mut walk = vec![s];
        let mut last = s;
        while !walk.contains(&pi[last]) {
            last = pi[last];
            walk.push(last);
        }
        let close = walk.iter().position(|&a| a == pi[last]).expect("walk closes on itself");

        let old = bundles.clone();
        let mut swap_applied = false;
        let case = if close == 0 {
            for &i in &walk {
                bundles[i] = old[pi[i]];
            }
            CcgCase::Cycle
        } else {
            let (before, end) = (walk[close - 1], *walk.last().expect("non-empty walk"));
            let union = old[s] | old[walk[close]];
            let witness = mu(inst.valuation(end), union, 2, budget)?.witness;
            let (mut a, mut b) = (witness[0], witness[1]);
            if inst.value(before, a) < inst.value(before, b) {
                std::mem::swap(&mut a, &mut b);
                swap_applied = true;
            }
            for &i in &walk {
                if i != before && i != end {
                    bundles[i] = old[pi[i]];
                }
            }
            bundles[before] = a;
            bundles[end] = b;
            CcgCase::Lollipop
        };

        iterations.push(CcgIteration {
            s,
            pi,
            walk,
            case,
            swap_applied,
            w,
            e,
        });
    }
}
