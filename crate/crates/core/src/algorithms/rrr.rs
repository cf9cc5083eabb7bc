//! Reversed Round-Robin for pair-demand valuations: one pick per agent in
//! increasing index order, one more in decreasing order, leftovers to a single
//! agent. With fewer than `2n` items the instance is padded with items every agent
//! values at zero, and those never appear in the result.

use num_traits::Zero;
use serde::Serialize;

use crate::allocation::Allocation;
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracles::{mu, Budget};
use crate::valuation::{Valuation, ValuationClass};
use crate::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RrrTrace {
    /// `(agent, item)` picks of the forward pass; items `>= m` are padding.
    pub forward: Vec<(usize, usize)>,
    /// `(agent, item)` picks of the reverse pass.
    pub backward: Vec<(usize, usize)>,
    /// Real items given to `leftover_owner` after both passes.
    pub leftovers: Vec<usize>,
    pub leftover_owner: usize,
    /// Number of padding items added.
    pub padding: usize,
}

impl RrrTrace {
    /// `(g_i, h_i)` for `agent`.
    pub fn picks(&self, agent: usize) -> (usize, usize) {
        let g = self.forward.iter().find(|p| p.0 == agent).expect("every agent picks").1;
        let h = self.backward.iter().find(|p| p.0 == agent).expect("every agent picks").1;
        (g, h)
    }

    /// Forward picks, backward picks, leftovers and padding, one line each.
    /// Padding items print as `pad1`, `pad2`, …
    pub fn to_log(&self, inst: &Instance) -> String {
        let m = inst.m();
        let item = |g: usize| if g < m { inst.label(g) } else { format!("pad{}", g - m + 1) };
        let picks = |ps: &[(usize, usize)]| {
            ps.iter().map(|&(i, g)| format!("{i}:{}", item(g))).collect::<Vec<_>>().join(",")
        };
        let leftovers = match self.leftovers.is_empty() {
            true => "-".to_string(),
            false => self.leftovers.iter().map(|&g| item(g)).collect::<Vec<_>>().join(","),
        };
        format!(
            "forward {}\nbackward {}\nleftovers {}:{}\npadding {}\n",
            picks(&self.forward),
            picks(&self.backward),
            self.leftover_owner,
            leftovers,
            self.padding
        )
    }
}

/// Reversed Round-Robin with leftovers going to agent 0.
pub fn reversed_round_robin(inst: &Instance) -> Result<Allocation> {
    reversed_round_robin_with_owner(inst, 0)
}

pub fn reversed_round_robin_with_owner(inst: &Instance, leftover_owner: usize) -> Result<Allocation> {
    Ok(reversed_round_robin_traced(inst, leftover_owner)?.0)
}

/// Picks break ties toward the lowest item index, so padding (highest indices) is
/// taken only when nothing real is left.
pub fn reversed_round_robin_traced(inst: &Instance, leftover_owner: usize) -> Result<(Allocation, RrrTrace)> {
    inst.require_class("reversed round-robin", ValuationClass::PairDemand)?;
    let (n, m) = (inst.n(), inst.m());
    if leftover_owner >= n {
        return Err(Error::InvalidArgument(format!(
            "leftover owner {leftover_owner} out of range for {n} agents"
        )));
    }
    let total = m.max(2 * n);
    let singleton = |i: usize, g: usize| -> Value {
        if g < m {
            inst.valuation(i).singleton(g)
        } else {
            Value::zero()
        }
    };
    let mut pool: Vec<bool> = vec![true; total];
    let mut pick = |i: usize| -> usize {
        let mut best: Option<(usize, Value)> = None;
        for g in (0..total).filter(|&g| pool[g]) {
            let x = singleton(i, g);
            if best.is_none_or(|(_, b)| x > b) {
                best = Some((g, x));
            }
        }
        let g = best.expect("at least 2n items").0;
        pool[g] = false;
        g
    };
    let forward: Vec<(usize, usize)> = (0..n).map(|i| (i, pick(i))).collect();
    let backward: Vec<(usize, usize)> = (0..n).rev().map(|i| (i, pick(i))).collect();
    let leftovers: Vec<usize> = (0..m).filter(|&g| pool[g]).collect();

    let mut bundles = vec![Bundle::EMPTY; n];
    for &(i, g) in forward.iter().chain(&backward) {
        if g < m {
            bundles[i].insert(g);
        }
    }
    for &g in &leftovers {
        bundles[leftover_owner].insert(g);
    }
    let trace = RrrTrace {
        forward,
        backward,
        leftovers,
        leftover_owner,
        padding: total - m,
    };
    Ok((Allocation::new(bundles), trace))
}

/// Share of a pair-demand agent over four items via `min(v{a,d}, v{b,c})` after
/// sorting `a <= b <= c <= d`. Errors if it disagrees with exhaustive search.
pub fn lemma_pair_demand_mu(values: &[Value]) -> Result<Value> {
    if values.len() != 4 {
        return Err(Error::InvalidArgument(format!(
            "expected 4 item values, got {}",
            values.len()
        )));
    }
    let mut s = values.to_vec();
    s.sort();
    let closed = (s[0] + s[3]).min(s[1] + s[2]);
    let v = Valuation::pair_demand(values.to_vec());
    if let Err(reason) = v.check() {
        return Err(Error::InvalidValuation { agent: 0, reason });
    }
    let brute = mu(&v, Bundle::full(4), 2, Budget::DEFAULT)?.mu;
    if closed != brute {
        return Err(Error::InvalidArgument(format!(
            "closed form {closed} differs from exhaustive share {brute} for {values:?}"
        )));
    }
    Ok(closed)
}
