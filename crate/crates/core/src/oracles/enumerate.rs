use num_traits::{One, Zero};

use crate::allocation::Allocation;
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::{Value, TABLE_ITEM_CAP};

use super::{count_pow, mu, pair_share_table, Budget, FairnessNotion};

/// Walks all `n^m` allocations in lexicographic order of the owner string
/// `(owner(0), owner(1), …, owner(m-1))`, starting with everything held by agent 0.
///
/// Empty bundles are included.
pub struct AllocationEnumerator {
    n: usize,
    owners: Vec<usize>,
    bundles: Vec<Bundle>,
    started: bool,
    done: bool,
}

impl AllocationEnumerator {
    pub fn new(n: usize, m: usize) -> Self {
        assert!(n >= 1);
        let mut bundles = vec![Bundle::EMPTY; n];
        bundles[0] = Bundle::full(m);
        AllocationEnumerator {
            n,
            owners: vec![0; m],
            bundles,
            started: false,
            done: false,
        }
    }

    /// Advances to the next allocation and returns its bundles.
    pub fn advance(&mut self) -> Option<&[Bundle]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.bundles);
        }
        let mut pos = self.owners.len();
        loop {
            if pos == 0 {
                self.done = true;
                return None;
            }
            pos -= 1;
            let from = self.owners[pos];
            self.bundles[from].remove(pos);
            if from + 1 < self.n {
                self.owners[pos] = from + 1;
                self.bundles[from + 1].insert(pos);
                return Some(&self.bundles);
            }
            self.owners[pos] = 0;
            self.bundles[0].insert(pos);
        }
    }

    pub fn owners(&self) -> &[usize] {
        &self.owners
    }
}

/// Precomputed value and pair-share tables so a fairness verdict costs `O(n²)`
/// lookups (`O(n² m)` for EFX) instead of fresh enumerations.
pub struct FairnessTables {
    n: usize,
    values: Vec<Vec<Value>>,
    pair_shares: Vec<Vec<Value>>,
    mms_shares: Option<Vec<Value>>,
    positive: Vec<Bundle>,
    additive: bool,
}

impl FairnessTables {
    /// Builds the tables needed for `notion`. Pair shares cost `3^m` per agent,
    /// MMS shares `n^m`.
    pub fn build(inst: &Instance, notion: FairnessNotion, budget: Budget) -> Result<Self> {
        let (n, m) = (inst.n(), inst.m());
        if m > TABLE_ITEM_CAP {
            return Err(Error::TooManyItems {
                items: m,
                cap: TABLE_ITEM_CAP,
            });
        }
        let values = inst
            .valuations()
            .iter()
            .map(|v| v.materialize())
            .collect::<Result<Vec<_>>>()?;
        let pair_shares = if notion == FairnessNotion::Pmms {
            budget.check(count_pow(3, m))?;
            values.iter().map(|t| pair_share_table(t)).collect()
        } else {
            Vec::new()
        };
        let mms_shares = if notion == FairnessNotion::Mms {
            let shares = inst
                .valuations()
                .iter()
                .map(|v| mu(v, inst.items(), n, budget).map(|r| r.mu))
                .collect::<Result<Vec<_>>>()?;
            Some(shares)
        } else {
            None
        };
        let positive = inst
            .valuations()
            .iter()
            .map(|v| (0..m).filter(|&g| !v.singleton(g).is_zero()).collect())
            .collect();
        Ok(FairnessTables {
            n,
            values,
            pair_shares,
            mms_shares,
            positive,
            additive: inst.valuations().iter().all(|v| v.is_additive()),
        })
    }

    fn value(&self, agent: usize, bundle: Bundle) -> Value {
        self.values[agent][bundle.mask() as usize]
    }

    pub fn mms_share(&self, agent: usize) -> Option<Value> {
        self.mms_shares.as_ref().map(|s| s[agent])
    }

    fn efx(&self, bundles: &[Bundle], candidates: impl Fn(usize) -> Bundle) -> bool {
        (0..self.n).all(|i| {
            let own = self.value(i, bundles[i]);
            (0..self.n).filter(|&j| j != i).all(|j| {
                (bundles[j] & candidates(i))
                    .items()
                    .all(|g| own >= self.value(i, bundles[j].without(g)))
            })
        })
    }

    /// Verdict for `notion` on `bundles`. Panics if the tables were built for a
    /// different notion that needs other data.
    pub fn holds(&self, notion: FairnessNotion, bundles: &[Bundle]) -> bool {
        match notion {
            FairnessNotion::Efx => self.efx(bundles, |_| Bundle::full(64)),
            FairnessNotion::EfxPositive => {
                assert!(self.additive, "EFX over positive goods needs additive valuations");
                self.efx(bundles, |i| self.positive[i])
            }
            FairnessNotion::Pmms => {
                assert!(!self.pair_shares.is_empty(), "tables built without pair shares");
                (0..self.n).all(|i| {
                    let own = self.value(i, bundles[i]);
                    (0..self.n).filter(|&j| j != i).all(|j| {
                        own >= self.pair_shares[i][(bundles[i] | bundles[j]).mask() as usize]
                    })
                })
            }
            FairnessNotion::Mms => {
                let shares = self.mms_shares.as_ref().expect("tables built without MMS shares");
                (0..self.n).all(|i| self.value(i, bundles[i]) >= shares[i])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Allocations examined, including the one found.
    pub scanned: u64,
    pub found: Option<Allocation>,
}

/// The lexicographically first allocation satisfying `notion`, scanning all `n^m`.
pub fn exists_fair_allocation(
    inst: &Instance,
    notion: FairnessNotion,
    budget: Budget,
) -> Result<SearchOutcome> {
    budget.check(count_pow(inst.n(), inst.m()))?;
    if notion == FairnessNotion::EfxPositive {
        if let Some(agent) = inst.valuations().iter().position(|v| !v.is_additive()) {
            return Err(Error::WrongClass {
                operation: "EFX over positively valued goods",
                expected: "additive",
                agent,
                found: inst.valuation(agent).class(),
            });
        }
    }
    let tables = FairnessTables::build(inst, notion, budget)?;
    let mut walk = AllocationEnumerator::new(inst.n(), inst.m());
    let mut scanned = 0u64;
    while let Some(bundles) = walk.advance() {
        scanned += 1;
        if tables.holds(notion, bundles) {
            return Ok(SearchOutcome {
                scanned,
                found: Some(Allocation::new(bundles.to_vec())),
            });
        }
    }
    Ok(SearchOutcome {
        scanned,
        found: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashOutcome {
    pub max_nw: Value,
    /// Every maximiser, in lexicographic owner-string order.
    pub argmax: Vec<Allocation>,
    pub scanned: u64,
}

/// Exact maximum of `∏ v_i(X_i)` over all allocations, with all maximisers.
pub fn nash_welfare_maximizers(inst: &Instance, budget: Budget) -> Result<NashOutcome> {
    budget.check(count_pow(inst.n(), inst.m()))?;
    let mut walk = AllocationEnumerator::new(inst.n(), inst.m());
    let mut best: Option<Value> = None;
    let mut argmax = Vec::new();
    let mut scanned = 0u64;
    while let Some(bundles) = walk.advance() {
        scanned += 1;
        let product = bundles
            .iter()
            .enumerate()
            .fold(Value::one(), |acc, (i, &b)| {
                if acc.is_zero() {
                    acc
                } else {
                    acc * inst.value(i, b)
                }
            });
        match best {
            Some(b) if product < b => {}
            Some(b) if product == b => argmax.push(Allocation::new(bundles.to_vec())),
            _ => {
                best = Some(product);
                argmax.clear();
                argmax.push(Allocation::new(bundles.to_vec()));
            }
        }
    }
    Ok(NashOutcome {
        max_nw: best.expect("at least one allocation"),
        argmax,
        scanned,
    })
}
