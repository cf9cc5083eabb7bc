use std::fmt;

use thiserror::Error;

use crate::bundle::Bundle;
use crate::instance::Instance;

/// One bundle per agent. Valid allocations partition the item set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation {
    pub bundles: Vec<Bundle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AllocationViolation {
    #[error("expected {expected} bundles, found {found}")]
    AgentCount { expected: usize, found: usize },
    #[error("agent {agent} holds item {item}, which does not exist")]
    OutOfRange { agent: usize, item: usize },
    #[error("item {item} is held by both agent {first} and agent {second}")]
    Overlap {
        item: usize,
        first: usize,
        second: usize,
    },
    #[error("item {item} is not allocated")]
    Uncovered { item: usize },
}

impl Allocation {
    pub fn new(bundles: Vec<Bundle>) -> Self {
        Allocation { bundles }
    }

    pub fn from_item_lists(lists: &[&[usize]]) -> Self {
        Allocation {
            bundles: lists
                .iter()
                .map(|items| Bundle::from_items(items.iter().copied()))
                .collect(),
        }
    }

    /// `owners[g]` is the agent receiving item `g`.
    pub fn from_owners(owners: &[usize], n: usize) -> Self {
        let mut bundles = vec![Bundle::EMPTY; n];
        for (g, &owner) in owners.iter().enumerate() {
            bundles[owner].insert(g);
        }
        Allocation { bundles }
    }

    /// Item `g` goes to agent `g mod n`.
    pub fn round_robin(n: usize, m: usize) -> Self {
        let owners: Vec<usize> = (0..m).map(|g| g % n).collect();
        Self::from_owners(&owners, n)
    }

    pub fn n(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundle(&self, agent: usize) -> Bundle {
        self.bundles[agent]
    }

    pub fn owner(&self, item: usize) -> Option<usize> {
        self.bundles.iter().position(|b| b.contains(item))
    }

    /// Checks that the bundles partition the items of `inst`.
    pub fn validate(&self, inst: &Instance) -> Result<(), AllocationViolation> {
        if self.bundles.len() != inst.n() {
            return Err(AllocationViolation::AgentCount {
                expected: inst.n(),
                found: self.bundles.len(),
            });
        }
        let universe = inst.items();
        let mut seen = Bundle::EMPTY;
        let mut holder = vec![usize::MAX; inst.m()];
        for (agent, &bundle) in self.bundles.iter().enumerate() {
            if let Some(item) = (bundle - universe).first() {
                return Err(AllocationViolation::OutOfRange { agent, item });
            }
            if let Some(item) = (bundle & seen).first() {
                return Err(AllocationViolation::Overlap {
                    item,
                    first: holder[item],
                    second: agent,
                });
            }
            for g in bundle.items() {
                holder[g] = agent;
            }
            seen = seen | bundle;
        }
        match (universe - seen).first() {
            Some(item) => Err(AllocationViolation::Uncovered { item }),
            None => Ok(()),
        }
    }

    /// Value each agent derives from their own bundle.
    pub fn own_values(&self, inst: &Instance) -> Vec<crate::Value> {
        self.bundles
            .iter()
            .enumerate()
            .map(|(i, &b)| inst.value(i, b))
            .collect()
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, b) in self.bundles.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(">")
    }
}
