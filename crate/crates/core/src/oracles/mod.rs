//! Exhaustive ground truth: fair shares, fairness checks and allocation scans.
//!
//! Nothing in here approximates. Every enumeration is sized up front against a
//! [`Budget`] and refuses to start if it would exceed it.

mod compat;
mod enumerate;
mod fairness;
mod feasibility;
mod share;

pub use compat::{CompatGraph, CompatNode};
pub use enumerate::{
    exists_fair_allocation, nash_welfare_maximizers, AllocationEnumerator, FairnessTables,
    NashOutcome, SearchOutcome,
};
pub use fairness::{
    check, check_efx, check_efx_positive, check_mms, check_pmms, FairnessNotion, FairnessReport,
    Violation, Witness,
};
pub use feasibility::{check_mms_feasible, mms_feasibility_counterexample};
pub use share::{mu, pair_share_table, MaximinResult};

use crate::error::{Error, Result};

/// Upper bound on the number of candidates (partitions, allocations, subset pairs)
/// an oracle may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);

    pub fn check(self, required: u128) -> Result<()> {
        if required > self.0 as u128 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn count_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
