use crate::bundle::Bundle;
use crate::error::Result;
use crate::valuation::Valuation;

use super::{count_pow, Budget};

/// Whether `v` is MMS-feasible: for every `S`, every bipartition's larger side is
/// worth at least every bipartition's smaller side.
///
/// Quantifying over pairs of bipartitions collapses to comparing, per `S`, the
/// smallest max-side value against the largest min-side value (`μ(S, 2)`).
pub fn check_mms_feasible(v: &Valuation, budget: Budget) -> Result<bool> {
    Ok(mms_feasibility_counterexample(v, budget)?.is_none())
}

/// The first bundle (by mask) on which feasibility fails, if any.
pub fn mms_feasibility_counterexample(v: &Valuation, budget: Budget) -> Result<Option<Bundle>> {
    // every max side is at least half of v(S), every min side at most half
    if v.is_additive() {
        return Ok(None);
    }
    budget.check(count_pow(3, v.items()))?;
    let table = v.materialize()?;
    for mask in 0..table.len() as u64 {
        let set = Bundle::from_mask(mask);
        let mut best_min = None;
        let mut worst_max = None;
        for part in set.subsets() {
            let a = table[part.mask() as usize];
            let b = table[(set - part).mask() as usize];
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            if best_min.is_none_or(|x| lo > x) {
                best_min = Some(lo);
            }
            if worst_max.is_none_or(|x| hi < x) {
                worst_max = Some(hi);
            }
        }
        if worst_max < best_min {
            return Ok(Some(set));
        }
    }
    Ok(None)
}
