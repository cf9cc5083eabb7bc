use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::valuation::Valuation;
use crate::Value;

use super::{count_pow, Budget};

/// A fair share together with a partition that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximinResult {
    pub mu: Value,
    /// `k` parts (possibly empty) partitioning the queried bundle.
    pub witness: Vec<Bundle>,
}

/// The fair share `μ(S, k)`: the best worst-part value over all partitions of `set`
/// into `k` labeled parts.
///
/// Partitions are enumerated as label vectors over the items of `set` in increasing
/// order, first item most significant. The witness is the lexicographically smallest
/// optimal label vector.
pub fn mu(v: &Valuation, set: Bundle, k: usize, budget: Budget) -> Result<MaximinResult> {
    if k == 0 {
        return Err(Error::InvalidArgument("fair share needs k >= 1 parts".into()));
    }
    if !set.fits(v.items()) {
        return Err(Error::InvalidBundle {
            mask: set.mask(),
            m: v.items(),
        });
    }
    let items: Vec<usize> = set.items().collect();
    budget.check(count_pow(k, items.len()))?;

    let mut labels = vec![0usize; items.len()];
    let mut parts = vec![Bundle::EMPTY; k];
    parts[0] = set;
    let mut best: Option<(Value, Vec<usize>)> = None;

    loop {
        let worst = parts
            .iter()
            .map(|&p| v.eval(p))
            .min()
            .expect("k >= 1");
        if best.as_ref().is_none_or(|(b, _)| worst > *b) {
            best = Some((worst, labels.clone()));
        }

        // Odometer step; the last item is the least significant digit.
        let mut pos = items.len();
        loop {
            if pos == 0 {
                let (mu, labels) = best.expect("at least one partition");
                let mut witness = vec![Bundle::EMPTY; k];
                for (&g, &l) in items.iter().zip(&labels) {
                    witness[l].insert(g);
                }
                return Ok(MaximinResult { mu, witness });
            }
            pos -= 1;
            let g = items[pos];
            parts[labels[pos]].remove(g);
            labels[pos] += 1;
            if labels[pos] < k {
                parts[labels[pos]].insert(g);
                break;
            }
            labels[pos] = 0;
            parts[0].insert(g);
        }
    }
}

/// `μ(S, 2)` for every bundle `S`, given the materialised value table of a valuation.
/// Costs `3^m` lookups.
pub fn pair_share_table(values: &[Value]) -> Vec<Value> {
    let mut out = Vec::with_capacity(values.len());
    for mask in 0..values.len() as u64 {
        let set = Bundle::from_mask(mask);
        let best = set
            .subsets()
            .map(|part| {
                let rest = set - part;
                values[part.mask() as usize].min(values[rest.mask() as usize])
            })
            .max()
            .expect("at least the empty split");
        out.push(best);
    }
    out
}
