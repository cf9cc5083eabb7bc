use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::allocation::Allocation;
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::instance::{Flags, Instance};
use crate::oracles::{check_mms_feasible, Budget};
use crate::valuation::Valuation;
use crate::{frac, int, Value};

use super::fixed::{
    gen_mnw_counterexample, gen_nonexistence_stars, gen_pmms_not_efx_example, gen_separation3,
    gen_table1_example,
};

/// Item cap for rejection-sampled binary tables.
const BINARY_ITEM_CAP: usize = 10;
const REJECTION_LIMIT: u64 = 100_000;

/// Which regularity the binary proposal distribution may break.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BinaryMode {
    pub monotone: bool,
    pub normalized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    NonexistenceStars { n: usize },
    Separation3,
    MnwCounterexample,
    PmmsNotEfxExample,
    Table1Example,
    RandomBivalued { n: usize, m: usize, allow_zero_b: bool },
    RandomFactoredBivalued { n: usize, m: usize },
    RandomPairDemand { n: usize, m: usize },
    RandomBinaryMmsFeasible { n: usize, m: usize, mode: BinaryMode },
    RandomBinaryAdditive { n: usize, m: usize },
    RandomAdditive { n: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, seed: u64) -> Self {
        GeneratorSpec { kind, seed }
    }
}

#[derive(Debug, Clone)]
pub struct Sampled {
    pub instance: Instance,
    /// Proposals discarded by rejection sampling (binary tables only).
    pub rejections: u64,
}

/// Builds the instance described by `spec`. Deterministic in `spec`.
pub fn sample_random(spec: &GeneratorSpec) -> Result<Sampled> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let plain = |instance: Instance| Sampled {
        instance,
        rejections: 0,
    };
    let check_dims = |n: usize, m: usize| -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if m > crate::bundle::MAX_ITEMS {
            return Err(Error::TooManyItems {
                items: m,
                cap: crate::bundle::MAX_ITEMS,
            });
        }
        Ok(())
    };
    Ok(match spec.kind {
        GeneratorKind::NonexistenceStars { n } => plain(gen_nonexistence_stars(n)?),
        GeneratorKind::Separation3 => plain(gen_separation3()),
        GeneratorKind::MnwCounterexample => plain(gen_mnw_counterexample()),
        GeneratorKind::PmmsNotEfxExample => plain(gen_pmms_not_efx_example()),
        GeneratorKind::Table1Example => plain(gen_table1_example()),
        GeneratorKind::RandomBivalued { n, m, allow_zero_b } => {
            check_dims(n, m)?;
            let vs = (0..n).map(|_| bivalued(&mut rng, m, allow_zero_b)).collect();
            plain(Instance::new(m, vs)?)
        }
        GeneratorKind::RandomFactoredBivalued { n, m } => {
            check_dims(n, m)?;
            let vs = (0..n).map(|_| factored_bivalued(&mut rng, m)).collect();
            plain(Instance::new(m, vs)?)
        }
        GeneratorKind::RandomPairDemand { n, m } => {
            check_dims(n, m)?;
            let vs = (0..n)
                .map(|_| {
                    Valuation::pair_demand(
                        (0..m).map(|_| frac(rng.gen_range(0..=20), rng.gen_range(1..=2))).collect(),
                    )
                })
                .collect();
            plain(Instance::new(m, vs)?)
        }
        GeneratorKind::RandomBinaryAdditive { n, m } => {
            check_dims(n, m)?;
            let vs = (0..n)
                .map(|_| Valuation::additive((0..m).map(|_| int(rng.gen_range(0..=1))).collect()))
                .collect();
            plain(Instance::new(m, vs)?)
        }
        GeneratorKind::RandomAdditive { n, m } => {
            check_dims(n, m)?;
            let vs = (0..n)
                .map(|_| Valuation::additive((0..m).map(|_| int(rng.gen_range(0..=9))).collect()))
                .collect();
            plain(Instance::new(m, vs)?)
        }
        GeneratorKind::RandomBinaryMmsFeasible { n, m, mode } => {
            check_dims(n, m)?;
            if m > BINARY_ITEM_CAP {
                return Err(Error::TooManyItems {
                    items: m,
                    cap: BINARY_ITEM_CAP,
                });
            }
            let mut rejections = 0u64;
            let mut vs = Vec::with_capacity(n);
            for _ in 0..n {
                loop {
                    if rejections >= REJECTION_LIMIT {
                        return Err(Error::RejectionLimit { draws: rejections });
                    }
                    let v = binary_proposal(&mut rng, m, mode);
                    if check_mms_feasible(&v, Budget::DEFAULT)? {
                        vs.push(v);
                        break;
                    }
                    rejections += 1;
                }
            }
            let flags = Flags {
                monotone_required: mode.monotone,
                normalized_required: mode.normalized,
            };
            Sampled {
                instance: Instance::with_flags(m, vs, flags)?,
                rejections,
            }
        }
    })
}

fn random_subset(rng: &mut impl Rng, m: usize, p: f64) -> Bundle {
    (0..m).filter(|_| rng.gen_bool(p)).collect()
}

fn bivalued(rng: &mut impl Rng, m: usize, allow_zero_b: bool) -> Valuation {
    let b = if allow_zero_b && rng.gen_bool(0.25) {
        int(0)
    } else {
        frac(rng.gen_range(1..=4), rng.gen_range(1..=2))
    };
    let a = b + frac(rng.gen_range(1..=8), rng.gen_range(1..=3));
    let p = rng.gen_range(0.15..0.6);
    Valuation::bivalued(a, b, random_subset(rng, m, p), m)
}

fn factored_bivalued(rng: &mut impl Rng, m: usize) -> Valuation {
    let (a, b) = if rng.gen_bool(0.25) {
        (frac(rng.gen_range(1..=9), rng.gen_range(1..=2)), int(0))
    } else {
        let b = [int(1), int(2), frac(1, 2)][rng.gen_range(0..3)];
        (b * int(rng.gen_range(2..=6)), b)
    };
    let p = rng.gen_range(0.15..0.6);
    Valuation::bivalued(a, b, random_subset(rng, m, p), m)
}

/// Proposal distribution for binary tables: a mix of thresholded additive
/// scores (signed when monotonicity is not required), unions of up-sets, and
/// unstructured coin-flip tables. Acceptance is decided by the feasibility oracle.
fn binary_proposal(rng: &mut impl Rng, m: usize, mode: BinaryMode) -> Valuation {
    let shape = rng.gen_range(0..10);
    let mut v = if shape < 5 {
        let lo = if mode.monotone { 0 } else { -3 };
        let scores: Vec<i64> = (0..m).map(|_| rng.gen_range(lo..=3)).collect();
        let threshold = if mode.normalized {
            rng.gen_range(1..=4)
        } else {
            rng.gen_range(-2..=4)
        };
        Valuation::binary_from_fn(m, |s| s.items().map(|g| scores[g]).sum::<i64>() >= threshold)
    } else if shape < 8 {
        let gens: Vec<Bundle> = (0..rng.gen_range(1..=3))
            .map(|_| random_subset(rng, m, 0.4))
            .filter(|g| !mode.normalized || !g.is_empty())
            .collect();
        Valuation::binary_from_fn(m, |s| gens.iter().any(|g| g.is_subset(s)))
    } else {
        let p = rng.gen_range(0.2..0.8);
        let coins: Vec<bool> = (0..1usize << m).map(|_| rng.gen_bool(p)).collect();
        Valuation::binary_from_fn(m, |s| coins[s.mask() as usize])
    };
    // enforce the mode's hard requirements on the proposal itself
    if mode.normalized && v.eval(Bundle::EMPTY) != Value::from_integer(0) {
        v = Valuation::binary_from_fn(m, |s| !s.is_empty() && v.eval(s) == Value::from_integer(1));
    }
    if mode.monotone && !v.is_monotone().unwrap_or(false) {
        // monotone closure: 1 iff some subset is 1
        let base = v.clone();
        v = Valuation::binary_from_fn(m, |s| s.subsets().any(|t| base.eval(t) == Value::from_integer(1)));
        if mode.normalized && v.eval(Bundle::EMPTY) != Value::from_integer(0) {
            v = Valuation::binary_from_fn(m, |_| false);
        }
    }
    v
}

/// A uniformly random allocation of `m` items among `n` agents.
pub fn random_allocation(rng: &mut impl Rng, n: usize, m: usize) -> Allocation {
    let owners: Vec<usize> = (0..m).map(|_| rng.gen_range(0..n)).collect();
    Allocation::from_owners(&owners, n)
}
