use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::allocation::Allocation;
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::Value;

use super::{mu, Budget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FairnessNotion {
    #[serde(rename = "efx")]
    Efx,
    #[serde(rename = "efx+")]
    EfxPositive,
    #[serde(rename = "pmms")]
    Pmms,
    #[serde(rename = "mms")]
    Mms,
}

impl FairnessNotion {
    pub const ALL: [FairnessNotion; 4] = [
        FairnessNotion::Efx,
        FairnessNotion::EfxPositive,
        FairnessNotion::Pmms,
        FairnessNotion::Mms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FairnessNotion::Efx => "efx",
            FairnessNotion::EfxPositive => "efx+",
            FairnessNotion::Pmms => "pmms",
            FairnessNotion::Mms => "mms",
        }
    }
}

impl fmt::Display for FairnessNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FairnessNotion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FairnessNotion::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown fairness notion {s:?}")))
    }
}

/// What makes a violation a violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Removing this item from the envied bundle still leaves it preferred.
    Item(usize),
    /// A partition whose worst part beats the envier's own value.
    Partition(Vec<Bundle>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub envier: usize,
    /// `None` for MMS, which compares against the whole item set.
    pub envied: Option<usize>,
    pub witness: Witness,
    /// Envier's value for their own bundle.
    #[serde(with = "crate::document::rational")]
    pub own_value: Value,
    /// The value the envier would need to reach.
    #[serde(with = "crate::document::rational")]
    pub required: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FairnessReport {
    pub notion: FairnessNotion,
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl FairnessReport {
    fn from_violations(notion: FairnessNotion, violations: Vec<Violation>) -> Self {
        FairnessReport {
            notion,
            holds: violations.is_empty(),
            violations,
        }
    }

    /// Whether `agent` is the envier in some violation.
    pub fn violated_by(&self, agent: usize) -> bool {
        self.violations.iter().any(|v| v.envier == agent)
    }
}

fn efx_scan(inst: &Instance, x: &Allocation, positive_only: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 0..inst.n() {
        let v = inst.valuation(i);
        let own = v.eval(x.bundle(i));
        for j in 0..inst.n() {
            if i == j {
                continue;
            }
            let other = x.bundle(j);
            for g in other.items() {
                if positive_only && v.singleton(g).is_zero() {
                    continue;
                }
                let rest = v.eval(other.without(g));
                if own < rest {
                    out.push(Violation {
                        envier: i,
                        envied: Some(j),
                        witness: Witness::Item(g),
                        own_value: own,
                        required: rest,
                    });
                }
            }
        }
    }
    out
}

/// EFX: for all `i ≠ j` and `g ∈ X_j`, `v_i(X_i) >= v_i(X_j \ {g})`.
/// Every violating `(i, j, g)` is reported.
pub fn check_efx(inst: &Instance, x: &Allocation) -> FairnessReport {
    FairnessReport::from_violations(FairnessNotion::Efx, efx_scan(inst, x, false))
}

/// EFX restricted to removing items the envier values positively. Additive valuations only.
pub fn check_efx_positive(inst: &Instance, x: &Allocation) -> Result<FairnessReport> {
    if let Some(agent) = inst.valuations().iter().position(|v| !v.is_additive()) {
        return Err(Error::WrongClass {
            operation: "EFX over positively valued goods",
            expected: "additive",
            agent,
            found: inst.valuation(agent).class(),
        });
    }
    Ok(FairnessReport::from_violations(
        FairnessNotion::EfxPositive,
        efx_scan(inst, x, true),
    ))
}

/// PMMS: for all `i ≠ j`, `v_i(X_i) >= μ_i(X_i ∪ X_j, 2)`.
pub fn check_pmms(inst: &Instance, x: &Allocation, budget: Budget) -> Result<FairnessReport> {
    let mut out = Vec::new();
    for i in 0..inst.n() {
        let v = inst.valuation(i);
        let own = v.eval(x.bundle(i));
        for j in 0..inst.n() {
            if i == j {
                continue;
            }
            let share = mu(v, x.bundle(i) | x.bundle(j), 2, budget)?;
            if own < share.mu {
                out.push(Violation {
                    envier: i,
                    envied: Some(j),
                    witness: Witness::Partition(share.witness),
                    own_value: own,
                    required: share.mu,
                });
            }
        }
    }
    Ok(FairnessReport::from_violations(FairnessNotion::Pmms, out))
}

/// MMS: for all `i`, `v_i(X_i) >= μ_i(M, n)`.
pub fn check_mms(inst: &Instance, x: &Allocation, budget: Budget) -> Result<FairnessReport> {
    let mut out = Vec::new();
    for i in 0..inst.n() {
        let v = inst.valuation(i);
        let own = v.eval(x.bundle(i));
        let share = mu(v, inst.items(), inst.n(), budget)?;
        if own < share.mu {
            out.push(Violation {
                envier: i,
                envied: None,
                witness: Witness::Partition(share.witness),
                own_value: own,
                required: share.mu,
            });
        }
    }
    Ok(FairnessReport::from_violations(FairnessNotion::Mms, out))
}

/// Dispatches to the checker for `notion`.
pub fn check(
    inst: &Instance,
    x: &Allocation,
    notion: FairnessNotion,
    budget: Budget,
) -> Result<FairnessReport> {
    match notion {
        FairnessNotion::Efx => Ok(check_efx(inst, x)),
        FairnessNotion::EfxPositive => check_efx_positive(inst, x),
        FairnessNotion::Pmms => check_pmms(inst, x, budget),
        FairnessNotion::Mms => check_mms(inst, x, budget),
    }
}
