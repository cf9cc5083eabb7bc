use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bundle::{Bundle, MAX_ITEMS};
use crate::error::{Error, Result};
use crate::valuation::{Valuation, ValuationClass};

/// Which regularity conditions valuations of an instance must satisfy.
///
/// Both default to `true`. Binary-valued inputs for Cut-and-Choose-Graph clear them,
/// which admits chores and non-normalized set functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    #[serde(rename = "monotone")]
    pub monotone_required: bool,
    #[serde(rename = "normalized")]
    pub normalized_required: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            monotone_required: true,
            normalized_required: true,
        }
    }
}

impl Flags {
    pub const RELAXED: Flags = Flags {
        monotone_required: false,
        normalized_required: false,
    };
}

/// Agents `0..n`, items `0..m` and one valuation per agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    m: usize,
    valuations: Vec<Valuation>,
    flags: Flags,
    labels: Option<Vec<String>>,
}

impl Instance {
    pub fn new(m: usize, valuations: Vec<Valuation>) -> Result<Self> {
        Self::with_flags(m, valuations, Flags::default())
    }

    pub fn with_flags(m: usize, valuations: Vec<Valuation>, flags: Flags) -> Result<Self> {
        if valuations.is_empty() {
            return Err(Error::InvalidInstance("at least one agent is required".into()));
        }
        if m > MAX_ITEMS {
            return Err(Error::TooManyItems {
                items: m,
                cap: MAX_ITEMS,
            });
        }
        for (agent, v) in valuations.iter().enumerate() {
            let invalid = |reason: String| Error::InvalidValuation { agent, reason };
            v.check().map_err(invalid)?;
            if v.items() != m {
                return Err(invalid(format!("addresses {} items, instance has {m}", v.items())));
            }
            let table_backed = matches!(
                v.class(),
                ValuationClass::Table | ValuationClass::BinaryTable
            );
            if table_backed && flags.normalized_required && !v.eval(Bundle::EMPTY).is_zero() {
                return Err(invalid("v(∅) must be 0 for a normalized instance".into()));
            }
            if table_backed && flags.monotone_required && !v.is_monotone()? {
                return Err(invalid("valuation is not monotone".into()));
            }
        }
        Ok(Instance {
            m,
            valuations,
            flags,
            labels: None,
        })
    }

    /// Attaches human-readable item names, used by traces and reports.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.m {
            return Err(Error::InvalidInstance(format!(
                "{} labels for {} items",
                labels.len(),
                self.m
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.valuations.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn valuations(&self) -> &[Valuation] {
        &self.valuations
    }

    pub fn valuation(&self, agent: usize) -> &Valuation {
        &self.valuations[agent]
    }

    /// `v_agent(bundle)`; the bundle must fit the instance.
    pub fn value(&self, agent: usize, bundle: Bundle) -> crate::Value {
        self.valuations[agent].eval(bundle)
    }

    pub fn items(&self) -> Bundle {
        Bundle::full(self.m)
    }

    pub fn label(&self, item: usize) -> String {
        match &self.labels {
            Some(labels) => labels[item].clone(),
            None => item.to_string(),
        }
    }

    /// Errors with `WrongClass` unless every valuation is of `class`.
    pub fn require_class(&self, operation: &'static str, class: ValuationClass) -> Result<()> {
        for (agent, v) in self.valuations.iter().enumerate() {
            if v.class() != class {
                return Err(Error::WrongClass {
                    operation,
                    expected: class_name(class),
                    agent,
                    found: v.class(),
                });
            }
        }
        Ok(())
    }
}

fn class_name(class: ValuationClass) -> &'static str {
    match class {
        ValuationClass::Additive => "additive",
        ValuationClass::PersonalizedBivalued => "personalized bivalued",
        ValuationClass::PairDemand => "pair-demand",
        ValuationClass::Table => "explicit table",
        ValuationClass::BinaryTable => "binary table",
    }
}
