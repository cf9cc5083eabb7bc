//! Exact fair division of indivisible items.
//!
//! The crate is organised in layers:
//!
//! * [`bundle`], [`valuation`], [`instance`], [`allocation`] form the domain model.
//!   Values are exact rationals ([`Value`]); bundles are bitmasks over at most 64 items.
//! * [`oracles`] computes fair shares by exhaustive enumeration and checks EFX,
//!   EFX over positively valued goods, PMMS and MMS. Every algorithm is tested against it.
//! * [`matching`] provides the bipartite matching machinery used by Match-and-Freeze.
//! * [`algorithms`] holds the three constructive procedures: Match-and-Freeze
//!   (personalized bivalued), Cut-and-Choose-Graph (binary valued) and Reversed
//!   Round-Robin (pair demand). Each returns an auditable trace.
//! * [`instances`] builds the known hard instances and seeded random samplers.
//! * [`document`] and [`dot`] are the JSON and Graphviz surfaces used by the CLI.

pub mod algorithms;
pub mod allocation;
pub mod bundle;
pub mod document;
pub mod dot;
pub mod error;
pub mod instance;
pub mod instances;
pub mod matching;
pub mod oracles;
pub mod valuation;

pub use allocation::{Allocation, AllocationViolation};
pub use bundle::Bundle;
pub use error::{Error, Result};
pub use instance::{Flags, Instance};
pub use oracles::{Budget, FairnessNotion, FairnessReport};
pub use valuation::{Valuation, ValuationClass};

/// Exact rational value used for every utility, share and weight.
pub type Value = num_rational::Ratio<i64>;

/// Largest item count accepted for table-backed valuations (2^m entries per agent).
pub const TABLE_ITEM_CAP: usize = 20;

/// Shorthand for an integer [`Value`].
pub fn int(n: i64) -> Value {
    Value::from_integer(n)
}

/// Shorthand for the rational `num / den`.
pub fn frac(num: i64, den: i64) -> Value {
    Value::new(num, den)
}
