use thiserror::Error;

use crate::allocation::AllocationViolation;
use crate::valuation::ValuationClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bundle {mask:#x} addresses items outside 0..{m}")]
    InvalidBundle { mask: u64, m: usize },

    #[error("invalid valuation for agent {agent}: {reason}")]
    InvalidValuation { agent: usize, reason: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(#[from] AllocationViolation),

    #[error("{operation} requires {expected} valuations, agent {agent} has {found}")]
    WrongClass {
        operation: &'static str,
        expected: &'static str,
        agent: usize,
        found: ValuationClass,
    },

    #[error("enumeration needs {required} steps, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("{items} items exceed the cap of {cap} for this operation")]
    TooManyItems { items: usize, cap: usize },

    #[error("no termination within {cap} iterations; the input is likely not MMS-feasible")]
    IterationCap { cap: usize },

    #[error("rejection sampling gave up after {draws} draws")]
    RejectionLimit { draws: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
