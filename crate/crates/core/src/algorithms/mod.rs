//! The three constructive procedures. Each is deterministic: wherever a choice
//! is left open it is pinned to the lowest index, round-robin order or the
//! lexicographically smallest witness, so traces are reproducible.

mod ccg;
mod maf;
mod rrr;

pub use ccg::{
    build_cut_and_choose_graph, cut_and_choose_graph_procedure, CcgCase, CcgIteration, CcgTrace,
};
pub use maf::{
    match_and_freeze, match_and_freeze_with, sufficient_no_envy, FreezeRule, Invariant, MafRound,
    MafTrace, NoEnvyCertificate,
};
pub use rrr::{
    lemma_pair_demand_mu, reversed_round_robin, reversed_round_robin_traced,
    reversed_round_robin_with_owner, RrrTrace,
};
