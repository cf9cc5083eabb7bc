//! Concrete instances with known fairness behaviour, plus seeded random samplers.
//!
//! Items keep their published names through instance labels (`x`, `y`, `z1`…,
//! `s1`/`c1`…, `g1`…, `1`…`6`); indices are 0-based in label order.

mod fixed;
mod random;

pub use fixed::{
    gen_mnw_counterexample, gen_nonexistence_stars, gen_pmms_not_efx_example, gen_separation3,
    gen_table1_example, stars_parameters, StarsLayout,
};
pub use random::{
    random_allocation, sample_random, BinaryMode, GeneratorKind, GeneratorSpec, Sampled,
};
