//! Random braids, descent probabilities and Monte-Carlo experiments.

pub mod descent;
pub mod mc;
pub mod random;
pub mod table;

pub use descent::{d2_upper_bound, d3_bound, exact_d2, exact_d2_enumerated, DescentBound, Fixed};
pub use mc::{mc_experiment, Experiment, McReport};
pub use random::{sample_random_braid, trial_rng, RandomBraid, RandomBraidSpec, PRNG_NAME};
pub use table::{d_bound_table, DescentTable, Provenance, TableEntry};
