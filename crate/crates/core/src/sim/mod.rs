//! Monte-Carlo simulation of `k` independent walks with per-trial seeded
//! RNG streams, so results do not depend on the thread count.

mod cover;
mod displacement;
mod estimate;
mod kernel;
mod reset;
mod start;

pub use cover::{
    estimate_cover_time, estimate_set_cover, estimate_set_hitting, sample_cover_of, sample_cover_time, sample_hit_of,
    screened_worst_case, single_source_worst_case, SetCoverEstimate, SingleSourceWorstCase,
};
pub use displacement::{max_displacement_tail, positions_after, TailFrequency};
pub use estimate::{
    default_horizon, derive_seed, run_trials, trial_rng, EstimateWithCI, Outcome, TrialPlan, DEFAULT_TRIALS,
    UNRELIABLE_TRUNCATION_FRACTION,
};
pub use kernel::WalkKernel;
pub use reset::{reset_walk_equivalence, two_sample_chi_square, ResetEquivalence};
pub use start::{SetMeasure, StartSampler, StartSpec};
