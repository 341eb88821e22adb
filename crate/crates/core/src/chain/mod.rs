//! Exact analysis of the single-walk chain on graphs small enough for dense
//! matrices.

mod conductance;
mod hitting;
mod profile;
mod spectral;
mod transition;

pub use conductance::{conductance, ConductanceMode, EXHAUSTIVE_CONDUCTANCE_GUARD};
pub use hitting::{
    hit_probability_within, hitting_expectation, large_hit_time, large_hit_times, return_sum, return_sums,
    stationary_hitting_times, HittingTimes, LargeHitTime, SetSelection, EXHAUSTIVE_HIT_GUARD,
};
pub use profile::{distance_profile, CrossingSearch, Distance, DistanceProfile, THRESHOLD_SLACK};
pub use spectral::{relaxation_time, SpectralSummary};
pub use transition::{transition_matrix, transition_matrix_with_guard, Laziness, TransitionMatrix, DENSE_GUARD};
