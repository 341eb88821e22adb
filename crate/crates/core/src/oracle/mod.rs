//! Brute-force ground truth on tiny instances.

mod inequalities;
mod killed;
mod product;
mod subsets;

pub use inequalities::{check_exponential_approximation, check_tail_lower_bound, SubmultiplicativeTail};
pub use killed::{avoidance_curve, stationary_cover_tail, visit_stats, VisitStats, INCLUSION_EXCLUSION_GUARD};
pub use product::{
    exact_cover_tail, exact_multiwalk_cover_expectation, start_distribution, PRODUCT_BLOCK_GUARD, PRODUCT_STATE_GUARD,
};
pub use subsets::{exhaustive_conductance, exhaustive_large_hit, CONDUCTANCE_ORACLE_GUARD, LARGE_HIT_ORACLE_GUARD};
