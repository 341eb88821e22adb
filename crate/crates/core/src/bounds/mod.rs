//! Closed-form bound evaluators that compare measured quantities with
//! theoretical right-hand sides.

mod evaluators;
mod quantities;
mod report;
mod table1;

pub use evaluators::{
    eval_char_lower, eval_char_upper, eval_displacement, eval_geometric_bounds, eval_hitting_relaxation,
    eval_hypercube_large_hit, eval_oblivious_set_cover, eval_partial_mixing_bounds, eval_stationary_lower,
    eval_stationary_upper, eval_tree_leaf_root, oblivious_hypothesis, BoundConstants, LowerVariant,
};
pub use quantities::{exact_quantities, return_profile, ExactOptions, GraphQuantities, PartialEntry, ReturnProfile};
pub use report::{reports_to_csv, BoundReport, Direction, Quantity, REPORT_CSV_HEADER, SIGMA_ALLOWANCE};
pub use table1::{regime_threshold, single_walk_cover, table1_reference, ScalingFamily, ScalingReference};
