//! Graph representation, family generators and the geometric reset graph.

mod family;
mod reset;
pub mod small;
mod weighted;

pub use family::{build_family, canonical_hard_sets, FamilySpec, HardSet, HardSetCatalog, REGULAR_RETRY_BUDGET};
pub use reset::{build_reset_graph, ResetGraph};
pub use weighted::{stationary_distribution, WeightedGraph};
