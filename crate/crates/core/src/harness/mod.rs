//! Experiment orchestration: JSON configs, sweeps over families and walk
//! counts, slope fits, bound suites, report files and the acceptance criteria.

mod config;
pub mod criteria;
mod experiment;
mod slope;

pub use config::{ExperimentConfig, HorizonPolicy, SlopeQuantity, SlopeWindowEntry, Suite};
pub use criteria::{run_criterion, AcceptanceSettings, CriterionOutcome, CRITERIA};
pub use experiment::{
    record_seed, run_experiment, BoundRecord, EstimateRecord, ExactRecord, ReferenceRecord, ReportBundle,
    SkippedRecord, SlopeRecord, BOUND_CSV_HEADER, ESTIMATE_CSV_HEADER, EXACT_CSV_HEADER, REFERENCE_CSV_HEADER,
    SKIPPED_CSV_HEADER, SLOPE_CSV_HEADER,
};
pub use slope::{fit_loglog_slope, SlopeFit, SlopeWindow};
