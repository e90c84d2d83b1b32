//! Rating ingestion, aggregation and calibration.

mod aggregate;
mod calibrate;
mod condition;
mod empirical;
mod ratings;

pub use aggregate::{
    aggregate, aggregate_with, AggregatedJudgments, AggregationMethod, JudgmentStats,
};
pub use calibrate::{calibrate, calibration_sources, provenance};
pub use condition::ConditionId;
pub use empirical::empirical_posteriors;
pub use ratings::{
    load_ratings, parse_ratings, RatingRecord, RatingTable, DEFAULT_SCALE_MAX, HEADER,
};
