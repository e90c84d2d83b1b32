//! Intuitive causal models of norm-driven behavior.
//!
//! A norm `N` shared across agents, the desires `D1`/`D2` of an actor and a
//! judge, and their actions `A1`/`A2` are modeled as small discrete Bayesian
//! networks. The crate covers:
//!
//! * [`bayes`]: binary Bayesian networks with exact inference (enumeration and
//!   variable elimination), forward/rejection sampling and d-separation.
//! * [`models`]: the five candidate structures (FC, JE, DM, D-only, N-only),
//!   parametrization and the posterior query grid.
//! * [`data`]: rating ingestion, aggregation and calibration.
//! * [`stats`]: correlation, ANOVA, paired t-tests and the model comparison
//!   harness.
//! * [`synth`]: synthetic rating studies simulated from a ground-truth model.

pub mod bayes;
pub mod data;
mod error;
pub mod models;
pub mod query;
pub mod stats;
pub mod synth;

pub use error::{BayesError, DataError, Error, ModelError, StatsError};

/// Version tag written into every serialized output document.
pub const SCHEMA_VERSION: u32 = 1;

pub type Result<T, E = Error> = std::result::Result<T, E>;
