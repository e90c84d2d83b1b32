//! The five candidate models of norm-driven behavior and their query grid.

mod kind;
mod params;
mod scenario;
mod structure;
mod suite;

pub use kind::ModelKind;
pub use params::{parametrize, required_keys, ParameterFile, ParameterSet};
pub use scenario::{ActionLabels, Polarity, ScenarioSpec};
pub use structure::build_structure;
pub use suite::{
    answer, posterior_suite, CalibratedModel, CellValue, GridCell, GridSource, PosteriorQuery,
    PosteriorReport, QueryGrid, ReportMetadata, ReportSource,
};
