//! Correlation and significance tests, plus the model comparison harness.

mod anova;
mod compare;
mod correlation;
pub mod special;
mod ttest;

use serde::Serialize;

pub use anova::one_way_anova;
pub use compare::{
    compare_models, prepare_input, AverageRow, ComparisonTable, ModelComparison, Residual,
    ScenarioComparison, ScenarioInput, MIN_PAIRS,
};
pub use correlation::pearson_r;
pub use ttest::paired_t;

/// A test statistic with its degrees of freedom and two-sided p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestResult {
    pub statistic: f64,
    /// Numerator (F) or only (t) degrees of freedom.
    pub df: f64,
    /// Denominator degrees of freedom for F tests.
    pub df_denominator: Option<f64>,
    pub p_value: f64,
}

/// Relative size below which a spread counts as exactly zero.
const DEGENERATE_SPREAD: f64 = 1e-12;

fn check_finite(xs: &[f64]) -> Result<(), crate::StatsError> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(crate::StatsError::NonFinite)
    }
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}
