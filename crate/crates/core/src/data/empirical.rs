use super::aggregate::AggregatedJudgments;
use crate::models::{
    CellValue, GridCell, PosteriorReport, QueryGrid, ReportMetadata, ReportSource,
};

/// Arranges condition-E judgments on `grid`. Cells nobody rated are
/// reported as gaps and later dropped pairwise from comparisons.
pub fn empirical_posteriors(agg: &AggregatedJudgments, grid: &QueryGrid) -> PosteriorReport {
    let entries = grid
        .queries()
        .iter()
        .map(|q| GridCell {
            query: q.key().clone(),
            value: agg
                .estimate(q.key())
                .map_or(CellValue::NotApplicable, CellValue::Value),
        })
        .collect();
    PosteriorReport {
        schema_version: crate::SCHEMA_VERSION,
        metadata: ReportMetadata {
            model_kind: ReportSource::Empirical,
            scenario: agg.scenario.clone(),
            parameter_provenance: format!("{} of condition E judgments", agg.method.name()),
            grid: grid.source(),
        },
        entries,
    }
}
