use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::correlation::pearson_r;
use crate::data::{calibrate, empirical_posteriors, provenance, AggregatedJudgments};
use crate::models::{
    CalibratedModel, GridSource, ModelKind, ParameterSet, PosteriorReport, QueryGrid, ScenarioSpec,
};
use crate::query::QueryKey;
use crate::StatsError;

/// Fewest shared grid cells for which a correlation is reported.
pub const MIN_PAIRS: usize = 3;

/// Everything needed to score models on one scenario.
#[derive(Debug, Clone)]
pub struct ScenarioInput {
    pub scenario: ScenarioSpec,
    pub grid: QueryGrid,
    /// Calibrated parameters (with provenance) or the reason calibration failed.
    pub calibrations: BTreeMap<ModelKind, Result<(ParameterSet, String), String>>,
    pub empirical: PosteriorReport,
}

/// Calibrates `kinds` from `agg` and extracts the empirical grid.
pub fn prepare_input(
    kinds: &[ModelKind],
    scenario: &ScenarioSpec,
    agg: &AggregatedJudgments,
    grid: &QueryGrid,
) -> ScenarioInput {
    let calibrations = kinds
        .iter()
        .map(|&kind| {
            let cal = calibrate(kind, scenario, agg)
                .map(|p| (p, provenance(kind, agg)))
                .map_err(|e| e.to_string());
            (kind, cal)
        })
        .collect();
    ScenarioInput {
        scenario: scenario.clone(),
        grid: grid.clone(),
        calibrations,
        empirical: empirical_posteriors(agg, grid),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub query: QueryKey,
    pub model: Option<f64>,
    pub empirical: Option<f64>,
    /// `model - empirical` where both exist.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelComparison {
    pub model_kind: ModelKind,
    pub r: Option<f64>,
    pub pairs_used: usize,
    pub grid_size: usize,
    /// Grid cells the model answers; lesioned models leave some n/a.
    pub cells_defined: usize,
    pub residuals: Vec<Residual>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioComparison {
    pub scenario: String,
    pub models: Vec<ModelComparison>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AverageRow {
    pub model_kind: ModelKind,
    /// Unweighted mean of the per-scenario correlations that exist.
    pub mean_r: Option<f64>,
    pub scenarios_used: usize,
    /// The model answered every grid cell in every scenario.
    pub full_grid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonTable {
    pub schema_version: u32,
    pub grid: GridSource,
    pub scenarios: Vec<ScenarioComparison>,
    pub averages: Vec<AverageRow>,
    /// Models with an average correlation. Full-grid models come first, each
    /// tier ordered by descending average r: a correlation over a lesioned
    /// model's few cells is not comparable to one over the whole grid.
    pub ranking: Vec<ModelKind>,
    pub warnings: Vec<String>,
}

fn score(kind: ModelKind, input: &ScenarioInput) -> ModelComparison {
    let grid_size = input.grid.len();
    let failed = |error: String| ModelComparison {
        model_kind: kind,
        r: None,
        pairs_used: 0,
        grid_size,
        cells_defined: 0,
        residuals: Vec::new(),
        error: Some(error),
    };
    let (params, prov) = match input.calibrations.get(&kind) {
        Some(Ok(p)) => p,
        Some(Err(e)) => return failed(e.clone()),
        None => return failed("no calibration supplied".into()),
    };
    let report = match CalibratedModel::new(kind, &input.scenario, params, prov.clone())
        .and_then(|m| m.report(&input.grid))
    {
        Ok(r) => r,
        Err(e) => return failed(e.to_string()),
    };

    let residuals: Vec<Residual> = report
        .entries
        .iter()
        .map(|cell| {
            let model = cell.value.value();
            let empirical = input.empirical.value(&cell.query);
            Residual {
                query: cell.query.clone(),
                model,
                empirical,
                residual: model.zip(empirical).map(|(m, e)| m - e),
            }
        })
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = residuals
        .iter()
        .filter_map(|r| r.model.zip(r.empirical))
        .unzip();
    let pairs_used = xs.len();
    let cells_defined = residuals.iter().filter(|r| r.model.is_some()).count();
    let r = if pairs_used < MIN_PAIRS {
        Err(StatsError::InsufficientPairs {
            need: MIN_PAIRS,
            got: pairs_used,
        })
    } else {
        pearson_r(&xs, &ys)
    };
    ModelComparison {
        model_kind: kind,
        r: r.as_ref().ok().copied(),
        pairs_used,
        grid_size,
        cells_defined,
        residuals,
        error: r.err().map(|e| e.to_string()),
    }
}

/// Correlates each model's posteriors with the empirical grid, per scenario
/// and averaged across scenarios. Output order follows `kinds` and `inputs`.
pub fn compare_models(kinds: &[ModelKind], inputs: &[ScenarioInput]) -> ComparisonTable {
    let mut warnings = Vec::new();
    let scenarios: Vec<ScenarioComparison> = inputs
        .iter()
        .map(|input| {
            let models = kinds.iter().map(|&k| score(k, input)).collect::<Vec<_>>();
            for m in &models {
                if let Some(e) = &m.error {
                    warnings.push(format!("{} on {}: {e}", m.model_kind, input.scenario.name));
                }
            }
            ScenarioComparison {
                scenario: input.scenario.name.clone(),
                models,
            }
        })
        .collect();

    let averages: Vec<AverageRow> = kinds
        .iter()
        .map(|&kind| {
            let rows: Vec<&ModelComparison> = scenarios
                .iter()
                .flat_map(|s| s.models.iter())
                .filter(|m| m.model_kind == kind)
                .collect();
            let rs: Vec<f64> = rows.iter().filter_map(|m| m.r).collect();
            AverageRow {
                model_kind: kind,
                mean_r: (!rs.is_empty()).then(|| rs.iter().sum::<f64>() / rs.len() as f64),
                scenarios_used: rs.len(),
                full_grid: rows
                    .iter()
                    .all(|m| m.error.is_none() && m.cells_defined == m.grid_size),
            }
        })
        .collect();

    let mut ranked: Vec<(ModelKind, bool, f64)> = averages
        .iter()
        .filter_map(|a| a.mean_r.map(|r| (a.model_kind, a.full_grid, r)))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(b.2.total_cmp(&a.2)).then(a.0.cmp(&b.0)));

    let grid = inputs
        .first()
        .map_or(GridSource::Default, |i| i.grid.source());
    ComparisonTable {
        schema_version: crate::SCHEMA_VERSION,
        grid,
        scenarios,
        averages,
        ranking: ranked.into_iter().map(|(k, _, _)| k).collect(),
        warnings,
    }
}

fn fmt_r(r: Option<f64>) -> String {
    r.map_or_else(|| "n/a".to_string(), |v| format!("{v:.3}"))
}

impl ComparisonTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison table serializes")
    }

    pub fn scenario(&self, name: &str) -> Option<&ScenarioComparison> {
        self.scenarios.iter().find(|s| s.scenario == name)
    }

    pub fn average(&self, kind: ModelKind) -> Option<f64> {
        self.averages
            .iter()
            .find(|a| a.model_kind == kind)
            .and_then(|a| a.mean_r)
    }

    /// Aligned plain-text table: one row per model, one column per scenario.
    pub fn to_table(&self) -> String {
        let mut header = vec!["model".to_string()];
        header.extend(self.scenarios.iter().map(|s| s.scenario.clone()));
        header.push("average".into());
        let mut rows = Vec::new();
        for avg in &self.averages {
            let mut label = avg.model_kind.label().to_string();
            if !avg.full_grid {
                label.push('*');
            }
            let mut row = vec![label];
            for s in &self.scenarios {
                let m = s.models.iter().find(|m| m.model_kind == avg.model_kind);
                row.push(fmt_r(m.and_then(|m| m.r)));
            }
            row.push(fmt_r(avg.mean_r));
            rows.push(row);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                rows.iter()
                    .map(|r| r[c].len())
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in std::iter::once(&header).chain(&rows) {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, v)| {
                    if c == 0 {
                        format!("{v:<w$}", w = widths[c])
                    } else {
                        format!("{v:>w$}", w = widths[c])
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        }
        let ranking: Vec<&str> = self.ranking.iter().map(|k| k.label()).collect();
        let _ = writeln!(out, "ranking: {}", ranking.join(" > "));
        if self.averages.iter().any(|a| !a.full_grid) {
            let _ = writeln!(
                out,
                "* correlation over a partial grid, ranked after full-grid models"
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }

    /// `scenario,model,query,model_value,empirical_value,residual` rows.
    pub fn residuals_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(String::new, |v| v.to_string());
        let mut out = String::from("scenario,model,query,model_value,empirical_value,residual\n");
        for s in &self.scenarios {
            for m in &s.models {
                for r in &m.residuals {
                    let _ = writeln!(
                        out,
                        "{},{},\"{}\",{},{},{}",
                        s.scenario,
                        m.model_kind.label(),
                        r.query,
                        opt(r.model),
                        opt(r.empirical),
                        opt(r.residual)
                    );
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_structure, required_keys, CellValue, ReportSource};

    fn params(kind: ModelKind, s: &ScenarioSpec, seed: u64) -> ParameterSet {
        required_keys(&build_structure(kind, s))
            .unwrap()
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, ((i as u64 * 37 + seed * 11) % 89) as f64 / 100.0 + 0.05))
            .collect()
    }

    fn input_from_model(kind: ModelKind, s: &ScenarioSpec) -> ScenarioInput {
        let grid = QueryGrid::default_for(s);
        let mut calibrations = BTreeMap::new();
        for k in ModelKind::ALL {
            calibrations.insert(k, Ok((params(k, s, 3), "test".to_string())));
        }
        let (p, _) = calibrations[&kind].clone().unwrap();
        let mut empirical = CalibratedModel::new(kind, s, &p, "truth")
            .unwrap()
            .report(&grid)
            .unwrap();
        empirical.metadata.model_kind = ReportSource::Empirical;
        ScenarioInput {
            scenario: s.clone(),
            grid,
            calibrations,
            empirical,
        }
    }

    #[test]
    fn self_comparison_is_perfect() {
        let s = ScenarioSpec::littering();
        let table = compare_models(&ModelKind::ALL, &[input_from_model(ModelKind::Dm, &s)]);
        let dm = &table.scenarios[0].models[2];
        assert_eq!(dm.model_kind, ModelKind::Dm);
        assert!((dm.r.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(dm.pairs_used, 8);
        assert_eq!(table.ranking[0], ModelKind::Dm);
    }

    #[test]
    fn lesioned_models_use_only_shared_cells() {
        let s = ScenarioSpec::tray_return();
        let table = compare_models(&ModelKind::ALL, &[input_from_model(ModelKind::Fc, &s)]);
        let models = &table.scenarios[0].models;
        assert_eq!(models[3].pairs_used, 4); // D-only: D1 and D2 cells
        assert_eq!(models[4].pairs_used, 4); // N-only: N cells
        assert!(table.averages[..3].iter().all(|a| a.full_grid));
        assert!(table.averages[3..].iter().all(|a| !a.full_grid));
        assert_eq!(&table.ranking[3..].len(), &2);
        assert!(table.ranking[3..].iter().all(|k| k.is_lesioned()));
        assert!(table.to_table().contains("N-only*"));
    }

    #[test]
    fn too_few_pairs_is_reported_per_model() {
        let s = ScenarioSpec::tray_return();
        let mut input = input_from_model(ModelKind::Fc, &s);
        for cell in input.empirical.entries.iter_mut().skip(2) {
            cell.value = CellValue::NotApplicable;
        }
        input
            .calibrations
            .insert(ModelKind::Je, Err("missing P(D1)".into()));
        let table = compare_models(&[ModelKind::Fc, ModelKind::Je], &[input]);
        let fc = &table.scenarios[0].models[0];
        assert_eq!(fc.r, None);
        assert!(fc
            .error
            .as_deref()
            .unwrap()
            .contains("only 2 shared grid cells"));
        assert_eq!(
            table.scenarios[0].models[1].error.as_deref(),
            Some("missing P(D1)")
        );
        assert_eq!(table.warnings.len(), 2);
        assert!(table.ranking.is_empty());
    }

    #[test]
    fn averages_are_unweighted_means() {
        let a = input_from_model(ModelKind::Fc, &ScenarioSpec::tray_return());
        let b = input_from_model(ModelKind::Je, &ScenarioSpec::littering());
        let table = compare_models(&ModelKind::ALL, &[a, b]);
        for avg in &table.averages {
            let rs: Vec<f64> = table
                .scenarios
                .iter()
                .filter_map(|s| s.models.iter().find(|m| m.model_kind == avg.model_kind)?.r)
                .collect();
            let expected = rs.iter().sum::<f64>() / rs.len() as f64;
            assert!((avg.mean_r.unwrap() - expected).abs() < 1e-15);
        }
        let text = table.to_table();
        assert!(text.starts_with("model "));
        assert!(text.contains("tray-return"));
        let csv = table.residuals_csv();
        assert_eq!(csv.lines().count(), 1 + 2 * 5 * 8);
        assert_eq!(table.to_json(), table.clone().to_json());
    }
}
