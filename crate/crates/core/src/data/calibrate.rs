use super::aggregate::AggregatedJudgments;
use super::condition::ConditionId;
use crate::models::{build_structure, required_keys, ModelKind, ParameterSet, ScenarioSpec};
use crate::DataError;

/// Which condition supplies each family of parameters for `kind`.
///
/// Every parameter key is elicited in exactly one condition, so the table
/// follows from the model's CPT rows: desire tables and priors come from A,
/// action tables conditioned on desire alone from B, on the norm alone from
/// C, and on both from D.
pub fn calibration_sources(kind: ModelKind) -> &'static [(ConditionId, &'static str)] {
    use ConditionId::*;
    match kind {
        ModelKind::Fc => &[(A, "P(N), P(D1|N), P(D2|N)"), (D, "P(A1|D1,N), P(A2|D2,N)")],
        ModelKind::Je => &[(A, "P(N), P(D1), P(D2)"), (D, "P(A1|D1,N), P(A2|D2,N)")],
        ModelKind::Dm => &[(A, "P(N), P(D1|N), P(D2|N)"), (B, "P(A1|D1), P(A2|D2)")],
        ModelKind::DOnly => &[(A, "P(D1), P(D2)"), (B, "P(A1|D1), P(A2|D2)")],
        ModelKind::NOnly => &[(A, "P(N)"), (C, "P(A1|N), P(A2|N)")],
    }
}

/// Human-readable provenance recorded alongside calibrated parameters.
pub fn provenance(kind: ModelKind, agg: &AggregatedJudgments) -> String {
    let sources: Vec<String> = calibration_sources(kind)
        .iter()
        .map(|(c, what)| format!("{c}: {what}"))
        .collect();
    format!("{} judgments; {}", agg.method.name(), sources.join("; "))
}

/// Reads the parameters `kind` needs from aggregated judgments.
/// Keys the model does not use are ignored.
pub fn calibrate(
    kind: ModelKind,
    scenario: &ScenarioSpec,
    agg: &AggregatedJudgments,
) -> Result<ParameterSet, DataError> {
    if agg.scenario != scenario.name {
        return Err(DataError::ScenarioMismatch {
            expected: scenario.name.clone(),
            found: agg.scenario.clone(),
        });
    }
    let keys = required_keys(&build_structure(kind, scenario)).expect("built-in structures");
    let mut params = ParameterSet::new();
    for key in keys {
        let condition = key.condition().expect("every parameter key is elicited");
        let value = agg
            .estimate(&key)
            .ok_or_else(|| DataError::MissingCalibrationKey {
                key: key.to_string(),
                condition,
            })?;
        params.insert(key, value);
    }
    Ok(params)
}
