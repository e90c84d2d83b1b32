use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::kind::ModelKind;
use crate::bayes::{ConditionalProbabilityTable, NormNetwork, Structure};
use crate::query::{NormVar, QueryKey};
use crate::ModelError;

/// Named probabilities, one per CPT row of a model.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParameterSet {
    values: BTreeMap<QueryKey, f64>,
}

impl ParameterSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: QueryKey, value: f64) -> Option<f64> {
        self.values.insert(key, value)
    }

    pub fn get(&self, key: &QueryKey) -> Option<f64> {
        self.values.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &QueryKey> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&QueryKey, f64)> {
        self.values.iter().map(|(k, v)| (k, *v))
    }
}

impl FromIterator<(QueryKey, f64)> for ParameterSet {
    fn from_iter<I: IntoIterator<Item = (QueryKey, f64)>>(iter: I) -> Self {
        ParameterSet {
            values: iter.into_iter().collect(),
        }
    }
}

/// On-disk form of a calibrated parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterFile {
    pub schema_version: u32,
    pub model_kind: ModelKind,
    pub scenario: String,
    pub provenance: String,
    pub parameters: ParameterSet,
}

impl ParameterFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("parameter file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let file: ParameterFile =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        if file.schema_version != crate::SCHEMA_VERSION {
            return Err(ModelError::Json(format!(
                "unsupported schema_version {}",
                file.schema_version
            )));
        }
        Ok(file)
    }
}

fn norm_var(name: &str) -> Result<NormVar, ModelError> {
    NormVar::from_name(name).ok_or_else(|| ModelError::ForeignVariable(name.to_string()))
}

/// One key per CPT row of `skeleton`, in declaration and row order.
pub fn required_keys(skeleton: &Structure) -> Result<Vec<QueryKey>, ModelError> {
    let mut keys = Vec::new();
    for (i, v) in skeleton.variables().iter().enumerate() {
        let target = norm_var(&v.name)?;
        let parents = skeleton
            .parents(i)
            .iter()
            .map(|&p| norm_var(&skeleton.variable(p).name))
            .collect::<Result<Vec<_>, _>>()?;
        let k = parents.len();
        for row in 0..1usize << k {
            let given: Vec<(NormVar, bool)> = parents
                .iter()
                .enumerate()
                .map(|(j, &p)| (p, row >> (k - 1 - j) & 1 == 1))
                .collect();
            keys.push(QueryKey::new(target, &given)?);
        }
    }
    Ok(keys)
}

/// Binds `params` to the skeleton. The key set must match exactly; all
/// values are clamped by the table constructor.
pub fn parametrize(skeleton: &Structure, params: &ParameterSet) -> Result<NormNetwork, ModelError> {
    let required = required_keys(skeleton)?;
    for key in &required {
        if params.get(key).is_none() {
            return Err(ModelError::CalibrationMismatch {
                key: key.to_string(),
                problem: "missing",
            });
        }
    }
    for key in params.keys() {
        if !required.contains(key) {
            return Err(ModelError::CalibrationMismatch {
                key: key.to_string(),
                problem: "not used by this model",
            });
        }
    }

    let mut required = required.into_iter();
    let mut cpts = Vec::with_capacity(skeleton.len());
    for (i, v) in skeleton.variables().iter().enumerate() {
        let parents: Vec<String> = skeleton
            .parents(i)
            .iter()
            .map(|&p| skeleton.variable(p).name.clone())
            .collect();
        let mut rows = Vec::with_capacity(1 << parents.len());
        for _ in 0..1usize << parents.len() {
            let key = required.next().expect("one key per row");
            let value = params.get(&key).expect("checked above");
            if !(0.0..=1.0).contains(&value) {
                return Err(ModelError::InvalidParameter {
                    key: key.to_string(),
                    value,
                });
            }
            rows.push(value);
        }
        cpts.push(ConditionalProbabilityTable::new(
            v.name.clone(),
            parents,
            rows,
        )?);
    }
    Ok(NormNetwork::new(skeleton.variables().to_vec(), cpts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_structure, ScenarioSpec};

    fn key(s: &str) -> QueryKey {
        s.parse().unwrap()
    }

    fn full(kind: ModelKind) -> ParameterSet {
        let s = build_structure(kind, &ScenarioSpec::tray_return());
        required_keys(&s)
            .unwrap()
            .into_iter()
            .map(|k| (k, 0.5))
            .collect()
    }

    #[test]
    fn required_key_counts() {
        let counts: Vec<usize> = ModelKind::ALL.iter().map(|&k| full(k).len()).collect();
        assert_eq!(counts, vec![13, 11, 9, 6, 5]);
    }

    #[test]
    fn parentless_table_takes_the_value() {
        let s = build_structure(ModelKind::Je, &ScenarioSpec::tray_return());
        let mut p = full(ModelKind::Je);
        p.insert(key("P(D1)"), 0.6);
        let net = parametrize(&s, &p).unwrap();
        assert_eq!(net.cpt("D1").unwrap().rows(), &[0.6]);
    }

    #[test]
    fn rows_follow_key_contexts() {
        let s = build_structure(ModelKind::Fc, &ScenarioSpec::tray_return());
        let mut p = full(ModelKind::Fc);
        p.insert(key("P(A1|D1=1,N=0)"), 0.25);
        let net = parametrize(&s, &p).unwrap();
        assert_eq!(net.cpt("A1").unwrap().p_one(&[true, false]), 0.25);
    }

    #[test]
    fn key_mismatches_are_named() {
        let s = build_structure(ModelKind::Fc, &ScenarioSpec::tray_return());
        let mut p = full(ModelKind::Fc);
        p.values.remove(&key("P(D2|N=0)"));
        assert_eq!(
            parametrize(&s, &p).unwrap_err(),
            ModelError::CalibrationMismatch {
                key: "P(D2|N=0)".into(),
                problem: "missing"
            }
        );

        let s = build_structure(ModelKind::DOnly, &ScenarioSpec::tray_return());
        let mut p = full(ModelKind::DOnly);
        p.insert(key("P(N)"), 0.8);
        assert!(matches!(
            parametrize(&s, &p),
            Err(ModelError::CalibrationMismatch { key, .. }) if key == "P(N)"
        ));
    }

    #[test]
    fn out_of_range_values_are_rejected() {
        let s = build_structure(ModelKind::NOnly, &ScenarioSpec::tray_return());
        let mut p = full(ModelKind::NOnly);
        p.insert(key("P(N)"), 1.2);
        assert!(matches!(
            parametrize(&s, &p),
            Err(ModelError::InvalidParameter { .. })
        ));
    }

    #[test]
    fn parameter_file_round_trip() {
        let file = ParameterFile {
            schema_version: crate::SCHEMA_VERSION,
            model_kind: ModelKind::Dm,
            scenario: "tray-return".into(),
            provenance: "test".into(),
            parameters: full(ModelKind::Dm),
        };
        assert_eq!(ParameterFile::from_json(&file.to_json()).unwrap(), file);
        assert!(ParameterFile::from_json("{\"schema_version\":9}").is_err());
    }
}
