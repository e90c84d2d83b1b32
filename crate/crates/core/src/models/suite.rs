use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::kind::ModelKind;
use super::params::{parametrize, ParameterSet};
use super::scenario::ScenarioSpec;
use super::structure::build_structure;
use crate::bayes::{eliminate_posterior, NormNetwork};
use crate::query::{NormVar, QueryKey};
use crate::ModelError;

/// A posterior query on a norm or desire given observed actions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosteriorQuery(QueryKey);

impl PosteriorQuery {
    pub fn new(key: QueryKey) -> Result<Self, ModelError> {
        let invalid = |reason| ModelError::InvalidQuery {
            key: key.to_string(),
            reason,
        };
        if !matches!(key.target(), NormVar::N | NormVar::D1 | NormVar::D2) {
            return Err(invalid("target must be N, D1 or D2"));
        }
        if key.given().is_empty() {
            return Err(invalid("evidence must not be empty"));
        }
        if key
            .given_vars()
            .any(|v| !matches!(v, NormVar::A1 | NormVar::A2))
        {
            return Err(invalid("evidence may only fix A1 and A2"));
        }
        Ok(PosteriorQuery(key))
    }

    pub fn key(&self) -> &QueryKey {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridSource {
    Default,
    Custom,
}

/// Ordered list of posterior queries evaluated for every model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryGrid {
    queries: Vec<PosteriorQuery>,
    source: GridSource,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridDocument {
    #[serde(default)]
    schema_version: Option<u32>,
    queries: Vec<QueryKey>,
}

impl QueryGrid {
    /// Eight cells: `D1` and `N` given either `A1` value, then `D2` and `N`
    /// given the noncompliant `A1` value and either `A2` value.
    pub fn default_for(scenario: &ScenarioSpec) -> Self {
        use NormVar::*;
        let violate = scenario.noncomply_a1();
        let mut keys = Vec::with_capacity(8);
        for target in [D1, N] {
            for a1 in [false, true] {
                keys.push(QueryKey::new(target, &[(A1, a1)]));
            }
        }
        for target in [D2, N] {
            for a2 in [false, true] {
                keys.push(QueryKey::new(target, &[(A1, violate), (A2, a2)]));
            }
        }
        QueryGrid {
            queries: keys
                .into_iter()
                .map(|k| PosteriorQuery::new(k.expect("valid key")).expect("valid query"))
                .collect(),
            source: GridSource::Default,
        }
    }

    pub fn custom(keys: Vec<QueryKey>) -> Result<Self, ModelError> {
        let mut queries: Vec<PosteriorQuery> = Vec::with_capacity(keys.len());
        for key in keys {
            let q = PosteriorQuery::new(key)?;
            if queries.contains(&q) {
                return Err(ModelError::InvalidQuery {
                    key: q.key().to_string(),
                    reason: "listed twice in the grid",
                });
            }
            queries.push(q);
        }
        if queries.is_empty() {
            return Err(ModelError::Json("grid lists no queries".into()));
        }
        Ok(QueryGrid {
            queries,
            source: GridSource::Custom,
        })
    }

    /// Parses `{"schema_version": 1, "queries": ["P(N|A1=0)", ...]}`.
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let doc: GridDocument =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        if let Some(v) = doc.schema_version {
            if v != crate::SCHEMA_VERSION {
                return Err(ModelError::Json(format!("unsupported schema_version {v}")));
            }
        }
        QueryGrid::custom(doc.queries)
    }

    pub fn queries(&self) -> &[PosteriorQuery] {
        &self.queries
    }

    pub fn source(&self) -> GridSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }
}

/// `P(target = 1 | evidence)` under `net`.
pub fn answer(net: &NormNetwork, query: &PosteriorQuery) -> Result<f64, ModelError> {
    let key = query.key();
    if !net.structure().contains(key.target().name()) {
        return Err(ModelError::NotApplicable(key.to_string()));
    }
    Ok(eliminate_posterior(net, key.target().name(), &key.evidence())?.p_true())
}

/// Evaluates every grid cell; cells whose target the model lacks are
/// reported as not applicable.
pub fn posterior_suite(net: &NormNetwork, grid: &QueryGrid) -> Result<Vec<GridCell>, ModelError> {
    grid.queries()
        .iter()
        .map(|q| {
            let value = match answer(net, q) {
                Ok(p) => CellValue::Value(p),
                Err(ModelError::NotApplicable(_)) => CellValue::NotApplicable,
                Err(e) => return Err(e),
            };
            Ok(GridCell {
                query: q.key().clone(),
                value,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CellValue {
    Value(f64),
    NotApplicable,
}

impl CellValue {
    pub fn value(self) -> Option<f64> {
        match self {
            CellValue::Value(v) => Some(v),
            CellValue::NotApplicable => None,
        }
    }
}

impl Serialize for CellValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            CellValue::Value(v) => serializer.serialize_f64(*v),
            CellValue::NotApplicable => serializer.serialize_str("n/a"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub query: QueryKey,
    pub value: CellValue,
}

impl Serialize for GridCell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("GridCell", 4)?;
        s.serialize_field("query", &self.query)?;
        s.serialize_field("target", self.query.target().name())?;
        s.serialize_field("evidence", &self.query.evidence())?;
        s.serialize_field("value", &self.value)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportSource {
    Model(ModelKind),
    Empirical,
}

impl Serialize for ReportSource {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ReportSource::Model(kind) => kind.serialize(serializer),
            ReportSource::Empirical => serializer.serialize_str("empirical"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub model_kind: ReportSource,
    pub scenario: String,
    pub parameter_provenance: String,
    pub grid: GridSource,
}

/// Posterior values on a query grid, from a model or from judgments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PosteriorReport {
    pub schema_version: u32,
    pub metadata: ReportMetadata,
    pub entries: Vec<GridCell>,
}

impl PosteriorReport {
    pub fn value(&self, key: &QueryKey) -> Option<f64> {
        self.entries
            .iter()
            .find(|c| &c.query == key)
            .and_then(|c| c.value.value())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("query,target,evidence,value\n");
        for cell in &self.entries {
            let evidence: Vec<String> = cell
                .query
                .given()
                .iter()
                .map(|(v, b)| format!("{v}={}", u8::from(*b)))
                .collect();
            let value = match cell.value {
                CellValue::Value(v) => v.to_string(),
                CellValue::NotApplicable => "n/a".into(),
            };
            let _ = writeln!(
                out,
                "\"{}\",{},{},{}",
                cell.query,
                cell.query.target(),
                evidence.join(";"),
                value
            );
        }
        out
    }

    pub fn to_table(&self) -> String {
        let source = match self.metadata.model_kind {
            ReportSource::Model(k) => k.label().to_string(),
            ReportSource::Empirical => "empirical".into(),
        };
        let mut out = format!("{source} posteriors, scenario {}\n", self.metadata.scenario);
        let width = self
            .entries
            .iter()
            .map(|c| c.query.to_string().len())
            .max()
            .unwrap_or(5)
            .max(5);
        let _ = writeln!(out, "{:<width$}  {:>8}", "query", "value");
        for cell in &self.entries {
            let value = match cell.value {
                CellValue::Value(v) => format!("{v:.4}"),
                CellValue::NotApplicable => "n/a".into(),
            };
            let _ = writeln!(out, "{:<width$}  {:>8}", cell.query.to_string(), value);
        }
        out
    }
}

/// A model bound to calibrated parameters for one scenario.
#[derive(Debug, Clone)]
pub struct CalibratedModel {
    pub kind: ModelKind,
    pub scenario: ScenarioSpec,
    pub network: NormNetwork,
    pub provenance: String,
}

impl CalibratedModel {
    pub fn new(
        kind: ModelKind,
        scenario: &ScenarioSpec,
        params: &ParameterSet,
        provenance: impl Into<String>,
    ) -> Result<Self, ModelError> {
        let network = parametrize(&build_structure(kind, scenario), params)?;
        Ok(CalibratedModel {
            kind,
            scenario: scenario.clone(),
            network,
            provenance: provenance.into(),
        })
    }

    pub fn report(&self, grid: &QueryGrid) -> Result<PosteriorReport, ModelError> {
        Ok(PosteriorReport {
            schema_version: crate::SCHEMA_VERSION,
            metadata: ReportMetadata {
                model_kind: ReportSource::Model(self.kind),
                scenario: self.scenario.name.clone(),
                parameter_provenance: self.provenance.clone(),
                grid: grid.source(),
            },
            entries: posterior_suite(&self.network, grid)?,
        })
    }

    /// Report on the scenario's default grid.
    pub fn default_report(&self) -> Result<PosteriorReport, ModelError> {
        self.report(&QueryGrid::default_for(&self.scenario))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::required_keys;

    fn key(s: &str) -> QueryKey {
        s.parse().unwrap()
    }

    fn uniform(kind: ModelKind, s: &ScenarioSpec) -> CalibratedModel {
        let p: ParameterSet = required_keys(&build_structure(kind, s))
            .unwrap()
            .into_iter()
            .map(|k| (k, 0.4))
            .collect();
        CalibratedModel::new(kind, s, &p, "uniform").unwrap()
    }

    #[test]
    fn default_grid_conditions_the_judge_on_noncompliance() {
        let tray: Vec<String> = QueryGrid::default_for(&ScenarioSpec::tray_return())
            .queries()
            .iter()
            .map(|q| q.key().to_string())
            .collect();
        assert_eq!(
            tray,
            [
                "P(D1|A1=0)",
                "P(D1|A1=1)",
                "P(N|A1=0)",
                "P(N|A1=1)",
                "P(D2|A1=0,A2=0)",
                "P(D2|A1=0,A2=1)",
                "P(N|A1=0,A2=0)",
                "P(N|A1=0,A2=1)"
            ]
        );
        let litter = QueryGrid::default_for(&ScenarioSpec::littering());
        assert_eq!(litter.queries()[7].key().to_string(), "P(N|A1=1,A2=1)");
    }

    #[test]
    fn invalid_queries() {
        for bad in ["P(A1|A2=1)", "P(N|D1=1)", "P(D1|A1=1,N=0)"] {
            assert!(matches!(
                PosteriorQuery::new(key(bad)),
                Err(ModelError::InvalidQuery { .. })
            ));
        }
        assert!(PosteriorQuery::new(key("P(N)")).is_err());
        assert!(QueryGrid::custom(vec![key("P(N|A1=0)"), key("P(N|A1=0)")]).is_err());
    }

    #[test]
    fn lesioned_models_mark_missing_targets() {
        let s = ScenarioSpec::tray_return();
        let report = uniform(ModelKind::NOnly, &s).default_report().unwrap();
        for cell in &report.entries {
            let is_desire = cell.query.target() != NormVar::N;
            assert_eq!(
                cell.value == CellValue::NotApplicable,
                is_desire,
                "{}",
                cell.query
            );
        }
        let report = uniform(ModelKind::DOnly, &s).default_report().unwrap();
        assert_eq!(report.value(&key("P(N|A1=0)")), None);
        assert!(report.value(&key("P(D1|A1=0)")).is_some());

        let net = &uniform(ModelKind::NOnly, &s).network;
        assert!(matches!(
            answer(net, &PosteriorQuery::new(key("P(D1|A1=1)")).unwrap()),
            Err(ModelError::NotApplicable(_))
        ));
    }

    #[test]
    fn grid_file_and_serializations() {
        let grid = QueryGrid::from_json(r#"{"schema_version":1,"queries":["P(N|A1=0)"]}"#).unwrap();
        assert_eq!(grid.source(), GridSource::Custom);
        let s = ScenarioSpec::tray_return();
        let report = uniform(ModelKind::NOnly, &s).report(&grid).unwrap();
        assert_eq!(report.entries.len(), 1);
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["metadata"]["model_kind"], "N-only");
        assert_eq!(json["metadata"]["grid"], "custom");
        assert_eq!(json["entries"][0]["evidence"]["A1"], 0);

        let na = uniform(ModelKind::NOnly, &s).default_report().unwrap();
        let json: serde_json::Value = serde_json::from_str(&na.to_json()).unwrap();
        assert_eq!(json["entries"][0]["value"], "n/a");
        assert!(na
            .to_csv()
            .starts_with("query,target,evidence,value\n\"P(D1|A1=0)\",D1,A1=0,n/a\n"));
        assert!(na.to_table().contains("P(N|A1=0,A2=1)"));

        assert!(QueryGrid::from_json(r#"{"queries":[]}"#).is_err());
        assert!(QueryGrid::from_json(r#"{"queries":["P(A1|N=1)"]}"#).is_err());
    }
}
