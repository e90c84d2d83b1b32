use std::collections::BTreeMap;

use serde::Serialize;

use super::ratings::RatingRecord;
use crate::query::QueryKey;
use crate::DataError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregationMethod {
    #[default]
    Mean,
    Median,
}

impl AggregationMethod {
    pub fn name(self) -> &'static str {
        match self {
            AggregationMethod::Mean => "mean",
            AggregationMethod::Median => "median",
        }
    }
}

impl std::str::FromStr for AggregationMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mean" => Ok(AggregationMethod::Mean),
            "median" => Ok(AggregationMethod::Median),
            other => Err(format!("unknown aggregation `{other}` (mean or median)")),
        }
    }
}

/// Summary of the normalized ratings for one query key.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JudgmentStats {
    pub mean: f64,
    pub median: f64,
    pub count: usize,
    /// Sample standard deviation; zero for a single rating.
    pub std_dev: f64,
}

/// Per-key judgment summaries for a single scenario, on the 0..1 scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregatedJudgments {
    pub scenario: String,
    pub method: AggregationMethod,
    pub entries: BTreeMap<QueryKey, JudgmentStats>,
}

impl AggregatedJudgments {
    /// Central value (mean or median, per `method`) for `key`.
    pub fn estimate(&self, key: &QueryKey) -> Option<f64> {
        self.entries.get(key).map(|s| match self.method {
            AggregationMethod::Mean => s.mean,
            AggregationMethod::Median => s.median,
        })
    }

    pub fn stats(&self, key: &QueryKey) -> Option<&JudgmentStats> {
        self.entries.get(key)
    }
}

/// Mean aggregation of `records`, dividing ratings by `scale_max`.
pub fn aggregate(
    records: &[RatingRecord],
    scale_max: f64,
) -> Result<AggregatedJudgments, DataError> {
    aggregate_with(records, scale_max, AggregationMethod::Mean)
}

pub fn aggregate_with(
    records: &[RatingRecord],
    scale_max: f64,
    method: AggregationMethod,
) -> Result<AggregatedJudgments, DataError> {
    let first = records.first().ok_or(DataError::EmptyInput)?;
    if !(scale_max.is_finite() && scale_max > 0.0) {
        return Err(DataError::BadScale(scale_max.to_string()));
    }
    let mut groups: BTreeMap<QueryKey, Vec<f64>> = BTreeMap::new();
    for r in records {
        if r.scenario != first.scenario {
            return Err(DataError::MixedScenarios(
                first.scenario.clone(),
                r.scenario.clone(),
            ));
        }
        groups
            .entry(r.query.clone())
            .or_default()
            .push(r.rating / scale_max);
    }
    let entries = groups
        .into_iter()
        .map(|(key, mut values)| {
            // Sorting fixes the summation order, so the result does not
            // depend on record order.
            values.sort_by(f64::total_cmp);
            (key, summarize(&values))
        })
        .collect();
    Ok(AggregatedJudgments {
        scenario: first.scenario.clone(),
        method,
        entries,
    })
}

fn summarize(sorted: &[f64]) -> JudgmentStats {
    let n = sorted.len();
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let std_dev = if n > 1 {
        (sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    JudgmentStats {
        mean,
        median,
        count: n,
        std_dev,
    }
}
