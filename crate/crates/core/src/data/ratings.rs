//! Rating tables.
//!
//! ```text
//! # scale_max=100
//! participant_id,scenario,condition,query_key,rating
//! p001,tray-return,A,P(N),80
//! p002,tray-return,D,"P(A1|D1=0,N=1)",35
//! ```
//!
//! Leading `#` lines are comments; a `scale_max=<positive number>` entry in
//! one of them declares the rating scale (default 100). Query keys that
//! contain commas must be quoted.

use std::path::Path;

use super::condition::ConditionId;
use crate::query::QueryKey;
use crate::DataError;

pub const HEADER: [&str; 5] = [
    "participant_id",
    "scenario",
    "condition",
    "query_key",
    "rating",
];
pub const DEFAULT_SCALE_MAX: f64 = 100.0;

/// One elicited likelihood judgment, on the table's rating scale.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingRecord {
    pub participant: String,
    pub scenario: String,
    pub condition: ConditionId,
    pub query: QueryKey,
    pub rating: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatingTable {
    pub scale_max: f64,
    pub records: Vec<RatingRecord>,
}

impl RatingTable {
    /// Records of one scenario, in file order.
    pub fn scenario(&self, name: &str) -> Vec<RatingRecord> {
        self.records
            .iter()
            .filter(|r| r.scenario == name)
            .cloned()
            .collect()
    }

    /// Writes the table back in the documented CSV format.
    pub fn to_csv(&self) -> String {
        // Quoting every text field keeps a leading `#` from reading as a comment.
        let mut writer = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::NonNumeric)
            .from_writer(Vec::new());
        for r in &self.records {
            writer
                .write_record([
                    r.participant.as_str(),
                    &r.scenario,
                    &r.condition.to_string(),
                    &r.query.to_string(),
                    &r.rating.to_string(),
                ])
                .expect("in-memory write");
        }
        let body = String::from_utf8(writer.into_inner().expect("in-memory write"))
            .expect("fields are UTF-8");
        format!(
            "# scale_max={}\n{}\n{body}",
            self.scale_max,
            HEADER.join(",")
        )
    }
}

fn declared_scale(text: &str) -> Result<Option<f64>, DataError> {
    let mut scale = None;
    for line in text.lines() {
        let Some(comment) = line.trim_start().strip_prefix('#') else {
            break;
        };
        if let Some(value) = comment.trim().strip_prefix("scale_max=") {
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| DataError::BadScale(value.trim().to_string()))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(DataError::BadScale(value.trim().to_string()));
            }
            scale = Some(v);
        }
    }
    Ok(scale)
}

/// Parses a rating table. Every row must parse; the first bad row aborts the
/// load with its line number. `scale_override` takes precedence over the
/// declared scale.
pub fn parse_ratings(text: &str, scale_override: Option<f64>) -> Result<RatingTable, DataError> {
    let scale_max = match scale_override {
        Some(v) if v.is_finite() && v > 0.0 => v,
        Some(v) => return Err(DataError::BadScale(v.to_string())),
        None => declared_scale(text)?.unwrap_or(DEFAULT_SCALE_MAX),
    };

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let header = reader
        .headers()
        .map_err(|e| DataError::Malformed {
            row: e.position().map_or(1, |p| p.line()),
            message: e.to_string(),
        })?
        .clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(DataError::BadHeader(
            header.iter().collect::<Vec<_>>().join(","),
        ));
    }

    let mut records = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| DataError::Malformed {
            row: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let row = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(i).unwrap_or_default();

        let participant = field(0).to_string();
        let scenario = field(1).to_string();
        if participant.is_empty() || scenario.is_empty() {
            return Err(DataError::Malformed {
                row,
                message: "participant_id and scenario must be non-empty".into(),
            });
        }
        let condition: ConditionId = field(2).parse().map_err(|_| DataError::UnknownCondition {
            row,
            value: field(2).to_string(),
        })?;
        let query: QueryKey = field(3)
            .parse()
            .map_err(|source| DataError::UnknownQueryKey {
                row,
                value: field(3).to_string(),
                source,
            })?;
        if query.condition() != Some(condition) {
            return Err(DataError::IllegalQueryForCondition {
                row,
                key: query.to_string(),
                condition,
            });
        }
        let rating: f64 = field(4).parse().map_err(|_| DataError::Malformed {
            row,
            message: format!("rating `{}` is not a number", field(4)),
        })?;
        if !(rating.is_finite() && (0.0..=scale_max).contains(&rating)) {
            return Err(DataError::OutOfRange {
                row,
                rating,
                scale_max,
            });
        }
        records.push(RatingRecord {
            participant,
            scenario,
            condition,
            query,
            rating,
        });
    }
    Ok(RatingTable { scale_max, records })
}

pub fn load_ratings(path: &Path, scale_override: Option<f64>) -> Result<RatingTable, DataError> {
    let text = std::fs::read_to_string(path).map_err(|e| DataError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_ratings(&text, scale_override)
}
