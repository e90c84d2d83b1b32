use thiserror::Error;

use crate::data::ConditionId;
use crate::query::QueryKeyError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BayesError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` declared more than once")]
    DuplicateVariable(String),
    #[error("variable `{0}` has role Norm but is not shared across agents")]
    NormNotShared(String),
    #[error("networks are limited to {max} variables, got {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error("variable `{0}` has no conditional probability table")]
    MissingCpt(String),
    #[error("variable `{0}` has more than one conditional probability table")]
    DuplicateCpt(String),
    #[error("`{child}` lists parent `{parent}` more than once")]
    DuplicateParent { child: String, parent: String },
    #[error("parent relation contains a cycle through `{0}`")]
    Cycle(String),
    #[error("table for `{child}` needs {expected} rows, got {got}")]
    RowCount {
        child: String,
        expected: usize,
        got: usize,
    },
    #[error("table for `{child}` row {row}: {value} is not a probability")]
    InvalidProbability {
        child: String,
        row: usize,
        value: f64,
    },
    #[error("table for `{child}`: bad parent_bits `{bits}`")]
    BadParentBits { child: String, bits: String },
    #[error("variable `{0}` assigned twice")]
    DuplicateAssignment(String),
    #[error("assignment is missing variable `{0}`")]
    IncompleteAssignment(String),
    #[error("query variable `{0}` is also part of the evidence")]
    QueryInEvidence(String),
    #[error("evidence has zero probability under the model")]
    ImpossibleEvidence,
    #[error("evidence probability underflowed to zero although it is attainable")]
    NumericalUnderflow,
    #[error("sample count must be at least 1")]
    InvalidSampleCount,
    #[error("no sample out of {drawn} matched the evidence")]
    InsufficientSamples { drawn: usize },
    #[error(
        "d-separation query needs two distinct variables outside the conditioning set (`{0}`)"
    )]
    InvalidSeparationQuery(String),
    #[error("malformed network document: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error(transparent)]
    Bayes(#[from] BayesError),
    #[error("unknown model kind `{0}` (expected fc, je, dm, d-only or n-only)")]
    UnknownKind(String),
    #[error("calibration mismatch: parameter {key} is {problem}")]
    CalibrationMismatch { key: String, problem: &'static str },
    #[error("parameter {key} = {value} is not a probability")]
    InvalidParameter { key: String, value: f64 },
    #[error("query {0} is not applicable to this model")]
    NotApplicable(String),
    #[error("invalid posterior query {key}: {reason}")]
    InvalidQuery { key: String, reason: &'static str },
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("variable `{0}` is not one of N, D1, D2, A1, A2")]
    ForeignVariable(String),
    #[error(transparent)]
    QueryKey(#[from] QueryKeyError),
    #[error("malformed document: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DataError {
    #[error("row {row}: {message}")]
    Malformed { row: u64, message: String },
    #[error("row {row}: rating {rating} outside the scale 0..={scale_max}")]
    OutOfRange {
        row: u64,
        rating: f64,
        scale_max: f64,
    },
    #[error("row {row}: unknown condition `{value}`")]
    UnknownCondition { row: u64, value: String },
    #[error("row {row}: unknown query_key `{value}`: {source}")]
    UnknownQueryKey {
        row: u64,
        value: String,
        source: QueryKeyError,
    },
    #[error("row {row}: query_key {key} is not elicited in condition {condition}")]
    IllegalQueryForCondition {
        row: u64,
        key: String,
        condition: ConditionId,
    },
    #[error("header must be `participant_id,scenario,condition,query_key,rating`, got `{0}`")]
    BadHeader(String),
    #[error("invalid scale declaration: {0}")]
    BadScale(String),
    #[error("no rating records to aggregate")]
    EmptyInput,
    #[error("records mix scenarios `{0}` and `{1}`")]
    MixedScenarios(String, String),
    #[error("judgments are for scenario `{found}`, expected `{expected}`")]
    ScenarioMismatch { expected: String, found: String },
    #[error("missing {key}, which condition {condition} supplies")]
    MissingCalibrationKey { key: String, condition: ConditionId },
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least {need} observations, got {got}")]
    TooFewObservations { need: usize, got: usize },
    #[error("correlation undefined: a series is constant")]
    UndefinedCorrelation,
    #[error("variance is zero; the test statistic is undefined")]
    DegenerateVariance,
    #[error("need at least 2 groups, got {0}")]
    TooFewGroups(usize),
    #[error("only {got} shared grid cells, need at least {need}")]
    InsufficientPairs { need: usize, got: usize },
    #[error("non-finite observation")]
    NonFinite,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Bayes(#[from] BayesError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}
