use norm_inference::{BayesError, DataError, Error, ModelError, StatsError};

/// Why a command stopped, mapped onto the exit-code policy.
#[derive(Debug)]
pub enum Failure {
    /// Bad invocation (exit 1).
    Usage(String),
    /// Unreadable or invalid input (exit 2).
    Data(String),
    /// Some models failed, the rest were written (exit 3). Details were
    /// already reported.
    Partial,
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Partial => 3,
        }
    }

    pub fn message(&self) -> Option<&str> {
        match self {
            Failure::Usage(m) | Failure::Data(m) => Some(m),
            Failure::Partial => None,
        }
    }
}

macro_rules! data_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Data(e.to_string())
            }
        }
    )*};
}

data_failure!(DataError, ModelError, BayesError, StatsError, Error);

pub fn io(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure::Data(format!("{}: {e}", path.display()))
}
