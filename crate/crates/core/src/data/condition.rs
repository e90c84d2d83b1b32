use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Elicitation condition.
///
/// * A: norm and desire priors, desires given the norm
/// * B: actions given desires
/// * C: actions given the norm
/// * D: actions given desires and the norm
/// * E: norm and desire posteriors given observed actions
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConditionId {
    A,
    B,
    C,
    D,
    E,
}

impl ConditionId {
    pub const ALL: [ConditionId; 5] = [
        ConditionId::A,
        ConditionId::B,
        ConditionId::C,
        ConditionId::D,
        ConditionId::E,
    ];
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            ConditionId::A => "A",
            ConditionId::B => "B",
            ConditionId::C => "C",
            ConditionId::D => "D",
            ConditionId::E => "E",
        };
        f.write_str(c)
    }
}

impl FromStr for ConditionId {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(ConditionId::A),
            "B" => Ok(ConditionId::B),
            "C" => Ok(ConditionId::C),
            "D" => Ok(ConditionId::D),
            "E" => Ok(ConditionId::E),
            _ => Err(()),
        }
    }
}
