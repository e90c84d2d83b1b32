use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Norm,
    Desire,
    Action,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Agent {
    Actor,
    Judge,
    Shared,
}

/// A declared binary variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub role: Role,
    pub agent: Agent,
}

impl Variable {
    pub fn new(name: impl Into<String>, role: Role, agent: Agent) -> Self {
        Variable {
            name: name.into(),
            role,
            agent,
        }
    }
}
