use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ModelError;

/// Candidate causal structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    /// Norms influence desires; norms and desires jointly drive actions.
    Fc,
    /// Norms and desires jointly drive actions; desires independent of norms.
    Je,
    /// Norms act on actions only through desires.
    Dm,
    /// Lesion: desires alone drive actions, no norm node.
    DOnly,
    /// Lesion: the norm alone drives actions, no desire nodes.
    NOnly,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::Fc,
        ModelKind::Je,
        ModelKind::Dm,
        ModelKind::DOnly,
        ModelKind::NOnly,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ModelKind::Fc => "FC",
            ModelKind::Je => "JE",
            ModelKind::Dm => "DM",
            ModelKind::DOnly => "D-only",
            ModelKind::NOnly => "N-only",
        }
    }

    /// File-name friendly identifier, as accepted by `--models`.
    pub fn slug(self) -> &'static str {
        match self {
            ModelKind::Fc => "fc",
            ModelKind::Je => "je",
            ModelKind::Dm => "dm",
            ModelKind::DOnly => "d-only",
            ModelKind::NOnly => "n-only",
        }
    }

    pub fn is_lesioned(self) -> bool {
        matches!(self, ModelKind::DOnly | ModelKind::NOnly)
    }

    /// Parses a comma separated list such as `fc,je,d-only`.
    pub fn parse_list(list: &str) -> Result<Vec<ModelKind>, ModelError> {
        let mut out = Vec::new();
        for item in list.split(',') {
            let kind: ModelKind = item.trim().parse()?;
            if !out.contains(&kind) {
                out.push(kind);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ModelKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_'))
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "fc" => Ok(ModelKind::Fc),
            "je" => Ok(ModelKind::Je),
            "dm" => Ok(ModelKind::Dm),
            "donly" => Ok(ModelKind::DOnly),
            "nonly" => Ok(ModelKind::NOnly),
            _ => Err(ModelError::UnknownKind(s.to_string())),
        }
    }
}

impl Serialize for ModelKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for ModelKind {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
