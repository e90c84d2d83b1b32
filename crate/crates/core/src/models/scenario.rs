use serde::{Deserialize, Serialize};

use crate::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// The norm requires the action (returning a tray): compliance is `A1 = 1`.
    Obligative,
    /// The norm forbids the action (littering): compliance is `A1 = 0`.
    Prohibitive,
}

/// Narrative labels for each action value, indexed by the value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionLabels {
    pub a1: [String; 2],
    pub a2: [String; 2],
}

/// One social scenario: which action values count as compliance and
/// enforcement.
///
/// Desires follow the action coding: `D1 = 1` means the actor wants the
/// `A1 = 1` outcome and `D2 = 1` means the judge wants the `A2 = 1` outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioSpec {
    pub name: String,
    pub polarity: Polarity,
    pub comply_value_a1: u8,
    pub enforce_value_a2: u8,
    pub labels: ActionLabels,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDocument {
    #[serde(default)]
    schema_version: Option<u32>,
    name: String,
    polarity: Polarity,
    comply_value_a1: u8,
    enforce_value_a2: u8,
    labels: ActionLabels,
}

impl ScenarioSpec {
    pub fn new(
        name: impl Into<String>,
        polarity: Polarity,
        enforce_value_a2: u8,
        labels: ActionLabels,
    ) -> Result<Self, ModelError> {
        let comply_value_a1 = match polarity {
            Polarity::Obligative => 1,
            Polarity::Prohibitive => 0,
        };
        let spec = ScenarioSpec {
            name: name.into(),
            polarity,
            comply_value_a1,
            enforce_value_a2,
            labels,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Returning one's tray after eating.
    pub fn tray_return() -> Self {
        ScenarioSpec::new(
            "tray-return",
            Polarity::Obligative,
            1,
            ActionLabels {
                a1: ["leaves the tray".into(), "returns the tray".into()],
                a2: [
                    "says nothing".into(),
                    "asks for the tray to be returned".into(),
                ],
            },
        )
        .expect("built-in scenario is valid")
    }

    /// Not discarding litter on the street.
    pub fn littering() -> Self {
        ScenarioSpec::new(
            "littering",
            Polarity::Prohibitive,
            1,
            ActionLabels {
                a1: ["keeps holding the paper".into(), "tosses the paper".into()],
                a2: [
                    "says nothing".into(),
                    "asks for the paper to be picked up".into(),
                ],
            },
        )
        .expect("built-in scenario is valid")
    }

    fn validate(&self) -> Result<(), ModelError> {
        let bad = |m: String| Err(ModelError::InvalidScenario(m));
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
        {
            return bad(format!(
                "name `{}` must be non-empty ASCII letters, digits, `-` or `_`",
                self.name
            ));
        }
        let expected = match self.polarity {
            Polarity::Obligative => 1,
            Polarity::Prohibitive => 0,
        };
        if self.comply_value_a1 != expected {
            return bad(format!(
                "{:?} norms need comply_value_a1 = {expected}",
                self.polarity
            ));
        }
        if self.enforce_value_a2 > 1 {
            return bad("enforce_value_a2 must be 0 or 1".into());
        }
        Ok(())
    }

    pub fn comply_a1(&self) -> bool {
        self.comply_value_a1 == 1
    }

    /// The A1 value that violates the norm (after which the judge acts).
    pub fn noncomply_a1(&self) -> bool {
        !self.comply_a1()
    }

    pub fn enforce_a2(&self) -> bool {
        self.enforce_value_a2 == 1
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let doc: ScenarioDocument =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        if let Some(v) = doc.schema_version {
            if v != crate::SCHEMA_VERSION {
                return Err(ModelError::Json(format!("unsupported schema_version {v}")));
            }
        }
        let spec = ScenarioSpec {
            name: doc.name,
            polarity: doc.polarity,
            comply_value_a1: doc.comply_value_a1,
            enforce_value_a2: doc.enforce_value_a2,
            labels: doc.labels,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Versioned<'a> {
            schema_version: u32,
            #[serde(flatten)]
            spec: &'a ScenarioSpec,
        }
        serde_json::to_string_pretty(&Versioned {
            schema_version: crate::SCHEMA_VERSION,
            spec: self,
        })
        .expect("scenario serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_follow_polarity() {
        assert!(ScenarioSpec::tray_return().comply_a1());
        assert!(ScenarioSpec::littering().noncomply_a1());
        assert!(ScenarioSpec::littering().enforce_a2());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = ScenarioSpec::littering();
        assert_eq!(ScenarioSpec::from_json(&s.to_json()).unwrap(), s);

        let wrong = s
            .to_json()
            .replace("\"comply_value_a1\": 0", "\"comply_value_a1\": 1");
        assert!(matches!(
            ScenarioSpec::from_json(&wrong),
            Err(ModelError::InvalidScenario(_))
        ));
        let escape = s.to_json().replace("\"littering\"", "\"../etc\"");
        assert!(matches!(
            ScenarioSpec::from_json(&escape),
            Err(ModelError::InvalidScenario(_))
        ));
        assert!(matches!(
            ScenarioSpec::from_json("[]"),
            Err(ModelError::Json(_))
        ));
    }
}
