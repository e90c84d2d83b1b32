use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::BayesError;

/// Values for some (evidence) or all (joint state) variables of a network.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: BTreeMap<String, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `name = value`, refusing to overwrite an existing entry.
    pub fn insert(&mut self, name: impl Into<String>, value: bool) -> Result<(), BayesError> {
        let name = name.into();
        if self.values.contains_key(&name) {
            return Err(BayesError::DuplicateAssignment(name));
        }
        self.values.insert(name, value);
        Ok(())
    }

    /// Builder form of [`insert`](Self::insert).
    ///
    /// Panics if `name` is already assigned; use `insert` for untrusted input.
    pub fn with(mut self, name: impl Into<String>, value: bool) -> Self {
        self.insert(name, value).expect("variable assigned twice");
        self
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.values.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for Assignment {
    /// Later duplicates are rejected by panicking, as with [`Assignment::with`].
    fn from_iter<I: IntoIterator<Item = (S, bool)>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Assignment::new(), |acc, (k, v)| acc.with(k, v))
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.values.len()))?;
        for (k, v) in &self.values {
            map.serialize_entry(k, &u8::from(*v))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Assignment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, u8>::deserialize(deserializer)?;
        let mut values = BTreeMap::new();
        for (k, v) in raw {
            match v {
                0 | 1 => {
                    values.insert(k, v == 1);
                }
                other => {
                    return Err(serde::de::Error::custom(format!(
                        "value for `{k}` must be 0 or 1, got {other}"
                    )))
                }
            }
        }
        Ok(Assignment { values })
    }
}
