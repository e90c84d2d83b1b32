//! Probability keys such as `P(N)` or `P(A1|D1=0,N=1)`.
//!
//! Grammar (no whitespace anywhere):
//!
//! ```text
//! key        := "P(" var [ "|" assignment { "," assignment } ] ")"
//! assignment := var "=" ( "0" | "1" )
//! var        := "N" | "D1" | "D2" | "A1" | "A2"
//! ```
//!
//! Every key denotes the probability that the target variable equals 1.
//! Assignments may be written in any order; the canonical form (used by
//! `Display`) orders them D1, D2, N, A1, A2.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bayes::{Agent, Assignment, Role, Variable};
use crate::data::ConditionId;

/// The five variables shared by all norm models.
///
/// The derived ordering (D1, D2, N, A1, A2) is the canonical order of
/// conditioning contexts and of CPT parents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormVar {
    D1,
    D2,
    N,
    A1,
    A2,
}

impl NormVar {
    /// Declaration order used when building networks.
    pub const ALL: [NormVar; 5] = [
        NormVar::N,
        NormVar::D1,
        NormVar::D2,
        NormVar::A1,
        NormVar::A2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NormVar::N => "N",
            NormVar::D1 => "D1",
            NormVar::D2 => "D2",
            NormVar::A1 => "A1",
            NormVar::A2 => "A2",
        }
    }

    pub fn role(self) -> Role {
        match self {
            NormVar::N => Role::Norm,
            NormVar::D1 | NormVar::D2 => Role::Desire,
            NormVar::A1 | NormVar::A2 => Role::Action,
        }
    }

    pub fn agent(self) -> Agent {
        match self {
            NormVar::N => Agent::Shared,
            NormVar::D1 | NormVar::A1 => Agent::Actor,
            NormVar::D2 | NormVar::A2 => Agent::Judge,
        }
    }

    pub fn variable(self) -> Variable {
        Variable::new(self.name(), self.role(), self.agent())
    }

    pub fn from_name(name: &str) -> Option<NormVar> {
        NormVar::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for NormVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryKeyError {
    #[error("expected `{expected}` at byte {at}")]
    Expected { expected: &'static str, at: usize },
    #[error("unknown variable at byte {at}")]
    UnknownVariable { at: usize },
    #[error("variable {0} assigned twice")]
    Duplicate(NormVar),
    #[error("target {0} also appears in the conditioning context")]
    TargetConditioned(NormVar),
    #[error("trailing input at byte {at}")]
    Trailing { at: usize },
}

/// `P(target = 1 | given)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QueryKey {
    target: NormVar,
    given: Vec<(NormVar, bool)>,
}

impl QueryKey {
    pub fn new(target: NormVar, given: &[(NormVar, bool)]) -> Result<Self, QueryKeyError> {
        let mut given = given.to_vec();
        given.sort_by_key(|(v, _)| *v);
        for w in given.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(QueryKeyError::Duplicate(w[0].0));
            }
        }
        if given.iter().any(|(v, _)| *v == target) {
            return Err(QueryKeyError::TargetConditioned(target));
        }
        Ok(QueryKey { target, given })
    }

    /// Unconditional key `P(target)`.
    pub fn marginal(target: NormVar) -> Self {
        QueryKey {
            target,
            given: Vec::new(),
        }
    }

    pub fn target(&self) -> NormVar {
        self.target
    }

    /// Conditioning context in canonical order.
    pub fn given(&self) -> &[(NormVar, bool)] {
        &self.given
    }

    pub fn given_vars(&self) -> impl Iterator<Item = NormVar> + '_ {
        self.given.iter().map(|(v, _)| *v)
    }

    pub fn value_of(&self, var: NormVar) -> Option<bool> {
        self.given.iter().find(|(v, _)| *v == var).map(|(_, b)| *b)
    }

    pub fn evidence(&self) -> Assignment {
        self.given.iter().map(|(v, b)| (v.name(), *b)).collect()
    }

    /// The elicitation condition in which this key is asked, if any.
    pub fn condition(&self) -> Option<ConditionId> {
        use NormVar::*;
        let ctx: Vec<NormVar> = self.given_vars().collect();
        match (self.target, ctx.as_slice()) {
            (N, []) | (D1, []) | (D2, []) | (D1, [N]) | (D2, [N]) => Some(ConditionId::A),
            (A1, [D1]) | (A2, [D2]) => Some(ConditionId::B),
            (A1, [N]) | (A2, [N]) => Some(ConditionId::C),
            (A1, [D1, N]) | (A2, [D2, N]) => Some(ConditionId::D),
            (D1, [A1]) | (N, [A1]) | (D2, [A1, A2]) | (N, [A1, A2]) => Some(ConditionId::E),
            _ => None,
        }
    }
}

impl fmt::Display for QueryKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({}", self.target)?;
        for (i, (v, b)) in self.given.iter().enumerate() {
            let sep = if i == 0 { '|' } else { ',' };
            write!(f, "{sep}{v}={}", u8::from(*b))?;
        }
        f.write_str(")")
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    at: usize,
}

impl Cursor<'_> {
    fn eat(&mut self, lit: &'static str) -> bool {
        if self.s[self.at..].starts_with(lit.as_bytes()) {
            self.at += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &'static str) -> Result<(), QueryKeyError> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(QueryKeyError::Expected {
                expected: lit,
                at: self.at,
            })
        }
    }

    fn var(&mut self) -> Result<NormVar, QueryKeyError> {
        // Two-byte names first so that "N" never shadows a longer match.
        for v in [
            NormVar::D1,
            NormVar::D2,
            NormVar::A1,
            NormVar::A2,
            NormVar::N,
        ] {
            if self.eat(v.name()) {
                return Ok(v);
            }
        }
        Err(QueryKeyError::UnknownVariable { at: self.at })
    }

    fn bit(&mut self) -> Result<bool, QueryKeyError> {
        if self.eat("0") {
            Ok(false)
        } else if self.eat("1") {
            Ok(true)
        } else {
            Err(QueryKeyError::Expected {
                expected: "0 or 1",
                at: self.at,
            })
        }
    }
}

impl FromStr for QueryKey {
    type Err = QueryKeyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor {
            s: s.as_bytes(),
            at: 0,
        };
        c.expect("P(")?;
        let target = c.var()?;
        let mut given = Vec::new();
        if c.eat("|") {
            loop {
                let v = c.var()?;
                c.expect("=")?;
                given.push((v, c.bit()?));
                if !c.eat(",") {
                    break;
                }
            }
        }
        c.expect(")")?;
        if c.at != s.len() {
            return Err(QueryKeyError::Trailing { at: c.at });
        }
        QueryKey::new(target, &given)
    }
}

impl Serialize for QueryKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QueryKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
