use serde::{Deserialize, Serialize};

use super::assignment::Assignment;
use super::cpt::{ConditionalProbabilityTable, CLAMP_EPSILON};
use super::structure::Structure;
use super::variable::Variable;
use crate::BayesError;

/// A fully parametrized binary Bayesian network.
#[derive(Debug, Clone, PartialEq)]
pub struct NormNetwork {
    structure: Structure,
    /// One table per variable, in declaration order.
    cpts: Vec<ConditionalProbabilityTable>,
}

impl NormNetwork {
    /// Assembles a network from declared variables and one table per
    /// variable (in any order). Parent relations are read off the tables.
    pub fn new(
        variables: Vec<Variable>,
        cpts: Vec<ConditionalProbabilityTable>,
    ) -> Result<Self, BayesError> {
        let mut slots: Vec<Option<ConditionalProbabilityTable>> = vec![None; variables.len()];
        for cpt in cpts {
            let i = variables
                .iter()
                .position(|v| v.name == cpt.child())
                .ok_or_else(|| BayesError::UnknownVariable(cpt.child().to_string()))?;
            if slots[i].is_some() {
                return Err(BayesError::DuplicateCpt(cpt.child().to_string()));
            }
            slots[i] = Some(cpt);
        }
        let mut ordered = Vec::with_capacity(slots.len());
        for (i, slot) in slots.into_iter().enumerate() {
            ordered.push(slot.ok_or_else(|| BayesError::MissingCpt(variables[i].name.clone()))?);
        }
        let parents = ordered.iter().map(|c| c.parents().to_vec()).collect();
        let structure = Structure::new(variables, parents)?;
        Ok(NormNetwork {
            structure,
            cpts: ordered,
        })
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.structure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structure.is_empty()
    }

    pub fn cpt(&self, name: &str) -> Result<&ConditionalProbabilityTable, BayesError> {
        Ok(&self.cpts[self.structure.index_of(name)?])
    }

    pub fn cpts(&self) -> &[ConditionalProbabilityTable] {
        &self.cpts
    }

    /// Product over variables of the table entry selected by `state`.
    pub fn joint_probability(&self, state: &Assignment) -> Result<f64, BayesError> {
        for (name, _) in state.iter() {
            self.structure.index_of(name)?;
        }
        let mut bits = 0u32;
        for (i, v) in self.structure.variables().iter().enumerate() {
            match state.get(&v.name) {
                Some(true) => bits |= 1 << i,
                Some(false) => {}
                None => return Err(BayesError::IncompleteAssignment(v.name.clone())),
            }
        }
        Ok(self.joint_bits(bits))
    }

    /// Joint probability of the packed state (bit `i` = value of variable `i`).
    pub(crate) fn joint_bits(&self, state: u32) -> f64 {
        (0..self.len())
            .map(|i| self.factor_bits(i, state))
            .product()
    }

    /// `P(X_i = state_i | parents(X_i) = state)`.
    pub(crate) fn factor_bits(&self, i: usize, state: u32) -> f64 {
        let p1 = self.p_one_bits(i, state);
        if state >> i & 1 == 1 {
            p1
        } else {
            1.0 - p1
        }
    }

    pub(crate) fn p_one_bits(&self, i: usize, state: u32) -> f64 {
        let row = self
            .structure
            .parents(i)
            .iter()
            .fold(0usize, |acc, &p| (acc << 1) | (state >> p & 1) as usize);
        self.cpts[i].rows()[row]
    }

    /// Packs evidence into `(mask, values)` bit sets.
    pub(crate) fn pack(&self, evidence: &Assignment) -> Result<(u32, u32), BayesError> {
        let mut mask = 0u32;
        let mut values = 0u32;
        for (name, value) in evidence.iter() {
            let i = self.structure.index_of(name)?;
            mask |= 1 << i;
            if value {
                values |= 1 << i;
            }
        }
        Ok((mask, values))
    }

    /// Resolves a query/evidence pair, checking the shared preconditions of
    /// all posterior routines.
    pub(crate) fn resolve_query(
        &self,
        query: &str,
        evidence: &Assignment,
    ) -> Result<(usize, u32, u32), BayesError> {
        let q = self.structure.index_of(query)?;
        let (mask, values) = self.pack(evidence)?;
        if mask >> q & 1 == 1 {
            return Err(BayesError::QueryInEvidence(query.to_string()));
        }
        Ok((q, mask, values))
    }

    /// Classifies a zero evidence mass: impossible if every consistent joint
    /// state contains a zero factor, otherwise an underflow.
    pub(crate) fn zero_mass_error(&self, mask: u32, values: u32) -> BayesError {
        let attainable = (0u32..(1 << self.len()))
            .filter(|s| s & mask == values)
            .any(|s| (0..self.len()).all(|i| self.factor_bits(i, s) > 0.0));
        if attainable {
            BayesError::NumericalUnderflow
        } else {
            BayesError::ImpossibleEvidence
        }
    }

    /// Serializes to the JSON network document.
    pub fn to_json(&self) -> String {
        let doc = NetworkDocument {
            variables: self.structure.variables().to_vec(),
            cpts: self
                .cpts
                .iter()
                .map(|c| CptDocument {
                    child: c.child().to_string(),
                    parents: c.parents().to_vec(),
                    rows: c
                        .rows()
                        .iter()
                        .enumerate()
                        .map(|(r, &p)| RowDocument {
                            parent_bits: c
                                .row_bits(r)
                                .into_iter()
                                .map(|b| if b { '1' } else { '0' })
                                .collect(),
                            p_child_1: p,
                        })
                        .collect(),
                    clamp_epsilon: (c.epsilon() != CLAMP_EPSILON).then_some(c.epsilon()),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("network document serializes")
    }

    /// Parses a JSON network document. Rows may appear in any order but every
    /// parent assignment must be present exactly once.
    pub fn from_json(text: &str) -> Result<Self, BayesError> {
        let doc: NetworkDocument =
            serde_json::from_str(text).map_err(|e| BayesError::Json(e.to_string()))?;
        let mut cpts = Vec::with_capacity(doc.cpts.len());
        for c in doc.cpts {
            let k = c.parents.len();
            if k >= super::MAX_VARIABLES {
                return Err(BayesError::TooManyVariables {
                    max: super::MAX_VARIABLES,
                    got: k + 1,
                });
            }
            let mut rows = vec![None; 1 << k];
            if c.rows.len() != rows.len() {
                return Err(BayesError::RowCount {
                    child: c.child,
                    expected: rows.len(),
                    got: c.rows.len(),
                });
            }
            for row in &c.rows {
                let bad = || BayesError::BadParentBits {
                    child: c.child.clone(),
                    bits: row.parent_bits.clone(),
                };
                if row.parent_bits.len() != k {
                    return Err(bad());
                }
                let mut idx = 0usize;
                for ch in row.parent_bits.chars() {
                    idx = (idx << 1)
                        | match ch {
                            '0' => 0,
                            '1' => 1,
                            _ => return Err(bad()),
                        };
                }
                if rows[idx].replace(row.p_child_1).is_some() {
                    return Err(bad());
                }
            }
            let rows = rows
                .into_iter()
                .map(|r| r.expect("all rows filled"))
                .collect();
            let eps = c.clamp_epsilon.unwrap_or(CLAMP_EPSILON);
            cpts.push(ConditionalProbabilityTable::with_epsilon(
                c.child, c.parents, rows, eps,
            )?);
        }
        NormNetwork::new(doc.variables, cpts)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDocument {
    variables: Vec<Variable>,
    cpts: Vec<CptDocument>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CptDocument {
    child: String,
    parents: Vec<String>,
    rows: Vec<RowDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    clamp_epsilon: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowDocument {
    parent_bits: String,
    p_child_1: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bayes::{Agent, Role};

    fn chain() -> NormNetwork {
        NormNetwork::new(
            vec![
                Variable::new("X", Role::Norm, Agent::Shared),
                Variable::new("Y", Role::Action, Agent::Actor),
            ],
            vec![
                ConditionalProbabilityTable::new("Y", vec!["X".into()], vec![0.1, 0.9]).unwrap(),
                ConditionalProbabilityTable::new("X", vec![], vec![0.5]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn chain_joint_is_product_of_entries() {
        let net = chain();
        let p = net
            .joint_probability(&Assignment::new().with("X", true).with("Y", false))
            .unwrap();
        // 0.5 * (1 - 0.9)
        assert!((p - 0.05).abs() < 1e-15);
    }

    #[test]
    fn joint_sums_to_one() {
        let net = chain();
        let total: f64 = (0u32..4).map(|s| net.joint_bits(s)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn joint_requires_total_assignment() {
        let net = chain();
        assert_eq!(
            net.joint_probability(&Assignment::new().with("X", true)),
            Err(BayesError::IncompleteAssignment("Y".into()))
        );
        assert_eq!(
            net.joint_probability(
                &Assignment::new()
                    .with("X", true)
                    .with("Y", true)
                    .with("Q", true)
            ),
            Err(BayesError::UnknownVariable("Q".into()))
        );
    }

    #[test]
    fn clamped_zero_row_bounds_the_joint() {
        let net = NormNetwork::new(
            vec![
                Variable::new("X", Role::Norm, Agent::Shared),
                Variable::new("Y", Role::Action, Agent::Actor),
            ],
            vec![
                ConditionalProbabilityTable::new("X", vec![], vec![0.3]).unwrap(),
                ConditionalProbabilityTable::new("Y", vec!["X".into()], vec![0.4, 0.0]).unwrap(),
            ],
        )
        .unwrap();
        let p = net
            .joint_probability(&Assignment::new().with("X", true).with("Y", true))
            .unwrap();
        assert!(p <= CLAMP_EPSILON * 0.3 + 1e-18);
        assert!(p > 0.0);
    }

    #[test]
    fn missing_and_duplicate_tables() {
        let vars = vec![
            Variable::new("X", Role::Norm, Agent::Shared),
            Variable::new("Y", Role::Action, Agent::Actor),
        ];
        let x = ConditionalProbabilityTable::new("X", vec![], vec![0.3]).unwrap();
        assert_eq!(
            NormNetwork::new(vars.clone(), vec![x.clone()]).unwrap_err(),
            BayesError::MissingCpt("Y".into())
        );
        assert_eq!(
            NormNetwork::new(vars, vec![x.clone(), x]).unwrap_err(),
            BayesError::DuplicateCpt("X".into())
        );
    }

    #[test]
    fn json_round_trip_is_value_identical() {
        let net = chain();
        let back = NormNetwork::from_json(&net.to_json()).unwrap();
        assert_eq!(back, net);

        let raw = NormNetwork::new(
            vec![Variable::new("X", Role::Norm, Agent::Shared)],
            vec![ConditionalProbabilityTable::unclamped("X", vec![], vec![0.0]).unwrap()],
        )
        .unwrap();
        assert_eq!(NormNetwork::from_json(&raw.to_json()).unwrap(), raw);
    }

    #[test]
    fn json_rejects_duplicate_or_malformed_rows() {
        let text = r#"{"variables":[{"name":"X","role":"norm","agent":"shared"},
            {"name":"Y","role":"action","agent":"actor"}],
            "cpts":[{"child":"X","parents":[],"rows":[{"parent_bits":"","p_child_1":0.5}]},
                    {"child":"Y","parents":["X"],"rows":[{"parent_bits":"1","p_child_1":0.5},
                                                       {"parent_bits":"1","p_child_1":0.5}]}]}"#;
        assert!(matches!(
            NormNetwork::from_json(text),
            Err(BayesError::BadParentBits { .. })
        ));
        assert!(matches!(
            NormNetwork::from_json("{\"variables\":[]"),
            Err(BayesError::Json(_))
        ));
    }
}
