use serde::Serialize;

use super::assignment::Assignment;
use super::network::NormNetwork;
use crate::BayesError;

/// A distribution over `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Distribution {
    probabilities: [f64; 2],
}

impl Distribution {
    /// Normalizes unnormalized masses for values 0 and 1. `total` must be > 0.
    pub(crate) fn from_masses(mass0: f64, mass1: f64) -> Self {
        let total = mass0 + mass1;
        Distribution {
            probabilities: [mass0 / total, mass1 / total],
        }
    }

    pub fn p(&self, value: bool) -> f64 {
        self.probabilities[usize::from(value)]
    }

    /// `P(variable = 1)`.
    pub fn p_true(&self) -> f64 {
        self.probabilities[1]
    }

    pub fn probabilities(&self) -> [f64; 2] {
        self.probabilities
    }
}

/// Exact posterior of `query` by summing the joint over every completion of
/// `evidence`.
pub fn enumerate_posterior(
    net: &NormNetwork,
    query: &str,
    evidence: &Assignment,
) -> Result<Distribution, BayesError> {
    let (q, mask, values) = net.resolve_query(query, evidence)?;
    let mut mass = [0.0f64; 2];
    for state in 0u32..(1 << net.len()) {
        if state & mask != values {
            continue;
        }
        mass[(state >> q & 1) as usize] += net.joint_bits(state);
    }
    if mass[0] + mass[1] == 0.0 {
        return Err(net.zero_mass_error(mask, values));
    }
    Ok(Distribution::from_masses(mass[0], mass[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bayes::{Agent, ConditionalProbabilityTable, Role, Variable};

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// N, D ~ Bernoulli(0.5); P(A=1 | N, D) = 0.95 / 0.8 / 0.8 / 0.1 for
    /// (N, D) = (1,1) / (1,0) / (0,1) / (0,0).
    fn collider() -> NormNetwork {
        NormNetwork::new(
            vec![
                Variable::new("N", Role::Norm, Agent::Shared),
                Variable::new("D", Role::Desire, Agent::Actor),
                Variable::new("A", Role::Action, Agent::Actor),
            ],
            vec![
                ConditionalProbabilityTable::new("N", vec![], vec![0.5]).unwrap(),
                ConditionalProbabilityTable::new("D", vec![], vec![0.5]).unwrap(),
                ConditionalProbabilityTable::new("A", strs(&["N", "D"]), vec![0.1, 0.8, 0.8, 0.95])
                    .unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn collider_posterior_matches_hand_enumeration() {
        // Oracle: P(N=1, A=1) = 0.25 * (0.95 + 0.8); P(A=1) = 0.25 * 2.65.
        let expected: f64 = (0.95 + 0.8) / (0.95 + 0.8 + 0.8 + 0.1);
        assert!((expected - 0.660_377_358_490_566).abs() < 1e-12);
        let d = enumerate_posterior(&collider(), "N", &Assignment::new().with("A", true)).unwrap();
        assert!((d.p_true() - expected).abs() < 1e-12);
        assert!((d.p(false) + d.p(true) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_evidence_gives_the_marginal() {
        let d = enumerate_posterior(&collider(), "A", &Assignment::new()).unwrap();
        assert!((d.p_true() - 0.25 * 2.65).abs() < 1e-12);
    }

    #[test]
    fn markov_blanket_identity_for_a_leaf() {
        let net = collider();
        let ev = Assignment::new().with("N", true).with("D", false);
        let d = enumerate_posterior(&net, "A", &ev).unwrap();
        assert!((d.p_true() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn precondition_errors() {
        let net = collider();
        assert_eq!(
            enumerate_posterior(&net, "A", &Assignment::new().with("A", true)),
            Err(BayesError::QueryInEvidence("A".into()))
        );
        assert_eq!(
            enumerate_posterior(&net, "Z", &Assignment::new()),
            Err(BayesError::UnknownVariable("Z".into()))
        );
        assert_eq!(
            enumerate_posterior(&net, "A", &Assignment::new().with("Q", true)),
            Err(BayesError::UnknownVariable("Q".into()))
        );
    }

    #[test]
    fn impossible_evidence_is_a_typed_error() {
        let net = NormNetwork::new(
            vec![
                Variable::new("X", Role::Norm, Agent::Shared),
                Variable::new("Y", Role::Action, Agent::Actor),
            ],
            vec![
                ConditionalProbabilityTable::unclamped("X", vec![], vec![1.0]).unwrap(),
                ConditionalProbabilityTable::unclamped("Y", strs(&["X"]), vec![0.5, 1.0]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            enumerate_posterior(&net, "X", &Assignment::new().with("Y", false)),
            Err(BayesError::ImpossibleEvidence)
        );
    }

    #[test]
    fn underflow_is_distinguished_from_impossibility() {
        // Fifteen leaves each observed at probability 1e-30: the evidence
        // mass is 5e-451, below the smallest subnormal double.
        let mut vars = vec![Variable::new("R", Role::Norm, Agent::Shared)];
        let mut cpts = vec![ConditionalProbabilityTable::new("R", vec![], vec![0.5]).unwrap()];
        let mut ev = Assignment::new();
        for i in 0..15 {
            let name = format!("L{i}");
            vars.push(Variable::new(&name, Role::Action, Agent::Actor));
            cpts.push(
                ConditionalProbabilityTable::unclamped(&name, vec!["R".into()], vec![1e-30, 1e-30])
                    .unwrap(),
            );
            ev.insert(name, true).unwrap();
        }
        let net = NormNetwork::new(vars, cpts).unwrap();
        assert_eq!(
            enumerate_posterior(&net, "R", &ev),
            Err(BayesError::NumericalUnderflow)
        );
    }
}
