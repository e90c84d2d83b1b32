//! Synthetic rating studies.
//!
//! A ground-truth network answers every elicited query exactly; each
//! simulated participant reports that value plus Gaussian noise, clipped and
//! rounded onto the rating scale.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};

use crate::bayes::{eliminate_posterior, NormNetwork};
use crate::data::{ConditionId, RatingRecord, RatingTable, DEFAULT_SCALE_MAX};
use crate::models::{ParameterSet, QueryGrid, ScenarioSpec};
use crate::query::{NormVar, QueryKey};
use crate::ModelError;

/// Participants per condition (A to E) in the bundled synthetic study.
pub fn study_sizes(scenario: &str) -> [usize; 5] {
    match scenario {
        "littering" => [49, 25, 25, 50, 51],
        _ => [51, 24, 25, 51, 49],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub participants: [usize; 5],
    /// Noise standard deviation on the probability scale.
    pub noise_sd: f64,
    pub scale_max: f64,
    pub seed: u64,
}

impl SynthConfig {
    pub fn for_scenario(scenario: &ScenarioSpec, seed: u64) -> Self {
        SynthConfig {
            participants: study_sizes(&scenario.name),
            noise_sd: 0.15,
            scale_max: DEFAULT_SCALE_MAX,
            seed,
        }
    }
}

fn key(s: &str) -> QueryKey {
    s.parse().expect("well-formed key")
}

/// FC ground truth for the two built-in scenarios.
///
/// `D1 = 1` is the actor wanting the `A1 = 1` outcome and `D2 = 1` the judge
/// wanting `A2 = 1`.
pub fn reference_parameters(scenario: &str) -> Option<ParameterSet> {
    let values: [(&str, f64); 13] = match scenario {
        "tray-return" => [
            ("P(N)", 0.75),
            ("P(D1|N=0)", 0.3),
            ("P(D1|N=1)", 0.6),
            ("P(D2|N=0)", 0.35),
            ("P(D2|N=1)", 0.7),
            ("P(A1|D1=0,N=0)", 0.1),
            ("P(A1|D1=0,N=1)", 0.4),
            ("P(A1|D1=1,N=0)", 0.7),
            ("P(A1|D1=1,N=1)", 0.9),
            ("P(A2|D2=0,N=0)", 0.05),
            ("P(A2|D2=0,N=1)", 0.2),
            ("P(A2|D2=1,N=0)", 0.25),
            ("P(A2|D2=1,N=1)", 0.55),
        ],
        "littering" => [
            ("P(N)", 0.85),
            ("P(D1|N=0)", 0.6),
            ("P(D1|N=1)", 0.3),
            ("P(D2|N=0)", 0.4),
            ("P(D2|N=1)", 0.75),
            ("P(A1|D1=0,N=0)", 0.15),
            ("P(A1|D1=0,N=1)", 0.03),
            ("P(A1|D1=1,N=0)", 0.85),
            ("P(A1|D1=1,N=1)", 0.35),
            ("P(A2|D2=0,N=0)", 0.05),
            ("P(A2|D2=0,N=1)", 0.25),
            ("P(A2|D2=1,N=0)", 0.3),
            ("P(A2|D2=1,N=1)", 0.6),
        ],
        _ => return None,
    };
    Some(values.iter().map(|&(k, v)| (key(k), v)).collect())
}

/// Every key elicited in `condition`, in key order.
pub fn condition_keys(condition: ConditionId) -> Vec<QueryKey> {
    let mut keys = Vec::new();
    for target in NormVar::ALL {
        let mut others: Vec<NormVar> = NormVar::ALL.into_iter().filter(|&v| v != target).collect();
        others.sort();
        for subset in 0u32..1 << others.len() {
            let vars: Vec<NormVar> = (0..others.len())
                .filter(|i| subset >> i & 1 == 1)
                .map(|i| others[i])
                .collect();
            for bits in 0u32..1 << vars.len() {
                let given: Vec<(NormVar, bool)> = vars
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, bits >> (vars.len() - 1 - i) & 1 == 1))
                    .collect();
                let k = QueryKey::new(target, &given).expect("distinct variables");
                if k.condition() == Some(condition) {
                    keys.push(k);
                }
            }
        }
    }
    keys.sort();
    keys
}

/// Keys asked of simulated participants. Condition E asks the scenario's
/// default grid rather than every counterfactual combination.
pub fn elicited_keys(condition: ConditionId, scenario: &ScenarioSpec) -> Vec<QueryKey> {
    if condition == ConditionId::E {
        return QueryGrid::default_for(scenario)
            .queries()
            .iter()
            .map(|q| q.key().clone())
            .collect();
    }
    condition_keys(condition)
}

/// Simulates one scenario's rating study from `truth`.
pub fn simulate_ratings(
    truth: &NormNetwork,
    scenario: &ScenarioSpec,
    config: &SynthConfig,
) -> Result<RatingTable, ModelError> {
    if !(config.noise_sd >= 0.0 && config.noise_sd.is_finite()) {
        return Err(ModelError::InvalidParameter {
            key: "noise_sd".into(),
            value: config.noise_sd,
        });
    }
    let noise = Normal::new(0.0, config.noise_sd).expect("checked above");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut records = Vec::new();
    for (condition, &n) in ConditionId::ALL.iter().zip(&config.participants) {
        let keys = elicited_keys(*condition, scenario);
        let mut exact = Vec::with_capacity(keys.len());
        for k in &keys {
            let p = eliminate_posterior(truth, k.target().name(), &k.evidence())?;
            exact.push(p.p_true());
        }
        for i in 0..n {
            let participant = format!("{}{:03}", condition.to_string().to_lowercase(), i + 1);
            for (k, &p) in keys.iter().zip(&exact) {
                let judged = (p + noise.sample(&mut rng)).clamp(0.0, 1.0);
                records.push(RatingRecord {
                    participant: participant.clone(),
                    scenario: scenario.name.clone(),
                    condition: *condition,
                    query: k.clone(),
                    rating: (judged * config.scale_max).round(),
                });
            }
        }
    }
    Ok(RatingTable {
        scale_max: config.scale_max,
        records,
    })
}
