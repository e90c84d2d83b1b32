//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

pub mod oracles;

use std::collections::BTreeMap;

use norm_inference::bayes::NormNetwork;
use norm_inference::models::{
    build_structure, parametrize, required_keys, ModelKind, ParameterSet, ScenarioSpec,
};
use norm_inference::query::{NormVar, QueryKey};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn scenarios() -> [ScenarioSpec; 2] {
    [ScenarioSpec::tray_return(), ScenarioSpec::littering()]
}

fn draw<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(0.02..0.98)
}

/// Independent uniform entries for every parameter of `kind`.
pub fn random_parameters<R: Rng>(
    kind: ModelKind,
    scenario: &ScenarioSpec,
    rng: &mut R,
) -> ParameterSet {
    required_keys(&build_structure(kind, scenario))
        .unwrap()
        .into_iter()
        .map(|k| (k, draw(rng)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    /// Action CPTs favour the aligned action when the norm holds, for every
    /// fixed desire value. Everything else is unconstrained.
    NormOnly,
    /// Every CPT is monotone in every parent: the norm and the desire
    /// consistent with compliance (or enforcement) each push towards it, and
    /// the norm makes those desires more likely.
    Aligned,
}

/// The value of `var` that compliance (for the actor) or enforcement (for
/// the judge) favours.
pub fn aligned_value(var: NormVar, scenario: &ScenarioSpec) -> bool {
    match var {
        NormVar::N => true,
        NormVar::D1 | NormVar::A1 => scenario.comply_a1(),
        NormVar::D2 | NormVar::A2 => scenario.enforce_a2(),
    }
}

/// Random parameters satisfying the `mode` monotonicity constraints.
pub fn monotone_parameters<R: Rng>(
    kind: ModelKind,
    scenario: &ScenarioSpec,
    mode: Monotone,
    rng: &mut R,
) -> ParameterSet {
    let keys = required_keys(&build_structure(kind, scenario)).unwrap();
    let mut families: BTreeMap<(NormVar, Vec<NormVar>), Vec<QueryKey>> = BTreeMap::new();
    for k in keys {
        families
            .entry((k.target(), k.given_vars().collect()))
            .or_default()
            .push(k);
    }
    let mut params = ParameterSet::new();
    for ((target, ctx), keys) in families {
        let aligned_count = |k: &QueryKey| {
            ctx.iter()
                .filter(|&&v| k.value_of(v) == Some(aligned_value(v, scenario)))
                .count()
        };
        let is_action = matches!(target, NormVar::A1 | NormVar::A2);
        // q: probability of the target's aligned value.
        let qs: Vec<(QueryKey, f64)> = match mode {
            Monotone::Aligned if !ctx.is_empty() => {
                let mut values: Vec<f64> = keys.iter().map(|_| draw(rng)).collect();
                values.sort_by(f64::total_cmp);
                let mut order = keys.clone();
                order.shuffle(rng);
                order.sort_by_key(aligned_count);
                order.into_iter().zip(values).collect()
            }
            Monotone::NormOnly if is_action && ctx.contains(&NormVar::N) => {
                let mut out = Vec::new();
                let mut by_rest: BTreeMap<Vec<(NormVar, bool)>, Vec<QueryKey>> = BTreeMap::new();
                for k in keys {
                    let rest = k
                        .given()
                        .iter()
                        .copied()
                        .filter(|(v, _)| *v != NormVar::N)
                        .collect();
                    by_rest.entry(rest).or_default().push(k);
                }
                for (_, mut pair) in by_rest {
                    pair.sort_by_key(|k| k.value_of(NormVar::N));
                    let (lo, hi) = (draw(rng), draw(rng));
                    out.push((pair[0].clone(), lo.min(hi)));
                    out.push((pair[1].clone(), lo.max(hi)));
                }
                out
            }
            _ => keys.into_iter().map(|k| (k, draw(rng))).collect(),
        };
        for (k, q) in qs {
            let p_one = if aligned_value(target, scenario) {
                q
            } else {
                1.0 - q
            };
            params.insert(k, p_one);
        }
    }
    params
}

pub fn network(kind: ModelKind, scenario: &ScenarioSpec, params: &ParameterSet) -> NormNetwork {
    parametrize(&build_structure(kind, scenario), params).unwrap()
}

pub fn key(s: &str) -> QueryKey {
    s.parse().unwrap()
}
