use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::assignment::Assignment;
use super::enumerate::Distribution;
use super::network::NormNetwork;
use crate::BayesError;

/// Total assignments drawn from a network, packed one `u32` per sample
/// (bit `i` holds the value of the `i`-th declared variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    variables: Vec<String>,
    states: Vec<u32>,
}

impl SampleSet {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn packed(&self) -> &[u32] {
        &self.states
    }

    pub fn assignment(&self, i: usize) -> Assignment {
        let s = self.states[i];
        self.variables
            .iter()
            .enumerate()
            .map(|(j, name)| (name.as_str(), s >> j & 1 == 1))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Assignment> + '_ {
        (0..self.len()).map(|i| self.assignment(i))
    }

    /// Fraction of samples equal to the total assignment `state`.
    pub fn frequency(&self, state: &Assignment) -> Result<f64, BayesError> {
        let (mask, values) = self.pack(state)?;
        if mask.count_ones() as usize != self.variables.len() {
            let missing = self
                .variables
                .iter()
                .find(|v| !state.contains(v))
                .cloned()
                .unwrap_or_default();
            return Err(BayesError::IncompleteAssignment(missing));
        }
        let hits = self.states.iter().filter(|&&s| s == values).count();
        Ok(hits as f64 / self.len() as f64)
    }

    /// Rejection estimate of `P(query | evidence)` from these samples.
    pub fn estimate(
        &self,
        query: &str,
        evidence: &Assignment,
    ) -> Result<RejectionEstimate, BayesError> {
        let q = self
            .variables
            .iter()
            .position(|v| v == query)
            .ok_or_else(|| BayesError::UnknownVariable(query.to_string()))?;
        let (mask, values) = self.pack(evidence)?;
        if mask >> q & 1 == 1 {
            return Err(BayesError::QueryInEvidence(query.to_string()));
        }
        let mut counts = [0usize; 2];
        for &s in &self.states {
            if s & mask == values {
                counts[(s >> q & 1) as usize] += 1;
            }
        }
        RejectionEstimate::from_counts(counts, self.len())
    }

    fn pack(&self, a: &Assignment) -> Result<(u32, u32), BayesError> {
        let mut mask = 0;
        let mut values = 0;
        for (name, v) in a.iter() {
            let i = self
                .variables
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| BayesError::UnknownVariable(name.to_string()))?;
            mask |= 1 << i;
            if v {
                values |= 1 << i;
            }
        }
        Ok((mask, values))
    }
}

/// Posterior estimate from the samples that matched the evidence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RejectionEstimate {
    pub distribution: Distribution,
    pub accepted: usize,
    pub drawn: usize,
}

impl RejectionEstimate {
    fn from_counts(counts: [usize; 2], drawn: usize) -> Result<Self, BayesError> {
        let accepted = counts[0] + counts[1];
        if accepted == 0 {
            return Err(BayesError::InsufficientSamples { drawn });
        }
        Ok(RejectionEstimate {
            distribution: Distribution::from_masses(counts[0] as f64, counts[1] as f64),
            accepted,
            drawn,
        })
    }
}

/// Ancestral sampler over the network's topological order.
struct Sampler<'a> {
    net: &'a NormNetwork,
    rng: ChaCha8Rng,
}

impl<'a> Sampler<'a> {
    fn new(net: &'a NormNetwork, seed: u64) -> Self {
        Sampler {
            net,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn draw(&mut self) -> u32 {
        let mut state = 0u32;
        for &i in self.net.structure().topological_order() {
            let p1 = self.net.p_one_bits(i, state);
            if self.rng.random::<f64>() < p1 {
                state |= 1 << i;
            }
        }
        state
    }
}

/// Draws `count` joint states. The same seed always yields the same sequence.
pub fn forward_sample(net: &NormNetwork, seed: u64, count: usize) -> Result<SampleSet, BayesError> {
    if count == 0 {
        return Err(BayesError::InvalidSampleCount);
    }
    let mut sampler = Sampler::new(net, seed);
    let states = (0..count).map(|_| sampler.draw()).collect();
    Ok(SampleSet {
        variables: net
            .structure()
            .variables()
            .iter()
            .map(|v| v.name.clone())
            .collect(),
        states,
    })
}

/// Estimates `P(query | evidence)` by forward sampling and discarding
/// samples inconsistent with the evidence. Consumes the same random stream
/// as [`forward_sample`] with equal seed.
pub fn rejection_posterior(
    net: &NormNetwork,
    query: &str,
    evidence: &Assignment,
    seed: u64,
    count: usize,
) -> Result<RejectionEstimate, BayesError> {
    let (q, mask, values) = net.resolve_query(query, evidence)?;
    if count == 0 {
        return Err(BayesError::InvalidSampleCount);
    }
    let mut sampler = Sampler::new(net, seed);
    let mut counts = [0usize; 2];
    for _ in 0..count {
        let s = sampler.draw();
        if s & mask == values {
            counts[(s >> q & 1) as usize] += 1;
        }
    }
    RejectionEstimate::from_counts(counts, count)
}
