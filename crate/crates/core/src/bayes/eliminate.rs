use super::assignment::Assignment;
use super::enumerate::Distribution;
use super::network::NormNetwork;
use crate::BayesError;

/// A table over a set of variables. Bit `j` of a table index is the value of
/// `scope[j]`.
#[derive(Debug, Clone)]
struct Factor {
    scope: Vec<usize>,
    table: Vec<f64>,
}

impl Factor {
    /// The CPT of variable `i` with evidence variables fixed and dropped.
    fn from_cpt(net: &NormNetwork, i: usize, mask: u32, values: u32) -> Factor {
        let mut family: Vec<usize> = net.structure().parents(i).to_vec();
        family.push(i);
        family.sort_unstable();
        let scope: Vec<usize> = family
            .iter()
            .copied()
            .filter(|&v| mask >> v & 1 == 0)
            .collect();
        let table = (0..1usize << scope.len())
            .map(|idx| {
                let mut state = values;
                for (j, &v) in scope.iter().enumerate() {
                    if idx >> j & 1 == 1 {
                        state |= 1 << v;
                    }
                }
                net.factor_bits(i, state)
            })
            .collect();
        Factor { scope, table }
    }

    fn position(&self, v: usize) -> Option<usize> {
        self.scope.iter().position(|&s| s == v)
    }

    /// Value at the (packed network) state restricted to this scope.
    fn at(&self, state: u32) -> f64 {
        let idx = self.scope.iter().enumerate().fold(0usize, |acc, (j, &v)| {
            acc | (((state >> v) & 1) as usize) << j
        });
        self.table[idx]
    }

    fn product(&self, other: &Factor) -> Factor {
        let mut scope: Vec<usize> = self.scope.iter().chain(&other.scope).copied().collect();
        scope.sort_unstable();
        scope.dedup();
        let table = (0..1usize << scope.len())
            .map(|idx| {
                let state = scope
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &v)| acc | (((idx >> j) & 1) as u32) << v);
                self.at(state) * other.at(state)
            })
            .collect();
        Factor { scope, table }
    }

    fn sum_out(&self, v: usize) -> Factor {
        let Some(pos) = self.position(v) else {
            return self.clone();
        };
        let mut scope = self.scope.clone();
        scope.remove(pos);
        let low = (1usize << pos) - 1;
        let table = (0..1usize << scope.len())
            .map(|idx| {
                let base = (idx & low) | ((idx & !low) << 1);
                self.table[base] + self.table[base | 1 << pos]
            })
            .collect();
        Factor { scope, table }
    }
}

/// Exact posterior of `query` by variable elimination.
///
/// Hidden variables are summed out in reverse topological order, which is
/// deterministic for a given network.
pub fn eliminate_posterior(
    net: &NormNetwork,
    query: &str,
    evidence: &Assignment,
) -> Result<Distribution, BayesError> {
    let (q, mask, values) = net.resolve_query(query, evidence)?;
    let mut factors: Vec<Factor> = (0..net.len())
        .map(|i| Factor::from_cpt(net, i, mask, values))
        .collect();

    for &v in net.structure().topological_order().iter().rev() {
        if v == q || mask >> v & 1 == 1 {
            continue;
        }
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.position(v).is_some());
        factors = rest;
        if let Some(first) = touching.first() {
            let merged = touching[1..]
                .iter()
                .fold(first.clone(), |acc, f| acc.product(f));
            factors.push(merged.sum_out(v));
        }
    }

    let result = factors.iter().fold(
        Factor {
            scope: vec![q],
            table: vec![1.0, 1.0],
        },
        |acc, f| acc.product(f),
    );
    debug_assert_eq!(result.scope, vec![q]);
    let (mass0, mass1) = (result.table[0], result.table[1]);
    if mass0 + mass1 == 0.0 {
        return Err(net.zero_mass_error(mask, values));
    }
    Ok(Distribution::from_masses(mass0, mass1))
}
