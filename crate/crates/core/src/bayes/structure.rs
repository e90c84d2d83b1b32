use std::collections::HashMap;

use super::variable::{Role, Variable};
use crate::BayesError;

/// Upper bound on network size. Joint states are packed into a `u32` and
/// exact enumeration walks all `2^n` of them.
pub const MAX_VARIABLES: usize = 16;

/// Declared variables plus a validated acyclic parent relation.
#[derive(Debug, Clone, PartialEq)]
pub struct Structure {
    variables: Vec<Variable>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    topo: Vec<usize>,
    index: HashMap<String, usize>,
}

impl Structure {
    /// `parents[i]` lists the parent names of `variables[i]` in declaration
    /// order; that order fixes CPT row indexing.
    pub fn new(variables: Vec<Variable>, parents: Vec<Vec<String>>) -> Result<Self, BayesError> {
        if variables.len() > MAX_VARIABLES {
            return Err(BayesError::TooManyVariables {
                max: MAX_VARIABLES,
                got: variables.len(),
            });
        }
        assert_eq!(
            variables.len(),
            parents.len(),
            "one parent list per variable"
        );

        let mut index = HashMap::with_capacity(variables.len());
        for (i, v) in variables.iter().enumerate() {
            if v.role == Role::Norm && v.agent != super::Agent::Shared {
                return Err(BayesError::NormNotShared(v.name.clone()));
            }
            if index.insert(v.name.clone(), i).is_some() {
                return Err(BayesError::DuplicateVariable(v.name.clone()));
            }
        }

        let mut parent_idx = Vec::with_capacity(variables.len());
        let mut children = vec![Vec::new(); variables.len()];
        for (i, list) in parents.iter().enumerate() {
            let mut resolved = Vec::with_capacity(list.len());
            for p in list {
                let j = *index
                    .get(p)
                    .ok_or_else(|| BayesError::UnknownVariable(p.clone()))?;
                if resolved.contains(&j) {
                    return Err(BayesError::DuplicateParent {
                        child: variables[i].name.clone(),
                        parent: p.clone(),
                    });
                }
                resolved.push(j);
                children[j].push(i);
            }
            parent_idx.push(resolved);
        }

        let topo = topological_order(&parent_idx, &children)
            .map_err(|i| BayesError::Cycle(variables[i].name.clone()))?;

        Ok(Structure {
            variables,
            parents: parent_idx,
            children,
            topo,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable(&self, i: usize) -> &Variable {
        &self.variables[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, BayesError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| BayesError::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    /// Parent names of `name`, in declaration order.
    pub fn parent_names(&self, name: &str) -> Result<Vec<&str>, BayesError> {
        let i = self.index_of(name)?;
        Ok(self.parents[i]
            .iter()
            .map(|&p| self.variables[p].name.as_str())
            .collect())
    }

    /// Deterministic topological order (lowest declaration index first among
    /// ready variables).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// `(parent, child)` pairs, grouped by child in declaration order.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for (c, ps) in self.parents.iter().enumerate() {
            for &p in ps {
                out.push((
                    self.variables[p].name.as_str(),
                    self.variables[c].name.as_str(),
                ));
            }
        }
        out
    }

    pub fn has_edge(&self, parent: &str, child: &str) -> bool {
        match (self.index.get(parent), self.index.get(child)) {
            (Some(&p), Some(&c)) => self.parents[c].contains(&p),
            _ => false,
        }
    }
}

/// Kahn's algorithm; on failure returns a variable that lies on a cycle.
fn topological_order(parents: &[Vec<usize>], children: &[Vec<usize>]) -> Result<Vec<usize>, usize> {
    let n = parents.len();
    let mut indegree: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut ready: std::collections::BTreeSet<usize> =
        (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&i) = ready.iter().next() {
        ready.remove(&i);
        order.push(i);
        for &c in &children[i] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                ready.insert(c);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&i| indegree[i] > 0).unwrap_or(0))
    }
}
