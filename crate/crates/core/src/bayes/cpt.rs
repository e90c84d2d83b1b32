use crate::BayesError;

/// Lower/upper clamp applied to every stored probability, so that no
/// elicited 0 or 1 makes evidence impossible.
pub const CLAMP_EPSILON: f64 = 1e-6;

/// `P(child = 1 | parents)` for every parent assignment.
///
/// Rows are indexed by the parent values read as a binary number with the
/// first declared parent as the most significant bit: for parents `[D1, N]`
/// row 2 (`0b10`) holds `P(child = 1 | D1 = 1, N = 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalProbabilityTable {
    child: String,
    parents: Vec<String>,
    rows: Vec<f64>,
    epsilon: f64,
}

impl ConditionalProbabilityTable {
    /// Builds a table, clamping every entry into `[CLAMP_EPSILON, 1 - CLAMP_EPSILON]`.
    pub fn new(
        child: impl Into<String>,
        parents: Vec<String>,
        rows: Vec<f64>,
    ) -> Result<Self, BayesError> {
        Self::with_epsilon(child, parents, rows, CLAMP_EPSILON)
    }

    /// Builds a table without clamping. Deterministic rows (exact 0 or 1)
    /// survive, so evidence can become impossible.
    pub fn unclamped(
        child: impl Into<String>,
        parents: Vec<String>,
        rows: Vec<f64>,
    ) -> Result<Self, BayesError> {
        Self::with_epsilon(child, parents, rows, 0.0)
    }

    pub fn with_epsilon(
        child: impl Into<String>,
        parents: Vec<String>,
        rows: Vec<f64>,
        epsilon: f64,
    ) -> Result<Self, BayesError> {
        let child = child.into();
        if parents.len() >= super::MAX_VARIABLES {
            return Err(BayesError::TooManyVariables {
                max: super::MAX_VARIABLES,
                got: parents.len() + 1,
            });
        }
        let expected = 1usize << parents.len();
        if rows.len() != expected {
            return Err(BayesError::RowCount {
                child,
                expected,
                got: rows.len(),
            });
        }
        if !(0.0..0.5).contains(&epsilon) {
            return Err(BayesError::InvalidProbability {
                child,
                row: 0,
                value: epsilon,
            });
        }
        let mut clamped = Vec::with_capacity(rows.len());
        for (row, p) in rows.into_iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return Err(BayesError::InvalidProbability {
                    child,
                    row,
                    value: p,
                });
            }
            clamped.push(p.clamp(epsilon, 1.0 - epsilon));
        }
        Ok(ConditionalProbabilityTable {
            child,
            parents,
            rows: clamped,
            epsilon,
        })
    }

    pub fn child(&self) -> &str {
        &self.child
    }

    pub fn parents(&self) -> &[String] {
        &self.parents
    }

    pub fn rows(&self) -> &[f64] {
        &self.rows
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Row index for parent values given in declaration order.
    pub fn row_index(parent_values: &[bool]) -> usize {
        parent_values
            .iter()
            .fold(0usize, |acc, &bit| (acc << 1) | usize::from(bit))
    }

    /// Parent values (declaration order) for a row index.
    pub fn row_bits(&self, row: usize) -> Vec<bool> {
        let k = self.parents.len();
        (0..k).map(|j| (row >> (k - 1 - j)) & 1 == 1).collect()
    }

    /// `P(child = 1 | parents = parent_values)`.
    pub fn p_one(&self, parent_values: &[bool]) -> f64 {
        self.rows[Self::row_index(parent_values)]
    }
}
