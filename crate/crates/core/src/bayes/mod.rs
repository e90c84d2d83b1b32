//! Binary Bayesian networks.
//!
//! Every variable takes values in `{0, 1}`, represented as `bool`. A
//! [`NormNetwork`] is immutable once built; all inference routines are pure
//! functions of the network and their arguments.

mod assignment;
mod cpt;
mod dsep;
mod eliminate;
mod enumerate;
mod network;
mod sampling;
mod structure;
mod variable;

pub use assignment::Assignment;
pub use cpt::{ConditionalProbabilityTable, CLAMP_EPSILON};
pub use eliminate::eliminate_posterior;
pub use enumerate::{enumerate_posterior, Distribution};
pub use network::NormNetwork;
pub use sampling::{forward_sample, rejection_posterior, RejectionEstimate, SampleSet};
pub use structure::{Structure, MAX_VARIABLES};
pub use variable::{Agent, Role, Variable};

/// Free-function form of [`NormNetwork::joint_probability`].
pub fn joint_probability(net: &NormNetwork, state: &Assignment) -> Result<f64, crate::BayesError> {
    net.joint_probability(state)
}

/// Free-function form of [`Structure::d_separated`].
pub fn d_separated(
    net: &NormNetwork,
    x: &str,
    y: &str,
    given: &[&str],
) -> Result<bool, crate::BayesError> {
    net.structure().d_separated(x, y, given)
}
