use super::kind::ModelKind;
use super::scenario::ScenarioSpec;
use crate::bayes::Structure;
use crate::query::NormVar;

/// Parent lists (canonical order) for each variable present in `kind`.
pub(crate) fn parent_table(kind: ModelKind) -> Vec<(NormVar, Vec<NormVar>)> {
    use NormVar::*;
    match kind {
        ModelKind::Fc => vec![
            (N, vec![]),
            (D1, vec![N]),
            (D2, vec![N]),
            (A1, vec![D1, N]),
            (A2, vec![D2, N]),
        ],
        ModelKind::Je => vec![
            (N, vec![]),
            (D1, vec![]),
            (D2, vec![]),
            (A1, vec![D1, N]),
            (A2, vec![D2, N]),
        ],
        ModelKind::Dm => vec![
            (N, vec![]),
            (D1, vec![N]),
            (D2, vec![N]),
            (A1, vec![D1]),
            (A2, vec![D2]),
        ],
        ModelKind::DOnly => vec![(D1, vec![]), (D2, vec![]), (A1, vec![D1]), (A2, vec![D2])],
        ModelKind::NOnly => vec![(N, vec![]), (A1, vec![N]), (A2, vec![N])],
    }
}

/// The unparametrized graph of `kind`.
///
/// The structures do not depend on norm polarity; the scenario only changes
/// how action values are read. `A1` is never a parent of `A2`: the judge's
/// table is read as enforcement propensity after noncompliance.
pub fn build_structure(kind: ModelKind, _scenario: &ScenarioSpec) -> Structure {
    let table = parent_table(kind);
    let variables = table.iter().map(|(v, _)| v.variable()).collect();
    let parents = table
        .iter()
        .map(|(_, ps)| ps.iter().map(|p| p.name().to_string()).collect())
        .collect();
    Structure::new(variables, parents).expect("built-in structures are valid DAGs")
}
