use super::special::f_survival;
use super::{check_finite, max_abs, TestResult, DEGENERATE_SPREAD};
use crate::StatsError;

/// One-way ANOVA across `groups`.
///
/// Returns `F = MS_between / MS_within` with `(k - 1, N - k)` degrees of
/// freedom and the upper-tail F probability.
pub fn one_way_anova<G: AsRef<[f64]>>(groups: &[G]) -> Result<TestResult, StatsError> {
    let k = groups.len();
    if k < 2 {
        return Err(StatsError::TooFewGroups(k));
    }
    let mut scale = 0.0f64;
    let mut total_n = 0usize;
    let mut total_sum = 0.0;
    for g in groups {
        let g = g.as_ref();
        if g.len() < 2 {
            return Err(StatsError::TooFewObservations {
                need: 2,
                got: g.len(),
            });
        }
        check_finite(g)?;
        scale = scale.max(max_abs(g));
        total_n += g.len();
        total_sum += g.iter().sum::<f64>();
    }
    let grand_mean = total_sum / total_n as f64;

    let mut ss_between = 0.0;
    let mut ss_within = 0.0;
    for g in groups {
        let g = g.as_ref();
        let mean = g.iter().sum::<f64>() / g.len() as f64;
        ss_between += g.len() as f64 * (mean - grand_mean).powi(2);
        ss_within += g.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
    }
    let df_between = (k - 1) as f64;
    let df_within = (total_n - k) as f64;
    let ms_within = ss_within / df_within;
    if ms_within.sqrt() <= DEGENERATE_SPREAD * scale.max(1.0) {
        return Err(StatsError::DegenerateVariance);
    }
    let f = (ss_between / df_between) / ms_within;
    Ok(TestResult {
        statistic: f,
        df: df_between,
        df_denominator: Some(df_within),
        p_value: f_survival(f, df_between, df_within),
    })
}
