use super::special::student_t_two_sided;
use super::{check_finite, max_abs, TestResult, DEGENERATE_SPREAD};
use crate::StatsError;

/// Paired t-test on `xs[i] - ys[i]`: `t = mean / (sd / √n)`, `df = n - 1`.
pub fn paired_t(xs: &[f64], ys: &[f64]) -> Result<TestResult, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(StatsError::TooFewObservations {
            need: 2,
            got: xs.len(),
        });
    }
    check_finite(xs)?;
    check_finite(ys)?;
    let diffs: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| x - y).collect();
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let sd = (diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    // Constant differences (including all zero) leave t undefined.
    let scale = max_abs(xs).max(max_abs(ys)).max(1.0);
    if sd <= DEGENERATE_SPREAD * scale {
        return Err(StatsError::DegenerateVariance);
    }
    let t = mean / (sd / n.sqrt());
    let df = n - 1.0;
    Ok(TestResult {
        statistic: t,
        df,
        df_denominator: None,
        p_value: student_t_two_sided(t, df),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_shift_is_degenerate() {
        let xs = [0.1, 0.5, 0.35, 0.8];
        let ys: Vec<f64> = xs.iter().map(|x| x + 0.2).collect();
        assert_eq!(paired_t(&xs, &ys), Err(StatsError::DegenerateVariance));
        assert_eq!(paired_t(&xs, &xs), Err(StatsError::DegenerateVariance));
    }

    #[test]
    fn antisymmetric_differences() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [0.5, 2.5, 2.5, 4.5];
        let r = paired_t(&xs, &ys).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn four_pair_fixture() {
        // diffs 1, 2, 4, 5: mean 3, sd = sqrt(10/3), t = 3 / (sd/2)
        let r = paired_t(&[3.0, 5.0, 9.0, 11.0], &[2.0, 3.0, 5.0, 6.0]).unwrap();
        let expected = 3.0 / ((10.0f64 / 3.0).sqrt() / 2.0);
        assert!((r.statistic - expected).abs() < 1e-12);
        assert_eq!(r.df, 3.0);
        assert!(r.p_value > 0.0 && r.p_value < 0.05);
    }

    #[test]
    fn shape_errors() {
        assert_eq!(
            paired_t(&[1.0], &[2.0]),
            Err(StatsError::TooFewObservations { need: 2, got: 1 })
        );
        assert_eq!(
            paired_t(&[1.0, 2.0], &[2.0]),
            Err(StatsError::LengthMismatch(2, 1))
        );
    }
}
