//! Textbook formulas and numerical integration, written without reference
//! to the library's implementations.

/// Raw-moment formula: (nΣxy − ΣxΣy) / sqrt((nΣx² − (Σx)²)(nΣy² − (Σy)²)).
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    (n * sxy - sx * sy) / ((n * sxx - sx * sx) * (n * syy - sy * sy)).sqrt()
}

/// (F, df_between, df_within) from brute-force sums of squares.
pub fn anova(groups: &[Vec<f64>]) -> (f64, f64, f64) {
    let all: Vec<f64> = groups.iter().flatten().copied().collect();
    let grand = all.iter().sum::<f64>() / all.len() as f64;
    let mut ssb = 0.0;
    let mut ssw = 0.0;
    for g in groups {
        let m = g.iter().sum::<f64>() / g.len() as f64;
        ssb += g.len() as f64 * (m - grand) * (m - grand);
        for x in g {
            ssw += (x - m) * (x - m);
        }
    }
    let dfb = (groups.len() - 1) as f64;
    let dfw = (all.len() - groups.len()) as f64;
    ((ssb / dfb) / (ssw / dfw), dfb, dfw)
}

/// (t, df) for the paired differences.
pub fn paired_t(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let d: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| x - y).collect();
    let n = d.len() as f64;
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean / (var / n).sqrt(), n - 1.0)
}

/// ∫_a^∞ f by the exp-sinh rule: x = a + exp(π/2·sinh t).
fn integrate_to_infinity(f: impl Fn(f64) -> f64, a: f64) -> f64 {
    let h: f64 = 1.0 / 64.0;
    let mut total = 0.0;
    let mut k: f64 = -6.0 / h;
    while k <= 6.0 / h {
        let t = k * h;
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let e = u.exp();
        if e.is_finite() && e > 0.0 {
            let w = e * std::f64::consts::FRAC_PI_2 * t.cosh();
            let v = f(a + e) * w;
            if v.is_finite() {
                total += v;
            }
        }
        k += 1.0;
    }
    total * h
}

/// P(F > f) for F ~ F(d1, d2), as a ratio of integrals of the unnormalized
/// density so that no gamma function is involved.
pub fn f_survival(f: f64, d1: f64, d2: f64) -> f64 {
    let density = |x: f64| {
        (0.5 * d1 - 1.0)
            .mul_add(x.ln(), -0.5 * (d1 + d2) * (d1 * x / d2).ln_1p())
            .exp()
    };
    integrate_to_infinity(density, f) / integrate_to_infinity(density, 0.0)
}

/// Two-sided P(|T| > |t|) for T ~ t(df).
pub fn t_two_sided(t: f64, df: f64) -> f64 {
    let density = |x: f64| (-0.5 * (df + 1.0) * (x * x / df).ln_1p()).exp();
    integrate_to_infinity(density, t.abs()) / integrate_to_infinity(density, 0.0)
}
