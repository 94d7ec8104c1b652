//! Goodness-of-fit helpers used by the diagnostics and the test suite.

/// One-sample Kolmogorov–Smirnov statistic D_n against Uniform[0,1].
pub fn ks_statistic_uniform(data: &[f64]) -> f64 {
    assert!(!data.is_empty());
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let x = x.clamp(0.0, 1.0);
        sup = sup
            .max((x - i as f64 / n).abs())
            .max(((i + 1) as f64 / n - x).abs());
    }
    sup
}

/// Survival function of the Kolmogorov distribution,
/// P(K > x) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²x²}, truncated once terms vanish.
pub fn kolmogorov_sf(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0f64;
    let mut sign = 1.0f64;
    for k in 1..=200u32 {
        let term = (-2.0 * (k as f64 * x).powi(2)).exp();
        sum += sign * term;
        sign = -sign;
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Asymptotic p-value of the KS uniformity test with Stephens' small-sample
/// correction.
pub fn ks_uniform_pvalue(data: &[f64]) -> f64 {
    let n = data.len() as f64;
    let d = ks_statistic_uniform(data);
    let scaled = d * (n.sqrt() + 0.12 + 0.11 / n.sqrt());
    kolmogorov_sf(scaled)
}
