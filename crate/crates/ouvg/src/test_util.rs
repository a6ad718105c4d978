//! Shared helpers for the unit tests.

/// Sample mean and its standard error.
pub fn sample_mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Asserts that the first four raw moments of two samples agree within
/// `z_max` combined standard errors.
pub fn compare_raw_moments(a: &[f64], b: &[f64], z_max: f64) {
    for r in 1..=4u32 {
        let pa: Vec<f64> = a.iter().map(|x| x.powi(r as i32)).collect();
        let pb: Vec<f64> = b.iter().map(|x| x.powi(r as i32)).collect();
        let (ma, se_a) = sample_mean_se(&pa);
        let (mb, se_b) = sample_mean_se(&pb);
        let z = (ma - mb) / (se_a * se_a + se_b * se_b).sqrt();
        assert!(
            z.abs() < z_max,
            "raw moment {r} differs: {ma} vs {mb} (z = {z})"
        );
    }
}
