//! Composite trapezoid rule on uniform grids.

/// Trapezoid integral of `samples` taken on a uniform grid of spacing `h`.
pub fn trapezoid(samples: &[f64], h: f64) -> f64 {
    match samples {
        [] | [_] => 0.0,
        [first, inner @ .., last] => h * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

/// Trapezoid-weighted mean over the grid, i.e. `trapezoid / (b − a)`.
pub fn trapezoid_mean(samples: &[f64]) -> f64 {
    if samples.len() < 2 {
        return samples.first().copied().unwrap_or(0.0);
    }
    trapezoid(samples, 1.0) / (samples.len() - 1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_linear_integrands() {
        let n = 11;
        let h = 2.0 / (n - 1) as f64;
        let samples: Vec<f64> = (0..n).map(|k| 3.0 * (k as f64 * h) - 1.0).collect();
        // ∫_0^2 (3x − 1) dx = 4
        assert!((trapezoid(&samples, h) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn mean_of_constant() {
        assert_eq!(trapezoid_mean(&[0.25; 9]), 0.25);
        assert_eq!(trapezoid_mean(&[]), 0.0);
    }
}
