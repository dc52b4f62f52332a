/// Arithmetic mean and standard error of the mean (sample standard deviation
/// over `sqrt(n)`); the standard error of a single value is 0.
pub fn mean_and_stderr(values: &[f64]) -> Option<(f64, f64)> {
    let n = values.len();
    if n == 0 {
        return None;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return Some((mean, 0.0));
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Some((mean, (var / n as f64).sqrt()))
}

/// Least-squares slope of `y` against `x`.
pub fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_stderr_examples() {
        assert_eq!(mean_and_stderr(&[]), None);
        assert_eq!(mean_and_stderr(&[42.0]), Some((42.0, 0.0)));
        let (m, s) = mean_and_stderr(&[100.0, 300.0]).unwrap();
        assert_eq!(m, 200.0);
        assert!((s - 100.0).abs() < 1e-12);
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<_> = [1.0f64, 2.0, 4.0, 8.0]
            .iter()
            .map(|x: &f64| (x.ln(), (3.0 * x.powi(2)).ln()))
            .collect();
        assert!((slope(&pts).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(slope(&[(1.0, 1.0)]), None);
    }
}
