//! Order-fixed reductions. Results depend only on the order of the input
//! slice, never on how the values were produced.

const PAIRWISE_BLOCK: usize = 8;

pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        values.iter().sum()
    } else {
        let (lo, hi) = values.split_at(values.len() / 2);
        pairwise_sum(lo) + pairwise_sum(hi)
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    pairwise_sum(values) / values.len() as f64
}

/// Standard error of the mean, using the unbiased sample variance. Zero for a
/// single sample.
pub(crate) fn standard_error(values: &[f64], mean: f64) -> f64 {
    let m = values.len();
    if m < 2 {
        return 0.0;
    }
    let squares: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let variance = pairwise_sum(&squares) / (m - 1) as f64;
    (variance / m as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_sum_is_exact_on_integers() {
        let v: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&v), 500500.0);
    }

    #[test]
    fn standard_error_of_known_sample() {
        let v = [1.0, 2.0, 3.0, 4.0];
        let m = mean(&v);
        assert_eq!(m, 2.5);
        // sample variance 5/3, stderr sqrt(5/12)
        assert!((standard_error(&v, m) - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert_eq!(standard_error(&[0.3], 0.3), 0.0);
    }
}
