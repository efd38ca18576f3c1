//! Point estimates with standard errors and confidence intervals.

use crate::error::{invalid, Result};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// A Monte Carlo estimate with its standard error and a 95% interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub trials: usize,
}

impl Estimate {
    /// Proportion `successes / trials` with binomial standard error and the
    /// Wilson score interval.
    pub fn proportion(successes: usize, trials: usize) -> Result<Self> {
        if trials == 0 {
            return invalid("an estimate needs at least one trial");
        }
        if successes > trials {
            return invalid("more successes than trials");
        }
        let n = trials as f64;
        let p = successes as f64 / n;
        let (ci_lo, ci_hi) = wilson_interval(successes, trials, Z95);
        Ok(Estimate { value: p, stderr: (p * (1.0 - p) / n).sqrt(), ci_lo, ci_hi, trials })
    }

    /// Sample mean with the standard error of the mean and a normal
    /// interval.
    pub fn mean(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return invalid("an estimate needs at least one sample");
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = if samples.len() > 1 {
            samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        let stderr = (var / n).sqrt();
        Ok(Estimate {
            value: mean,
            stderr,
            ci_lo: mean - Z95 * stderr,
            ci_hi: mean + Z95 * stderr,
            trials: samples.len(),
        })
    }
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn proportion_and_wilson() {
        let e = Estimate::proportion(50, 100).unwrap();
        assert_eq!(e.value, 0.5);
        assert_abs_diff_eq!(e.stderr, 0.05, epsilon = 1e-15);
        // Reference values for 50/100 at 95%.
        assert_abs_diff_eq!(e.ci_lo, 0.403_831, epsilon = 1e-5);
        assert_abs_diff_eq!(e.ci_hi, 0.596_169, epsilon = 1e-5);
        let zero = Estimate::proportion(0, 10).unwrap();
        assert_eq!(zero.ci_lo, 0.0);
        assert!(zero.ci_hi > 0.2);
        assert!(Estimate::proportion(0, 0).is_err());
        assert!(Estimate::proportion(3, 2).is_err());
    }

    #[test]
    fn mean_of_samples() {
        let e = Estimate::mean(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(e.value, 2.5);
        assert_abs_diff_eq!(e.stderr, (5.0f64 / 3.0 / 4.0).sqrt(), epsilon = 1e-15);
        assert!(Estimate::mean(&[]).is_err());
    }
}
