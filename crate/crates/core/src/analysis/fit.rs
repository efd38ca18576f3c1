//! Power-law exponent fits on log-log data.

use super::dimension::least_squares;
use crate::error::{invalid, Result};

/// Which exponent a fit estimates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExponentName {
    Eta1,
    Eta2,
    Eta3,
    LerwGrowth,
    Custom(String),
}

impl ExponentName {
    pub fn as_str(&self) -> &str {
        match self {
            ExponentName::Eta1 => "eta1",
            ExponentName::Eta2 => "eta2",
            ExponentName::Eta3 => "eta3",
            ExponentName::LerwGrowth => "lerw_growth",
            ExponentName::Custom(s) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentEstimate {
    pub value: f64,
    pub stderr: f64,
    /// Reduced chi-square of the weighted fit, or the residual variance of
    /// the unweighted one.
    pub residual: f64,
    pub name: ExponentName,
}

/// Fits `y ~ C r^a` by least squares on `(log r, log y)`. Points are weighted
/// by `(y / stderr)^2`, the inverse variance of `log y`, when every stderr is
/// positive; otherwise the fit is unweighted and the slope error comes from
/// the residuals.
pub fn power_law_fit(samples: &[(f64, f64, f64)], name: ExponentName) -> Result<ExponentEstimate> {
    if samples.len() < 3 {
        return invalid(format!("a power-law fit needs at least 3 scales, got {}", samples.len()));
    }
    for &(r, y, s) in samples {
        if !(r > 0.0 && r.is_finite()) {
            return invalid(format!("scales must be positive, got {r}"));
        }
        if !(y > 0.0 && y.is_finite()) {
            return invalid(format!("values must be positive, got {y}"));
        }
        if s.is_nan() || s < 0.0 {
            return invalid(format!("standard errors must be nonnegative, got {s}"));
        }
    }
    let x: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let y: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    if samples.iter().any(|s| s.2 == 0.0) {
        let (value, stderr, intercept) = least_squares(&x, &y);
        let n = x.len() as f64;
        let rss: f64 = x.iter().zip(&y).map(|(a, b)| (b - intercept - value * a).powi(2)).sum();
        return Ok(ExponentEstimate { value, stderr, residual: rss / (n - 2.0), name });
    }
    let w: Vec<f64> = samples.iter().map(|s| (s.1 / s.2).powi(2)).collect();
    let sw: f64 = w.iter().sum();
    let mx = w.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() / sw;
    let my = w.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / sw;
    let sxx: f64 = w.iter().zip(&x).map(|(a, b)| a * (b - mx).powi(2)).sum();
    let sxy: f64 = w.iter().zip(x.iter().zip(&y)).map(|(a, (b, c))| a * (b - mx) * (c - my)).sum();
    let value = sxy / sxx;
    let intercept = my - value * mx;
    let chi2: f64 = w.iter().zip(x.iter().zip(&y)).map(|(a, (b, c))| a * (c - intercept - value * b).powi(2)).sum();
    Ok(ExponentEstimate { value, stderr: (1.0 / sxx).sqrt(), residual: chi2 / (x.len() as f64 - 2.0), name })
}
