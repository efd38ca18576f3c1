//! Two-sample and goodness-of-fit tests.

use crate::error::{invalid, Result};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Asymptotic Kolmogorov tail `P(K > lambda)`.
fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let j = j as f64;
        let term = 2.0 * (-1f64).powf(j - 1.0) * (-2.0 * j * j * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// Two-sided two-sample Kolmogorov-Smirnov test: the largest gap between
/// the empirical distribution functions, and its asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    if a.len() < 20 || b.len() < 20 {
        return invalid("both samples need at least 20 values");
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return invalid("samples must not contain NaN");
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let x = a[i].min(b[j]);
        while i < n && a[i] <= x {
            i += 1;
        }
        while j < m && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n * m) as f64 / (n + m) as f64;
    let p = kolmogorov_tail((ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d);
    Ok((d, p))
}

/// Result of a chi-square test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

fn chi_square_tail(statistic: f64, dof: usize) -> Result<f64> {
    if dof == 0 {
        return invalid("a chi-square test needs at least two categories");
    }
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    Ok(1.0 - dist.cdf(statistic))
}

/// Goodness of fit of `observed` counts to category probabilities
/// `expected`. Categories with expected count below 5 are pooled.
pub fn chi_square_gof(observed: &[u64], expected: &[f64]) -> Result<ChiSquare> {
    if observed.len() != expected.len() {
        return invalid("observed and expected differ in length");
    }
    let total_p: f64 = expected.iter().sum();
    if expected.iter().any(|&p| p.is_nan() || p < 0.0) || (total_p - 1.0).abs() > 1e-9 {
        return invalid("expected probabilities must be nonnegative and sum to 1");
    }
    let n: u64 = observed.iter().sum();
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let mut pooled = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(expected) {
        let e = p * n as f64;
        if e < 5.0 {
            pooled.0 += o as f64;
            pooled.1 += e;
        } else {
            cells.push((o as f64, e));
        }
    }
    if pooled.1 > 0.0 {
        cells.push(pooled);
    } else if pooled.0 > 0.0 {
        return invalid("counts observed in a category of probability zero");
    }
    let statistic: f64 = cells.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let dof = cells.len().saturating_sub(1);
    Ok(ChiSquare { statistic, dof, p_value: chi_square_tail(statistic, dof)? })
}

/// Homogeneity of two count vectors over the same categories. Categories
/// whose pooled expected count is below 5 in either sample are merged.
pub fn chi_square_homogeneity(a: &[u64], b: &[u64]) -> Result<ChiSquare> {
    if a.len() != b.len() {
        return invalid("count vectors differ in length");
    }
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    if na == 0.0 || nb == 0.0 {
        return invalid("both samples must be nonempty");
    }
    let total = na + nb;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let mut rare = (0.0, 0.0);
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        if col * na.min(nb) / total < 5.0 {
            rare.0 += x as f64;
            rare.1 += y as f64;
        } else {
            cells.push((x as f64, y as f64));
        }
    }
    if rare.0 + rare.1 > 0.0 {
        cells.push(rare);
    }
    let mut statistic = 0.0;
    for &(x, y) in &cells {
        let col = x + y;
        let (ea, eb) = (col * na / total, col * nb / total);
        statistic += (x - ea).powi(2) / ea + (y - eb).powi(2) / eb;
    }
    let dof = cells.len().saturating_sub(1);
    Ok(ChiSquare { statistic, dof, p_value: chi_square_tail(statistic, dof)? })
}

#[cfg(test)]
mod unit {
    use super::*;
    use rand::Rng;

    fn uniform(n: usize, shift: f64, rng: &mut impl Rng) -> Vec<f64> {
        (0..n).map(|_| rng.random::<f64>() + shift).collect()
    }

    #[test]
    fn identical_samples() {
        let a: Vec<f64> = (0..50).map(|i| (i as f64).sin()).collect();
        assert_eq!(ks_two_sample(&a, &a).unwrap(), (0.0, 1.0));
        assert!(ks_two_sample(&a[..10], &a).is_err());
    }

    #[test]
    fn shifted_uniforms_are_told_apart() {
        let mut rng = crate::rng::rng_from_seed(1);
        let a = uniform(1000, 0.0, &mut rng);
        let b = uniform(1000, 0.5, &mut rng);
        let (d, p) = ks_two_sample(&a, &b).unwrap();
        assert!(d > 0.4 && p < 1e-6, "{d} {p}");
    }

    #[test]
    fn calibration_under_the_null() {
        let mut rng = crate::rng::rng_from_seed(2);
        let passes = (0..100)
            .filter(|_| {
                let a = uniform(1000, 0.0, &mut rng);
                let b = uniform(1000, 0.0, &mut rng);
                ks_two_sample(&a, &b).unwrap().1 > 0.001
            })
            .count();
        assert!(passes >= 99);
    }

    #[test]
    fn ks_statistic_against_brute_force() {
        let mut rng = crate::rng::rng_from_seed(3);
        let a: Vec<f64> = (0..40).map(|_| (rng.random::<f64>() * 10.0).floor()).collect();
        let b: Vec<f64> = (0..60).map(|_| (rng.random::<f64>() * 12.0).floor()).collect();
        let ecdf = |s: &[f64], x: f64| s.iter().filter(|&&v| v <= x).count() as f64 / s.len() as f64;
        let brute = a.iter().chain(&b).map(|&x| (ecdf(&a, x) - ecdf(&b, x)).abs()).fold(0.0, f64::max);
        assert!((ks_two_sample(&a, &b).unwrap().0 - brute).abs() < 1e-15);
    }

    #[test]
    fn chi_square_reference_values() {
        let c = chi_square_gof(&[25, 25, 25, 25], &[0.25; 4]).unwrap();
        assert_eq!((c.statistic, c.dof, c.p_value), (0.0, 3, 1.0));
        let c = chi_square_gof(&[30, 20], &[0.5, 0.5]).unwrap();
        assert!((c.statistic - 2.0).abs() < 1e-12);
        assert!((c.p_value - 0.157_299_207).abs() < 1e-6);
        let h = chi_square_homogeneity(&[10, 20, 30], &[10, 20, 30]).unwrap();
        assert_eq!(h.statistic, 0.0);
        let h = chi_square_homogeneity(&[100, 0], &[0, 100]).unwrap();
        assert!(h.p_value < 1e-10);
        assert!(chi_square_gof(&[1, 2], &[0.3, 0.3]).is_err());
    }
}
