//! SLE samplers, exact SLE quantities and event extractors.

mod crossing;
mod restriction;

pub use crossing::{chordal_crossing, real_axis_landings, sle6_crossing, Crossing, CrossingOutcome, Landing, RealHull, Side};
pub use restriction::{avoidance_trial, mc_avoidance_probability, mc_avoidance_probability_with, AvoidanceConfig, AvoidanceEstimate, AvoidanceOutcome};

use crate::error::{invalid, Result};
use crate::loewner::{chordal_trace, hull_map, radial_trace, DrivingFunction, Hull, Trace, C64};
use crate::rng::rng_from_seed;
use rand::Rng;
use rand_distr::StandardNormal;

/// Exponent in the avoidance probability `Phi'(0)^(5/8)` of SLE(8/3).
pub const RESTRICTION_EXPONENT: f64 = 5.0 / 8.0;

/// Parameters of one SLE sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SleParams {
    pub kappa: f64,
    /// Capacity time to run for.
    pub duration: f64,
    pub dt: f64,
    pub seed: u64,
}

impl SleParams {
    pub fn new(kappa: f64, duration: f64, dt: f64, seed: u64) -> Result<Self> {
        let p = SleParams { kappa, duration, dt, seed };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa >= 0.0 && self.kappa.is_finite()) {
            return invalid(format!("kappa must be nonnegative, got {}", self.kappa));
        }
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return invalid(format!("duration must be positive, got {}", self.duration));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return invalid(format!("dt must be positive, got {}", self.dt));
        }
        Ok(())
    }

    /// `duration / dt` rounded half up, at least one.
    pub fn steps(&self) -> usize {
        ((self.duration / self.dt + 0.5).floor() as usize).max(1)
    }
}

/// Brownian driving `sqrt(kappa) W` on the time grid: `U_0 = 0` and
/// independent `N(0, kappa dt)` increments drawn from the seed.
pub fn sample_driving(params: &SleParams) -> Result<DrivingFunction> {
    params.validate()?;
    let n = params.steps();
    let sigma = (params.kappa * params.dt).sqrt();
    let mut rng = rng_from_seed(params.seed);
    let mut values = Vec::with_capacity(n + 1);
    let mut u = 0.0;
    values.push(u);
    for _ in 0..n {
        let xi: f64 = rng.sample(StandardNormal);
        u += sigma * xi;
        values.push(u);
    }
    DrivingFunction::new(params.dt, values, params.kappa)
}

/// Chordal SLE trace from 0, every step included (cost `O(n^2)`).
pub fn sample_chordal_trace(params: &SleParams) -> Result<Trace> {
    sample_chordal_trace_strided(params, 1)
}

/// Chordal SLE trace keeping every `stride`-th point.
pub fn sample_chordal_trace_strided(params: &SleParams, stride: usize) -> Result<Trace> {
    chordal_trace(&sample_driving(params)?, stride)
}

/// Radial SLE trace from 1 toward the origin.
pub fn sample_radial_trace(params: &SleParams) -> Result<Trace> {
    sample_radial_trace_strided(params, 1)
}

pub fn sample_radial_trace_strided(params: &SleParams, stride: usize) -> Result<Trace> {
    radial_trace(&sample_driving(params)?, stride)
}

/// Hausdorff dimension of the SLE trace, `min(1 + kappa / 8, 2)`.
pub fn sle_dimension(kappa: f64) -> Result<f64> {
    if kappa.is_nan() || kappa < 0.0 {
        return invalid(format!("kappa must be nonnegative, got {kappa}"));
    }
    Ok((1.0 + kappa / 8.0).min(2.0))
}

/// Probability that chordal SLE(8/3) avoids the hull `A`,
/// `Phi_A'(0)^(5/8)`.
pub fn restriction_probability(hull: &Hull) -> Result<f64> {
    Ok(hull_map(hull)?.derivative_at_zero.powf(RESTRICTION_EXPONENT))
}

/// Smallest distance between two trace segments that share no endpoint.
/// `INFINITY` for traces with fewer than three segments.
pub fn min_self_distance(trace: &Trace) -> f64 {
    let p = &trace.points;
    if p.len() < 4 {
        return f64::INFINITY;
    }
    let n = p.len() - 1;
    let boxes: Vec<[f64; 4]> = (0..n)
        .map(|i| [p[i].re.min(p[i + 1].re), p[i].re.max(p[i + 1].re), p[i].im.min(p[i + 1].im), p[i].im.max(p[i + 1].im)])
        .collect();
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in i + 2..n {
            let (a, b) = (&boxes[i], &boxes[j]);
            let gap = (a[0] - b[1]).max(b[0] - a[1]).max(0.0).hypot((a[2] - b[3]).max(b[2] - a[3]).max(0.0));
            if gap >= best {
                continue;
            }
            best = best.min(segment_distance(p[i], p[i + 1], p[j], p[j + 1]));
        }
    }
    best
}

/// Euclidean distance between the segments `[a, b]` and `[c, d]`.
pub fn segment_distance(a: C64, b: C64, c: C64, d: C64) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

pub fn point_segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    let t = if len2 == 0.0 { 0.0 } else { (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0) };
    (a + d * t - p).norm()
}

fn cross(u: C64, v: C64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Closed-segment intersection test.
pub fn segments_intersect(a: C64, b: C64, c: C64, d: C64) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |p: C64, q: C64, r: C64, o: f64| {
        o == 0.0 && r.re >= p.re.min(q.re) && r.re <= p.re.max(q.re) && r.im >= p.im.min(q.im) && r.im <= p.im.max(q.im)
    };
    on(a, b, c, d1) || on(a, b, d, d2) || on(c, d, a, d3) || on(c, d, b, d4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn steps_round_half_up() {
        assert_eq!(SleParams::new(2.0, 1.0, 1e-3, 0).unwrap().steps(), 1000);
        assert_eq!(SleParams::new(2.0, 0.25, 0.1, 0).unwrap().steps(), 3);
        assert_eq!(SleParams::new(2.0, 1e-6, 0.1, 0).unwrap().steps(), 1);
        assert!(SleParams::new(-1.0, 1.0, 0.1, 0).is_err());
        assert!(SleParams::new(1.0, 0.0, 0.1, 0).is_err());
    }

    #[test]
    fn driving_is_deterministic_and_zero_for_kappa_zero() {
        let p = SleParams::new(6.0, 1.0, 1e-2, 17).unwrap();
        assert_eq!(sample_driving(&p).unwrap(), sample_driving(&p).unwrap());
        let q = SleParams { seed: 18, ..p };
        assert_ne!(sample_driving(&p).unwrap(), sample_driving(&q).unwrap());
        let z = sample_driving(&SleParams { kappa: 0.0, ..p }).unwrap();
        assert!(z.values().iter().all(|&v| v == 0.0));
        assert_eq!(sample_driving(&p).unwrap().values()[0], 0.0);
    }

    #[test]
    fn dimension_formula() {
        assert_abs_diff_eq!(sle_dimension(8.0 / 3.0).unwrap(), 4.0 / 3.0, epsilon = 1e-15);
        assert_eq!(sle_dimension(6.0).unwrap(), 1.75);
        assert_eq!(sle_dimension(16.0).unwrap(), 2.0);
        assert!(sle_dimension(-0.1).is_err());
        let mut last = 0.0;
        for i in 0..100 {
            let d = sle_dimension(i as f64 * 0.2).unwrap();
            assert!(d >= last && d <= 2.0);
            last = d;
        }
    }

    #[test]
    fn restriction_closed_forms() {
        let p = restriction_probability(&Hull::slit(1.0, 1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(p, 2f64.powf(-5.0 / 16.0), epsilon = 1e-12);
        assert_abs_diff_eq!(p, 0.805245, epsilon = 1e-6);
        let p = restriction_probability(&Hull::slit(2.0, 1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(p, (2.0 / 5f64.sqrt()).powf(0.625), epsilon = 1e-12);
        assert_abs_diff_eq!(p, 0.932643, epsilon = 1e-6);
        let p = restriction_probability(&Hull::slit(1.0, 1e-9).unwrap()).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-12);
        let mut last = 1.0;
        for h in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let p = restriction_probability(&Hull::slit(1.0, h).unwrap()).unwrap();
            assert!(p > 0.0 && p < last);
            last = p;
        }
    }

    #[test]
    fn kappa_zero_trace_is_the_vertical_segment() {
        let t = sample_chordal_trace(&SleParams::new(0.0, 1.0, 1e-3, 1).unwrap()).unwrap();
        assert_eq!(t.points[0], C64::new(0.0, 0.0));
        let tip = *t.points.last().unwrap();
        assert_abs_diff_eq!(tip.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(tip.im, 2.0, epsilon = 1e-9);
        assert!(t.points.iter().all(|p| p.re.abs() < 1e-12));
    }

    #[test]
    fn radial_kappa_zero_runs_along_the_positive_axis() {
        let t = sample_radial_trace(&SleParams::new(0.0, 1.0, 1e-2, 1).unwrap()).unwrap();
        assert_eq!(t.points[0], C64::new(1.0, 0.0));
        let mut last = 1.0;
        for p in &t.points[1..] {
            assert!(p.im.abs() < 1e-9 && p.re < last && p.re > 0.0);
            last = p.re;
        }
    }

    #[test]
    fn segment_geometry() {
        let c = |x: f64, y: f64| C64::new(x, y);
        assert!(segments_intersect(c(0.0, 0.0), c(1.0, 1.0), c(0.0, 1.0), c(1.0, 0.0)));
        assert!(segments_intersect(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 1.0)));
        assert!(!segments_intersect(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)));
        assert_abs_diff_eq!(segment_distance(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)), 1.0);
        assert_abs_diff_eq!(point_segment_distance(c(2.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)), 2f64.sqrt());
    }
}
