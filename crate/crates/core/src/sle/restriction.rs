//! Monte Carlo avoidance of a hull by chordal SLE.
//!
//! The hull `A` is carried along in the mapped plane as a polyline of image
//! points. A trial is a hit as soon as a slit touches that polyline, an
//! image point is swallowed, or the driving passes the image of the base of
//! `A` (the curve has gone around it). Polyline segments close to the
//! driving are refined by pulling a midpoint of `A` through the stored
//! chain. A trial escapes once the driving is far from the image of `A`
//! relative to its size.

use super::crossing::flow_real;
use super::{point_segment_distance, segments_intersect};
use crate::analysis::Estimate;
use crate::error::{invalid, Result};
use crate::loewner::{ConformalChain, Evolution, Hull, Orientation, C64, SWALLOW_EPS};
use crate::rng::{derive_trial_seed, rng_from_seed};
use rand::Rng;
use rand_distr::StandardNormal;

/// Numerical settings for avoidance trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AvoidanceConfig {
    pub kappa: f64,
    /// Time step at small times.
    pub dt: f64,
    /// Relative step at late times: `dt_k = max(dt, growth * t_k)`.
    pub growth: f64,
    /// Capacity time after which an unresolved trial is undecided.
    pub horizon: f64,
    /// Escape once `dist(U, image of A) > escape_ratio * size(image of A)`.
    pub escape_ratio: f64,
    /// A segment is split when longer than `refine * max(distance to the
    /// driving, sqrt(dt_k))`.
    pub refine: f64,
    pub max_points: usize,
}

impl Default for AvoidanceConfig {
    fn default() -> Self {
        AvoidanceConfig {
            kappa: 8.0 / 3.0,
            dt: 1e-3,
            growth: 1e-3,
            horizon: 1e4,
            escape_ratio: 50.0,
            refine: 0.25,
            max_points: 4096,
        }
    }
}

impl AvoidanceConfig {
    fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !(self.kappa >= 0.0 && self.kappa.is_finite()) {
            return invalid(format!("kappa must be nonnegative, got {}", self.kappa));
        }
        if !(positive(self.dt) && self.growth >= 0.0 && positive(self.horizon)) {
            return invalid("dt and horizon must be positive, growth nonnegative");
        }
        if !(self.escape_ratio > 1.0 && positive(self.refine) && self.max_points >= 2) {
            return invalid("escape_ratio must exceed 1, refine be positive, max_points at least 2");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AvoidanceOutcome {
    Hit { time: f64 },
    Escaped { time: f64 },
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AvoidanceEstimate {
    /// Fraction of trials not hitting `A`; undecided trials count as
    /// avoiding.
    pub estimate: Estimate,
    pub undecided: usize,
}

impl AvoidanceEstimate {
    pub fn undecided_fraction(&self) -> f64 {
        self.undecided as f64 / self.estimate.trials as f64
    }
}

fn hull_polyline(hull: &Hull) -> Result<Vec<C64>> {
    hull.validate()?;
    Ok(match hull {
        Hull::Slit { base, height } => {
            if *height == 0.0 {
                vec![C64::new(*base, 0.0)]
            } else {
                vec![C64::new(*base, 0.0), C64::new(*base, *height)]
            }
        }
        Hull::Polyline(p) => p.clone(),
    })
}

struct TrackedHull {
    /// `(point of A, its current image)`, in order along A.
    points: Vec<(C64, C64)>,
}

impl TrackedHull {
    fn distance(&self, u: f64) -> f64 {
        let p = C64::new(u, 0.0);
        if self.points.len() == 1 {
            return (self.points[0].1 - p).norm();
        }
        self.points.windows(2).map(|w| point_segment_distance(p, w[0].1, w[1].1)).fold(f64::INFINITY, f64::min)
    }

    fn size(&self) -> f64 {
        let base = self.points[0].1;
        self.points.iter().map(|(_, w)| (w - base).norm()).fold(0.0, f64::max)
    }
}

/// One trial of chordal SLE from 0 against the hull `A`.
pub fn avoidance_trial(hull: &Hull, config: &AvoidanceConfig, seed: u64) -> Result<AvoidanceOutcome> {
    config.validate()?;
    let polyline = hull_polyline(hull)?;
    let mut tracked = TrackedHull { points: polyline.iter().map(|&z| (z, z)).collect() };
    let mut chain = ConformalChain::new(Orientation::Chordal);
    let mut rng = rng_from_seed(seed);
    let side = tracked.points[0].1.re.signum();
    let mut u = 0.0;
    let mut time = 0.0;

    if !refine(&mut tracked, &chain, u, config.dt, config)? {
        return Ok(AvoidanceOutcome::Hit { time });
    }
    while time < config.horizon {
        let dist = tracked.distance(u);
        let size = tracked.size().max(f64::MIN_POSITIVE);
        if dist > config.escape_ratio * size {
            return Ok(AvoidanceOutcome::Escaped { time });
        }
        let dt = config.dt.max(config.growth * time);
        let xi: f64 = rng.sample(StandardNormal);
        let next = u + (config.kappa * dt).sqrt() * xi;
        let drive = 0.5 * (u + next);
        u = next;
        time += dt;

        let base = tracked.points[0].1.re;
        if (base - drive).signum() != side || base == drive {
            return Ok(AvoidanceOutcome::Hit { time });
        }
        let tip = C64::new(drive, 2.0 * dt.sqrt());
        let foot = C64::new(drive, 0.0);
        if tracked.points.windows(2).any(|w| segments_intersect(foot, tip, w[0].1, w[1].1)) {
            return Ok(AvoidanceOutcome::Hit { time });
        }
        for (i, (_, w)) in tracked.points.iter_mut().enumerate() {
            if i == 0 {
                *w = C64::new(flow_real(w.re, drive, dt), 0.0);
                continue;
            }
            match crate::loewner::remove_slit(*w - drive, dt) {
                Some(s) if s.im >= SWALLOW_EPS => *w = s + drive,
                _ => return Ok(AvoidanceOutcome::Hit { time }),
            }
        }
        chain.push(drive, dt)?;
        if !refine(&mut tracked, &chain, u, dt, config)? {
            return Ok(AvoidanceOutcome::Hit { time });
        }
    }
    Ok(AvoidanceOutcome::Undecided)
}

/// Splits long segments near the driving. Returns `false` if a new point
/// turns out to be swallowed already.
fn refine(tracked: &mut TrackedHull, chain: &ConformalChain, u: f64, dt: f64, config: &AvoidanceConfig) -> Result<bool> {
    let p = C64::new(u, 0.0);
    let floor = dt.sqrt();
    let mut i = 0;
    while i + 1 < tracked.points.len() {
        let (za, wa) = tracked.points[i];
        let (zb, wb) = tracked.points[i + 1];
        let len = (wb - wa).norm();
        let near = point_segment_distance(p, wa, wb).max(floor);
        if len > config.refine * near && tracked.points.len() < config.max_points {
            let z = 0.5 * (za + zb);
            match chain.evaluate(z)? {
                Evolution::Mapped(w) => tracked.points.insert(i + 1, (z, w)),
                Evolution::Swallowed { .. } => return Ok(false),
            }
        } else {
            i += 1;
        }
    }
    Ok(true)
}

/// Fraction of `trials` SLE(kappa) curves avoiding `A`, using the default
/// numerical settings with the given horizon.
pub fn mc_avoidance_probability(hull: &Hull, kappa: f64, trials: usize, horizon: f64, seed: u64) -> Result<AvoidanceEstimate> {
    let config = AvoidanceConfig { kappa, horizon, ..AvoidanceConfig::default() };
    mc_avoidance_probability_with(hull, &config, trials, seed)
}

/// Trial `i` uses the seed `derive_trial_seed(seed, i)`.
pub fn mc_avoidance_probability_with(hull: &Hull, config: &AvoidanceConfig, trials: usize, seed: u64) -> Result<AvoidanceEstimate> {
    if trials == 0 {
        return invalid("trials must be positive");
    }
    let mut avoided = 0;
    let mut undecided = 0;
    for i in 0..trials {
        match avoidance_trial(hull, config, derive_trial_seed(seed, i as u64))? {
            AvoidanceOutcome::Hit { .. } => {}
            AvoidanceOutcome::Escaped { .. } => avoided += 1,
            AvoidanceOutcome::Undecided => {
                avoided += 1;
                undecided += 1;
            }
        }
    }
    Ok(AvoidanceEstimate { estimate: Estimate::proportion(avoided, trials)?, undecided })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_zero_always_avoids_off_axis_hulls() {
        let a = Hull::slit(1.0, 1.0).unwrap();
        let e = mc_avoidance_probability(&a, 0.0, 20, 1e4, 3).unwrap();
        assert_eq!(e.estimate.value, 1.0);
        assert_eq!(e.undecided, 0);
        let left = Hull::Polyline(vec![C64::new(-0.5, 0.0), C64::new(-0.2, 0.4), C64::new(-1.0, 1.0)]);
        assert_eq!(mc_avoidance_probability(&left, 0.0, 5, 1e4, 3).unwrap().estimate.value, 1.0);
    }

    #[test]
    fn hull_across_the_path_is_always_hit() {
        // A wall spanning over the imaginary axis blocks the vertical trace.
        let wall = Hull::Polyline(vec![C64::new(1.0, 0.0), C64::new(1.0, 1.0), C64::new(-3.0, 1.0)]);
        let e = mc_avoidance_probability(&wall, 0.0, 3, 1e4, 0).unwrap();
        assert_eq!(e.estimate.value, 0.0);
    }

    #[test]
    fn trials_are_deterministic() {
        let a = Hull::slit(1.0, 1.0).unwrap();
        let cfg = AvoidanceConfig::default();
        for seed in 0..5 {
            assert_eq!(avoidance_trial(&a, &cfg, seed).unwrap(), avoidance_trial(&a, &cfg, seed).unwrap());
        }
        assert!(mc_avoidance_probability(&a, 8.0 / 3.0, 0, 1e4, 0).is_err());
    }

    #[test]
    fn larger_hull_is_hit_whenever_smaller_one_is() {
        let small = Hull::slit(1.0, 0.5).unwrap();
        let large = Hull::slit(1.0, 1.5).unwrap();
        let cfg = AvoidanceConfig::default();
        for seed in 0..40 {
            let s = avoidance_trial(&small, &cfg, seed).unwrap();
            let l = avoidance_trial(&large, &cfg, seed).unwrap();
            if matches!(s, AvoidanceOutcome::Hit { .. }) {
                assert!(matches!(l, AvoidanceOutcome::Hit { .. }), "seed {seed}");
            }
        }
    }
}
