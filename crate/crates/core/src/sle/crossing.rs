//! Real-line hitting events of chordal SLE.
//!
//! Everything here runs on the driving side. The images `a <= b` of the two
//! real endpoints of the hull are flowed along with the chain. A slit whose
//! base falls outside `[a, b]` means the curve has come back to the real
//! line, at the preimage of the slit base. Deciding which target interval is
//! hit needs only the images of the interval endpoints, so a step costs
//! `O(1)`; preimages are unwound once, at the end.

use crate::error::{invalid, Result};
use crate::loewner::{ConformalChain, DrivingFunction, Orientation, C64};
use crate::rng::rng_from_seed;
use rand::Rng;
use rand_distr::StandardNormal;

/// Default capacity-time horizon for crossing runs.
pub const CROSSING_HORIZON: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Flow of a real point `x` (off the slit base) through one slit step.
pub(crate) fn flow_real(x: f64, drive: f64, dt: f64) -> f64 {
    let w = x - drive;
    drive + w.signum() * (w * w + 4.0 * dt).sqrt()
}

/// A return of the curve to the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Landing {
    /// 1-based step during which the landing happened.
    pub step: usize,
    /// Side of the existing hull.
    pub side: Side,
    /// Slit base in the mapped plane.
    pub drive: f64,
}

/// Tracks the real extent of a chordal hull while slits are added.
#[derive(Debug, Clone)]
pub struct RealHull {
    chain: ConformalChain,
    start: f64,
    a: f64,
    b: f64,
    last_left: Option<Landing>,
    last_right: Option<Landing>,
}

impl RealHull {
    pub fn new(start: f64) -> Self {
        RealHull {
            chain: ConformalChain::new(Orientation::Chordal),
            start,
            a: start,
            b: start,
            last_left: None,
            last_right: None,
        }
    }

    /// Images of the left and right real endpoints of the hull.
    pub fn image_span(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn steps(&self) -> usize {
        self.chain.len()
    }

    /// The slit maps added so far.
    pub fn chain(&self) -> &ConformalChain {
        &self.chain
    }

    /// Adds a slit and reports whether it lands outside the current span.
    pub fn push(&mut self, drive: f64, dt: f64) -> Result<Option<Landing>> {
        self.chain.push(drive, dt)?;
        let step = self.chain.len();
        let h = 2.0 * dt.sqrt();
        let landing = if drive < self.a {
            self.a = drive - h;
            self.b = flow_real(self.b, drive, dt);
            Some(Landing { step, side: Side::Left, drive })
        } else if drive > self.b {
            self.a = flow_real(self.a, drive, dt);
            self.b = drive + h;
            Some(Landing { step, side: Side::Right, drive })
        } else {
            self.a = drive - ((self.a - drive).powi(2) + 4.0 * dt).sqrt();
            self.b = drive + ((self.b - drive).powi(2) + 4.0 * dt).sqrt();
            None
        };
        match landing {
            Some(l @ Landing { side: Side::Left, .. }) => self.last_left = Some(l),
            Some(l) => self.last_right = Some(l),
            None => {}
        }
        Ok(landing)
    }

    /// Real point of the original half-plane where `landing` touched down.
    pub fn landing_point(&self, landing: &Landing) -> f64 {
        self.chain.unwind(C64::new(landing.drive, 0.0), landing.step - 1).re
    }

    /// Minimum and maximum of the hull on the real line.
    pub fn extremes(&self) -> (f64, f64) {
        let y1 = self.last_left.map_or(self.start, |l| self.landing_point(&l).min(self.start));
        let y2 = self.last_right.map_or(self.start, |l| self.landing_point(&l).max(self.start));
        (y1, y2)
    }
}

/// Every landing of the curve driven by `driving`, with its real position.
pub fn real_axis_landings(driving: &DrivingFunction) -> Result<Vec<(Landing, f64)>> {
    let mut hull = RealHull::new(driving.start());
    let mut landings = Vec::new();
    for drive in driving.slit_positions() {
        if let Some(l) = hull.push(drive, driving.dt())? {
            landings.push(l);
        }
    }
    Ok(landings.into_iter().map(|l| (l, hull.landing_point(&l))).collect())
}

/// Result of a crossing run that reached one of the two target intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingOutcome {
    /// The curve reached `(-inf, 0]` before `[1, inf)`.
    pub hit_left: bool,
    /// Step at which the target was reached.
    pub stop_step: usize,
    /// Minimum of the hull on the real line at the stopping step.
    pub y1: f64,
    /// Maximum of the hull on the real line at the stopping step.
    pub y2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossing {
    Decided(CrossingOutcome),
    /// Neither interval was reached within the horizon.
    Undecided { steps: usize },
}

impl Crossing {
    pub fn outcome(&self) -> Option<&CrossingOutcome> {
        match self {
            Crossing::Decided(o) => Some(o),
            Crossing::Undecided { .. } => None,
        }
    }
}

/// Chordal SLE(kappa) from `x` in `(0, 1)`, run until the curve first
/// touches `(-inf, 0] u [1, inf)`.
///
/// The step is `dt` while the driving is within unit distance of the images
/// of 0 and 1 and grows as `dt * gap^2` beyond, which keeps the relative
/// resolution fixed as the hull grows and makes long horizons cheap.
pub fn chordal_crossing(x: f64, kappa: f64, dt: f64, horizon: f64, seed: u64) -> Result<Crossing> {
    Ok(run_crossing(x, kappa, dt, horizon, seed)?.0)
}

pub(crate) fn run_crossing(x: f64, kappa: f64, dt: f64, horizon: f64, seed: u64) -> Result<(Crossing, RealHull)> {
    if !(x > 0.0 && x < 1.0) {
        return invalid(format!("start must lie in (0, 1), got {x}"));
    }
    if !(kappa >= 0.0 && kappa.is_finite()) {
        return invalid(format!("kappa must be nonnegative, got {kappa}"));
    }
    if !(dt > 0.0 && dt.is_finite() && horizon > 0.0 && horizon.is_finite()) {
        return invalid("dt and horizon must be positive");
    }
    let mut rng = rng_from_seed(seed);
    let mut hull = RealHull::new(x);
    let (mut zero, mut one) = (0.0, 1.0);
    let mut u = x;
    let mut time = 0.0;
    while time < horizon {
        let gap = (u - zero).min(one - u);
        let h = dt * gap.max(1.0).powi(2);
        let xi: f64 = rng.sample(StandardNormal);
        let next = u + (kappa * h).sqrt() * xi;
        let drive = 0.5 * (u + next);
        u = next;
        time += h;
        let hit = if drive <= zero {
            Some(true)
        } else if drive >= one {
            Some(false)
        } else {
            None
        };
        hull.push(drive, h)?;
        if let Some(hit_left) = hit {
            let (y1, y2) = hull.extremes();
            let outcome = CrossingOutcome { hit_left, stop_step: hull.steps(), y1, y2 };
            return Ok((Crossing::Decided(outcome), hull));
        }
        zero = flow_real(zero, drive, h);
        one = flow_real(one, drive, h);
    }
    let steps = hull.steps();
    Ok((Crossing::Undecided { steps }, hull))
}

/// [`chordal_crossing`] for percolation's SLE(6) at the default horizon.
pub fn sle6_crossing(x: f64, dt: f64, seed: u64) -> Result<Crossing> {
    chordal_crossing(x, 6.0, dt, CROSSING_HORIZON, seed)
}
