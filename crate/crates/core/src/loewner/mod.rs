//! Chordal and radial Loewner evolutions.
//!
//! A driving function sampled on a uniform grid is turned into a
//! [`ConformalChain`]: one exactly solvable slit map per time step. Step `k`
//! removes a vertical slit of half-plane capacity `2 dt` standing at the
//! midpoint driving value `(U_{k-1} + U_k) / 2` (the radial analogue removes
//! a radial slit of log-conformal-radius `dt`). Forward evaluation composes
//! the steps; the trace is recovered by unwinding them in reverse order
//! from the tip of the last slit.

mod chain;
mod extremal;
mod hull;
mod radial;
mod slit;
pub(crate) use slit::remove_slit;

pub use chain::{capacity_coefficient, ConformalChain, Orientation, SlitStep};
pub use extremal::{pi_extremal_distance, pi_extremal_distance_with_resolution, BoundaryArc, Polygon, DEFAULT_RESOLUTION};
pub use hull::{hull_map, Hull, HullMap};
pub use radial::{radial_derivative_at_origin, radial_evolve, radial_trace, radial_trace_point};
pub use slit::{elementary_step, StepImage};

use crate::error::{invalid, Error, Result};
pub use num_complex::Complex64 as C64;

/// Imaginary part (chordal) or distance to the circle (radial) below which an
/// interior point counts as swallowed.
pub const SWALLOW_EPS: f64 = 1e-9;
/// Tolerance for a square-root argument landing on its branch cut.
pub const BRANCH_EPS: f64 = 1e-12;
/// Slack allowed when checking that traces stay in the closed domain.
pub const GEOM_EPS: f64 = 1e-9;

/// A driving function `U_0, ..., U_n` sampled at times `k * dt`.
///
/// `U_0` is where the trace starts on the real line (or the angle of the
/// starting point on the circle). Samplers produce `U_0 = 0`; a nonzero
/// start is used for curves launched from an interior boundary point.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivingFunction {
    dt: f64,
    values: Vec<f64>,
    kappa: f64,
}

impl DrivingFunction {
    pub fn new(dt: f64, values: Vec<f64>, kappa: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return invalid(format!("time step must be positive and finite, got {dt}"));
        }
        if values.is_empty() {
            return invalid("driving function needs at least one value");
        }
        if values.iter().any(|v| !v.is_finite()) {
            return invalid("driving values must be finite");
        }
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return invalid(format!("kappa must be nonnegative, got {kappa}"));
        }
        Ok(Self { dt, values, kappa })
    }

    /// Identically zero driving over `steps` steps.
    pub fn zero(dt: f64, steps: usize) -> Result<Self> {
        Self::new(dt, vec![0.0; steps + 1], 0.0)
    }

    /// Samples a deterministic function `f(t)` on the grid.
    pub fn from_fn(dt: f64, steps: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(dt, (0..=steps).map(|k| f(k as f64 * dt)).collect(), 0.0)
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Number of time steps, `values().len() - 1`.
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn duration(&self) -> f64 {
        self.steps() as f64 * self.dt
    }

    pub fn start(&self) -> f64 {
        self.values[0]
    }

    /// The same driving shifted by a constant.
    pub fn translated(&self, c: f64) -> Self {
        Self {
            dt: self.dt,
            values: self.values.iter().map(|v| v + c).collect(),
            kappa: self.kappa,
        }
    }

    /// Per-step slit positions `(U_{k-1} + U_k) / 2`, `k = 1..=n`.
    pub fn slit_positions(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.windows(2).map(|w| 0.5 * (w[0] + w[1]))
    }
}

/// Result of flowing a point through a chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evolution {
    /// The point survives; its image under the whole chain.
    Mapped(C64),
    /// The point joins the hull during step `step` (1-based) at capacity
    /// time `time`.
    Swallowed { step: usize, time: f64 },
}

impl Evolution {
    pub fn mapped(self) -> Option<C64> {
        match self {
            Evolution::Mapped(w) => Some(w),
            Evolution::Swallowed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    HalfPlane,
    Disk,
}

/// A sampled curve in capacity parametrisation.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub points: Vec<C64>,
    pub times: Vec<f64>,
    pub geometry: Geometry,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Median Euclidean distance between consecutive points.
    pub fn median_step_length(&self) -> f64 {
        let mut steps: Vec<f64> = self.points.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
        if steps.is_empty() {
            return 0.0;
        }
        steps.sort_by(f64::total_cmp);
        steps[steps.len() / 2]
    }

    /// Mean Euclidean distance between consecutive points, the natural
    /// resolution of the trace for box counting.
    pub fn mean_step_length(&self) -> f64 {
        if self.points.len() < 2 {
            return 0.0;
        }
        self.points.windows(2).map(|w| (w[1] - w[0]).norm()).sum::<f64>() / (self.points.len() - 1) as f64
    }

    /// Whether every point lies in the closed domain up to `GEOM_EPS`.
    pub fn in_domain(&self) -> bool {
        match self.geometry {
            Geometry::HalfPlane => self.points.iter().all(|p| p.im >= -GEOM_EPS),
            Geometry::Disk => self.points.iter().all(|p| p.norm() <= 1.0 + GEOM_EPS),
        }
    }

    pub fn xy(&self) -> Vec<[f64; 2]> {
        self.points.iter().map(|p| [p.re, p.im]).collect()
    }
}

fn check_finite(z: C64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        invalid(format!("non-finite point {z}"))
    }
}

fn check_index(k: usize, steps: usize) -> Result<()> {
    if k > steps {
        Err(Error::IndexOutOfRange { index: k, len: steps })
    } else {
        Ok(())
    }
}

/// Flows `z` through the chordal chain built from `driving`.
///
/// Points strictly inside the half-plane are swallowed when their image
/// reaches the real line; real points are swallowed when a slit lands on or
/// beyond them.
pub fn chordal_evolve(driving: &DrivingFunction, z: C64) -> Result<Evolution> {
    check_finite(z)?;
    if z.im < -GEOM_EPS {
        return invalid(format!("{z} is below the real line"));
    }
    if z == C64::new(driving.start(), 0.0) {
        return invalid("the starting point is swallowed at time 0");
    }
    ConformalChain::from_driving(driving, Orientation::Chordal).evaluate(z)
}

/// `gamma(t_k)`: the tip of slit `k` pulled back through steps `k, ..., 1`.
pub fn trace_point(driving: &DrivingFunction, k: usize) -> Result<C64> {
    check_index(k, driving.steps())?;
    if k == 0 {
        return Ok(C64::new(driving.start(), 0.0));
    }
    let chain = ConformalChain::from_driving(driving, Orientation::Chordal);
    Ok(chain.tip(k))
}

/// The chordal trace at steps `0, stride, 2 stride, ..., n` (the last step is
/// always included). Each point costs `O(k)`, so a full trace is `O(n^2)`;
/// `stride > 1` trades resolution for time.
pub fn chordal_trace(driving: &DrivingFunction, stride: usize) -> Result<Trace> {
    if stride == 0 {
        return invalid("stride must be at least 1");
    }
    let chain = ConformalChain::from_driving(driving, Orientation::Chordal);
    let n = driving.steps();
    let mut points = vec![C64::new(driving.start(), 0.0)];
    let mut times = vec![0.0];
    for k in sample_indices(n, stride) {
        points.push(chain.tip(k));
        times.push(k as f64 * driving.dt());
    }
    Ok(Trace { points, times, geometry: Geometry::HalfPlane })
}

fn sample_indices(n: usize, stride: usize) -> impl Iterator<Item = usize> {
    let mut ks: Vec<usize> = (1..=n).step_by(stride).collect();
    if n > 0 && ks.last() != Some(&n) {
        ks.push(n);
    }
    ks.into_iter()
}
