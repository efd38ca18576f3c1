use super::radial::{radial_forward, radial_inverse};
use super::slit::{remove_slit, restore_slit};
use super::{check_finite, DrivingFunction, Evolution, C64, GEOM_EPS, SWALLOW_EPS};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Upper half-plane, hydrodynamic normalisation at infinity.
    Chordal,
    /// Unit disk, normalised at the origin; `drive` is an angle.
    Radial,
}

/// One elementary slit map: slit at `drive`, duration `dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitStep {
    pub drive: f64,
    pub dt: f64,
}

/// Ordered composition of slit maps approximating `g_t`.
///
/// The empty chain is the identity. Chordal chains have half-plane capacity
/// exactly `2 * duration()` since every step adds `2 dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalChain {
    orientation: Orientation,
    steps: Vec<SlitStep>,
}

impl ConformalChain {
    pub fn new(orientation: Orientation) -> Self {
        Self { orientation, steps: Vec::new() }
    }

    pub fn from_driving(driving: &DrivingFunction, orientation: Orientation) -> Self {
        let dt = driving.dt();
        Self {
            orientation,
            steps: driving.slit_positions().map(|drive| SlitStep { drive, dt }).collect(),
        }
    }

    pub fn push(&mut self, drive: f64, dt: f64) -> Result<()> {
        if !drive.is_finite() || !(dt > 0.0 && dt.is_finite()) {
            return invalid(format!("bad slit step (drive {drive}, dt {dt})"));
        }
        self.steps.push(SlitStep { drive, dt });
        Ok(())
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn steps(&self) -> &[SlitStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.steps.iter().map(|s| s.dt).sum()
    }

    /// Flows `z` through every step.
    pub fn evaluate(&self, z: C64) -> Result<Evolution> {
        self.evaluate_prefix(z, self.steps.len())
    }

    /// Flows `z` through the first `k` steps.
    pub fn evaluate_prefix(&self, z: C64, k: usize) -> Result<Evolution> {
        check_finite(z)?;
        let steps = &self.steps[..k.min(self.steps.len())];
        Ok(match self.orientation {
            Orientation::Chordal => evaluate_chordal(steps, z),
            Orientation::Radial => {
                if z.norm() > 1.0 + GEOM_EPS {
                    return invalid(format!("{z} lies outside the unit disk"));
                }
                evaluate_radial(steps, z)
            }
        })
    }

    /// Applies the inverses of steps `k, k-1, ..., 1` to `w`.
    pub fn unwind(&self, w: C64, k: usize) -> C64 {
        let mut z = w;
        for step in self.steps[..k].iter().rev() {
            z = match self.orientation {
                Orientation::Chordal => step.drive + restore_slit(z - step.drive, step.dt),
                Orientation::Radial => {
                    let rot = C64::from_polar(1.0, step.drive);
                    rot * radial_inverse(z / rot, step.dt)
                }
            };
        }
        z
    }

    /// Trace point at the end of step `k >= 1`: the tip of slit `k` pulled
    /// back through the chain.
    pub fn tip(&self, k: usize) -> C64 {
        let step = self.steps[k - 1];
        let w = match self.orientation {
            Orientation::Chordal => C64::new(step.drive, 0.0),
            Orientation::Radial => C64::from_polar(1.0, step.drive),
        };
        self.unwind(w, k)
    }
}

fn evaluate_chordal(steps: &[SlitStep], z: C64) -> Evolution {
    let mut time = 0.0;
    if z.im > 0.0 {
        let mut g = z;
        for (k, step) in steps.iter().enumerate() {
            time += step.dt;
            match remove_slit(g - step.drive, step.dt) {
                Some(s) if s.im >= SWALLOW_EPS => g = s + step.drive,
                _ => return Evolution::Swallowed { step: k + 1, time },
            }
        }
        Evolution::Mapped(g)
    } else {
        // Real points move along the axis until a slit lands on or past them.
        let mut x = z.re;
        let mut side = 0.0;
        for (k, step) in steps.iter().enumerate() {
            time += step.dt;
            let w = x - step.drive;
            let s = w.signum();
            if w == 0.0 || (side != 0.0 && s != side) {
                return Evolution::Swallowed { step: k + 1, time };
            }
            side = s;
            x = step.drive + s * (w * w + 4.0 * step.dt).sqrt();
        }
        Evolution::Mapped(C64::new(x, 0.0))
    }
}

fn evaluate_radial(steps: &[SlitStep], z: C64) -> Evolution {
    if z.norm() == 0.0 {
        return Evolution::Mapped(z);
    }
    let on_circle = z.norm() >= 1.0 - GEOM_EPS;
    let mut g = z;
    let mut time = 0.0;
    let mut side = 0.0;
    for (k, step) in steps.iter().enumerate() {
        time += step.dt;
        let rot = C64::from_polar(1.0, step.drive);
        let w = g / rot;
        if on_circle {
            // Boundary points keep their side of the driving point until overtaken.
            let s = w.im.signum();
            if w.arg().abs() < std::f64::consts::FRAC_PI_2 && side != 0.0 && s != side {
                return Evolution::Swallowed { step: k + 1, time };
            }
            side = s;
        }
        match radial_forward(w, step.dt) {
            Some(v) if on_circle || v.norm() <= 1.0 - SWALLOW_EPS => g = rot * v,
            _ => return Evolution::Swallowed { step: k + 1, time },
        }
    }
    Evolution::Mapped(g)
}

/// Half-plane capacity `a` in `g(z) = z + a / z + O(|z|^-2)`.
///
/// Evaluates `z (g(z) - z)` on the imaginary axis at `|z| = 1e3` and `1e4`
/// and removes the `|z|^-2` correction of the real part by Richardson
/// extrapolation.
pub fn capacity_coefficient(chain: &ConformalChain) -> Result<f64> {
    if chain.orientation() != Orientation::Chordal {
        return invalid("half-plane capacity needs a chordal chain");
    }
    if chain.is_empty() {
        return Ok(0.0);
    }
    // The displacement g(z) - z is accumulated separately so that it keeps
    // full relative precision far from the hull.
    let probe = |r: f64| -> Result<f64> {
        let z = C64::new(0.0, r);
        let mut g = z;
        let mut shift = C64::new(0.0, 0.0);
        for step in chain.steps() {
            let w = g - step.drive;
            let a = 1.0 + 4.0 * step.dt / (w * w);
            let inc = 4.0 * step.dt / (w * (1.0 + a.sqrt()));
            if (w + inc).im < SWALLOW_EPS {
                return invalid("probe point swallowed; hull too large");
            }
            g += inc;
            shift += inc;
        }
        Ok((z * shift).re)
    };
    let (r1, r2) = (1e3, 1e4);
    let (a1, a2) = (probe(r1)?, probe(r2)?);
    Ok((r2 * r2 * a2 - r1 * r1 * a1) / (r2 * r2 - r1 * r1))
}
