use super::chain::{ConformalChain, Orientation};
use super::{check_finite, Evolution, C64};
use crate::error::{invalid, Result};

/// A compact hull attached to the real line, away from the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum Hull {
    /// The vertical segment `[base, base + i height]`.
    Slit { base: f64, height: f64 },
    /// A simple polyline starting on the real line and then staying in the
    /// open upper half-plane.
    Polyline(Vec<C64>),
}

impl Hull {
    pub fn slit(base: f64, height: f64) -> Result<Self> {
        let hull = Hull::Slit { base, height };
        hull.validate()?;
        Ok(hull)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Hull::Slit { base, height } => {
                if !(base.is_finite() && height.is_finite()) {
                    return invalid("slit parameters must be finite");
                }
                if *base == 0.0 {
                    return invalid("hull contains the origin");
                }
                if *height < 0.0 {
                    return invalid("slit height must be nonnegative");
                }
            }
            Hull::Polyline(points) => {
                if points.len() < 2 {
                    return invalid("polyline hull needs at least two points");
                }
                for &p in points {
                    check_finite(p)?;
                }
                if points[0].im != 0.0 {
                    return invalid("polyline hull must start on the real line");
                }
                if points[0].re == 0.0 {
                    return invalid("hull contains the origin");
                }
                if points[1..].iter().any(|p| p.im <= 0.0) {
                    return invalid("polyline hull must leave the real line immediately");
                }
            }
        }
        Ok(())
    }

    /// Total length of the hull curve.
    pub fn length(&self) -> f64 {
        match self {
            Hull::Slit { height, .. } => *height,
            Hull::Polyline(p) => p.windows(2).map(|w| (w[1] - w[0]).norm()).sum(),
        }
    }

    /// Point at arclength fraction `s` in `[0, 1]` from the base.
    pub fn point_at(&self, s: f64) -> C64 {
        let s = s.clamp(0.0, 1.0);
        match self {
            Hull::Slit { base, height } => C64::new(*base, s * height),
            Hull::Polyline(p) => {
                let mut remaining = s * self.length();
                for w in p.windows(2) {
                    let len = (w[1] - w[0]).norm();
                    if remaining <= len && len > 0.0 {
                        return w[0] + (w[1] - w[0]) * (remaining / len);
                    }
                    remaining -= len;
                }
                *p.last().unwrap()
            }
        }
    }

    /// Euclidean distance from `z` to the hull.
    pub fn distance(&self, z: C64) -> f64 {
        let seg = |a: C64, b: C64| {
            let d = b - a;
            let len2 = d.norm_sqr();
            let t = if len2 == 0.0 { 0.0 } else { ((z - a) * d.conj()).re / len2 };
            (a + d * t.clamp(0.0, 1.0) - z).norm()
        };
        match self {
            Hull::Slit { base, height } => seg(C64::new(*base, 0.0), C64::new(*base, *height)),
            Hull::Polyline(p) => p.windows(2).map(|w| seg(w[0], w[1])).fold(f64::INFINITY, f64::min),
        }
    }
}

/// The conformal map `Phi` of the half-plane minus a hull onto the
/// half-plane with `Phi(0) = 0` and `Phi(z) ~ z` at infinity.
#[derive(Debug, Clone)]
pub struct HullMap {
    pub derivative_at_zero: f64,
    /// Half-plane capacity of the hull.
    pub capacity: f64,
    chain: ConformalChain,
    offset: f64,
}

impl HullMap {
    /// `Phi(z)` for `z` in the closed half-plane off the hull.
    pub fn evaluate(&self, z: C64) -> Result<C64> {
        match self.chain.evaluate(z)? {
            Evolution::Mapped(w) => Ok(w - self.offset),
            Evolution::Swallowed { .. } => invalid(format!("{z} lies on the hull")),
        }
    }
}

/// Number of unzipping steps used for polyline hulls.
const POLYLINE_STEPS: usize = 2000;

/// Builds the normalised hull map.
///
/// Slits are removed by one exact step and `Phi'(0) = |x| / sqrt(x^2 + h^2)`.
/// Polylines are unzipped point by point: each successive vertex is mapped
/// forward and removed by the vertical slit under its image; `Phi'(0)` is
/// then a centred difference of radius `1e-6`.
pub fn hull_map(hull: &Hull) -> Result<HullMap> {
    hull.validate()?;
    let mut chain = ConformalChain::new(Orientation::Chordal);
    let derivative_analytic = match hull {
        Hull::Slit { base, height } => {
            if *height > 0.0 {
                chain.push(*base, 0.25 * height * height)?;
            }
            Some(base.abs() / (base * base + height * height).sqrt())
        }
        Hull::Polyline(points) => {
            let total = hull.length();
            for w in points.windows(2) {
                let len = (w[1] - w[0]).norm();
                let pieces = ((len / total) * POLYLINE_STEPS as f64).ceil().max(1.0) as usize;
                for j in 1..=pieces {
                    let p = w[0] + (w[1] - w[0]) * (j as f64 / pieces as f64);
                    let image = match chain.evaluate(p)? {
                        Evolution::Mapped(v) => v,
                        Evolution::Swallowed { .. } => return invalid("polyline hull is not simple"),
                    };
                    if image.im > 0.0 {
                        chain.push(image.re, 0.25 * image.im * image.im)?;
                    }
                }
            }
            None
        }
    };
    let origin = |x: f64| -> Result<f64> {
        match chain.evaluate(C64::new(x, 0.0))? {
            Evolution::Mapped(w) => Ok(w.re),
            Evolution::Swallowed { .. } => invalid("hull reaches the origin"),
        }
    };
    let offset = origin(0.0)?;
    let derivative_at_zero = match derivative_analytic {
        Some(d) => d,
        None => {
            let h = 1e-6;
            (origin(h)? - origin(-h)?) / (2.0 * h)
        }
    };
    Ok(HullMap { derivative_at_zero, capacity: 2.0 * chain.duration(), chain, offset })
}
