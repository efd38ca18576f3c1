//! Radial slit maps.
//!
//! With the Koebe-type function `k(z) = z / (1 + z)^2`, which sends the disk
//! onto the plane minus `[1/4, inf)`, the radial flow with constant driving
//! angle 0 is `k(g_t(z)) = e^t k(z)`. One radial step is therefore exact:
//! `K_dt(z) = k^{-1}(e^{dt} k(z))`, removing a radial slit ending at 1 and
//! keeping `g(0) = 0`, `g'(0) = e^{dt}`.

use super::chain::{ConformalChain, Orientation};
use super::{check_finite, check_index, sample_indices, DrivingFunction, Evolution, Geometry, Trace, C64, BRANCH_EPS, GEOM_EPS};
use crate::error::{invalid, Result};

fn koebe(z: C64) -> C64 {
    let d = 1.0 + z;
    z / (d * d)
}

/// Root of `k(z) = v` in the closed unit disk. The two roots multiply to 1;
/// when both lie on the circle the one in the half-plane selected by
/// `upper` is returned.
fn koebe_inverse(v: C64, upper: bool) -> C64 {
    if v.norm() == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let s = (1.0 - 4.0 * v).sqrt();
    let b = 1.0 - 2.0 * v;
    let q = if (b + s).norm() >= (b - s).norm() { b + s } else { b - s };
    let r = 2.0 * v / q;
    if r.norm() > 1.0 - 1e-10 {
        let alt = 1.0 / r;
        let want = |c: C64| (c.im >= 0.0) == upper;
        if !want(r) && want(alt) {
            return alt;
        }
    }
    r
}

/// One radial step with the slit at angle 0. `None` when `w` is on the slit.
pub(crate) fn radial_forward(w: C64, dt: f64) -> Option<C64> {
    if (1.0 + w).norm() == 0.0 {
        return Some(w);
    }
    let v = dt.exp() * koebe(w);
    let disc = 1.0 - 4.0 * v;
    if disc.re <= 0.0 && disc.im.abs() <= BRANCH_EPS * (1.0 + disc.re.abs()) {
        return None;
    }
    Some(koebe_inverse(v, w.im >= 0.0))
}

/// Inverse radial step: the disk onto the disk minus the slit at angle 0.
pub(crate) fn radial_inverse(w: C64, dt: f64) -> C64 {
    if (1.0 + w).norm() == 0.0 {
        return w;
    }
    koebe_inverse((-dt).exp() * koebe(w), w.im >= 0.0)
}

/// Flows `z` (closed unit disk) through the radial chain of `driving`,
/// whose values are angles on the circle.
pub fn radial_evolve(driving: &DrivingFunction, z: C64) -> Result<Evolution> {
    check_finite(z)?;
    if z.norm() > 1.0 + GEOM_EPS {
        return invalid(format!("{z} lies outside the unit disk"));
    }
    ConformalChain::from_driving(driving, Orientation::Radial).evaluate(z)
}

/// `gamma(t_k)` for the radial chain; `k = 0` gives `e^{i U_0}`.
pub fn radial_trace_point(driving: &DrivingFunction, k: usize) -> Result<C64> {
    check_index(k, driving.steps())?;
    if k == 0 {
        return Ok(C64::from_polar(1.0, driving.start()));
    }
    Ok(ConformalChain::from_driving(driving, Orientation::Radial).tip(k))
}

/// Radial trace at steps `0, stride, ..., n`.
pub fn radial_trace(driving: &DrivingFunction, stride: usize) -> Result<Trace> {
    if stride == 0 {
        return invalid("stride must be at least 1");
    }
    let chain = ConformalChain::from_driving(driving, Orientation::Radial);
    let mut points = vec![C64::from_polar(1.0, driving.start())];
    let mut times = vec![0.0];
    for k in sample_indices(driving.steps(), stride) {
        points.push(chain.tip(k));
        times.push(k as f64 * driving.dt());
    }
    Ok(Trace { points, times, geometry: Geometry::Disk })
}

/// `g_t'(0)` by a centred difference of radius `h`.
pub fn radial_derivative_at_origin(driving: &DrivingFunction, h: f64) -> Result<f64> {
    if !(h > 0.0 && h < 0.5) {
        return invalid(format!("difference radius must lie in (0, 0.5), got {h}"));
    }
    let chain = ConformalChain::from_driving(driving, Orientation::Radial);
    let image = |z: f64| -> Result<C64> {
        chain
            .evaluate(C64::new(z, 0.0))?
            .mapped()
            .ok_or_else(|| crate::Error::InvalidArgument("probe point swallowed".into()))
    };
    let d = (image(h)? - image(-h)?) / (2.0 * h);
    Ok(d.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn step_is_exact_radial_flow() {
        // k(g) = e^dt k(z) differentiates to the radial Loewner vector field.
        let z = C64::new(-0.3, 0.4);
        let dt = 1e-6;
        let g = radial_forward(z, dt).unwrap();
        let field = z * (1.0 + z) / (1.0 - z);
        assert_abs_diff_eq!(((g - z) / dt - field).norm(), 0.0, epsilon = 1e-4);
    }

    #[test]
    fn forward_and_inverse_round_trip() {
        for &(re, im) in &[(0.2, 0.3), (-0.6, -0.1), (0.9, 0.05), (0.0, -0.95)] {
            let z = C64::new(re, im);
            let g = radial_forward(z, 0.1).unwrap();
            assert!(g.norm() < 1.0);
            assert_abs_diff_eq!((radial_inverse(g, 0.1) - z).norm(), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn origin_is_fixed_and_derivative_is_exponential() {
        let driving = DrivingFunction::from_fn(1e-3, 1000, |t| (3.0 * t).cos() - 1.0).unwrap();
        assert_eq!(radial_evolve(&driving, C64::new(0.0, 0.0)).unwrap(), Evolution::Mapped(C64::new(0.0, 0.0)));
        let zero = DrivingFunction::zero(1e-3, 1000).unwrap();
        let d = radial_derivative_at_origin(&zero, 1e-6).unwrap();
        assert_abs_diff_eq!(d, std::f64::consts::E, epsilon = 1e-3);
    }

    #[test]
    fn zero_driving_trace_is_a_radial_segment() {
        let driving = DrivingFunction::zero(1e-3, 100).unwrap();
        assert_eq!(radial_trace_point(&driving, 0).unwrap(), C64::new(1.0, 0.0));
        let p = radial_trace_point(&driving, 100).unwrap();
        assert!(p.re > 0.0 && p.re < 1.0);
        assert_abs_diff_eq!(p.im, 0.0, epsilon = 1e-12);
        // Tip x solves (1 + x)^2 / (4 x) = e^t.
        let x = p.re;
        assert_abs_diff_eq!((1.0 + x).powi(2) / (4.0 * x), 0.1f64.exp(), epsilon = 1e-9);
    }

    #[test]
    fn points_outside_the_disk_are_rejected() {
        let driving = DrivingFunction::zero(1e-3, 10).unwrap();
        assert!(radial_evolve(&driving, C64::new(1.5, 0.0)).is_err());
    }

    #[test]
    fn points_on_the_slit_are_swallowed() {
        let driving = DrivingFunction::zero(1e-3, 1000).unwrap();
        let tip = radial_trace_point(&driving, 1000).unwrap();
        let on_slit = C64::new(0.5 * (1.0 + tip.re), 0.0);
        assert!(matches!(radial_evolve(&driving, on_slit).unwrap(), Evolution::Swallowed { .. }));
    }
}
