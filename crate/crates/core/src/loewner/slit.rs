//! Exact single-step slit maps.

use super::{check_finite, C64, BRANCH_EPS};
use crate::error::{invalid, Result};

/// Image of `w` under the map removing the vertical slit `[0, 2i sqrt(dt)]`,
/// i.e. `sqrt(w^2 + 4 dt)` on the branch that sends the slit complement onto
/// the upper half-plane. `None` when `w` lies on the slit.
///
/// Evaluated as `w + 4 dt / (w (1 + sqrt(1 + 4 dt / w^2)))`, which is the
/// same branch and keeps full relative precision in the increment when
/// `|w|` is large.
pub(crate) fn remove_slit(w: C64, dt: f64) -> Option<C64> {
    if w.re == 0.0 && w.im == 0.0 {
        return None;
    }
    let a = 1.0 + 4.0 * dt / (w * w);
    if a.re <= 0.0 && a.im.abs() <= BRANCH_EPS * (1.0 + a.re.abs()) {
        return None;
    }
    let s = w + 4.0 * dt / (w * (1.0 + a.sqrt()));
    Some(if s.im < 0.0 { -s } else { s })
}

/// Inverse of [`remove_slit`]: `sqrt(s^2 - 4 dt)` mapping the closed
/// half-plane onto the closed half-plane minus the slit. Real `s` with
/// `|s| < 2 sqrt(dt)` land on the slit itself.
pub(crate) fn restore_slit(s: C64, dt: f64) -> C64 {
    if s.re == 0.0 && s.im == 0.0 {
        return C64::new(0.0, 2.0 * dt.sqrt());
    }
    let a = 1.0 - 4.0 * dt / (s * s);
    let w = s - 4.0 * dt / (s * (1.0 + a.sqrt()));
    if w.im < 0.0 {
        -w
    } else {
        w
    }
}

/// Outcome of a single slit step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepImage {
    Mapped(C64),
    Swallowed,
}

/// One chordal step: removes the vertical slit of capacity `2 dt` standing at
/// `(u_from + u_to) / 2`.
///
/// The slit is placed at the midpoint of the driving increment, which makes
/// the step second-order accurate against the Loewner flow with linearly
/// interpolated driving.
pub fn elementary_step(z: C64, u_from: f64, u_to: f64, dt: f64) -> Result<StepImage> {
    check_finite(z)?;
    if !(u_from.is_finite() && u_to.is_finite()) {
        return invalid("driving values must be finite");
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return invalid(format!("time step must be positive, got {dt}"));
    }
    let drive = 0.5 * (u_from + u_to);
    Ok(match remove_slit(z - drive, dt) {
        Some(s) => StepImage::Mapped(s + drive),
        None => StepImage::Swallowed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// RK4 integration of dg/dt = 2 / (g - U(t)) with U linear over the step.
    fn loewner_ode(z: C64, u_from: f64, u_to: f64, dt: f64, substeps: usize) -> C64 {
        let h = dt / substeps as f64;
        let f = |g: C64, t: f64| 2.0 / (g - (u_from + (u_to - u_from) * t / dt));
        let mut g = z;
        for i in 0..substeps {
            let t = i as f64 * h;
            let k1 = f(g, t);
            let k2 = f(g + k1 * (h / 2.0), t + h / 2.0);
            let k3 = f(g + k2 * (h / 2.0), t + h / 2.0);
            let k4 = f(g + k3 * h, t + h);
            g += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        }
        g
    }

    #[test]
    fn slit_tip_maps_to_base() {
        match elementary_step(c(0.0, 2.0), 0.0, 0.0, 1.0).unwrap() {
            StepImage::Mapped(w) => assert_abs_diff_eq!(w.norm(), 0.0, epsilon = 1e-12),
            StepImage::Swallowed => {}
        }
    }

    #[test]
    fn far_field_expansion() {
        let StepImage::Mapped(w) = elementary_step(c(100.0, 0.0), 0.0, 0.0, 1.0).unwrap() else {
            panic!()
        };
        assert_abs_diff_eq!(w.re, 100.0 + 2.0 / 100.0, epsilon = 1e-5);
        assert_eq!(w.im, 0.0);
    }

    #[test]
    fn matches_fine_ode_with_linear_driving() {
        let z = c(1.0, 1.0);
        let oracle = loewner_ode(z, 0.0, 0.3, 0.01, 10_000);
        let StepImage::Mapped(w) = elementary_step(z, 0.0, 0.3, 0.01).unwrap() else { panic!() };
        assert!((w - oracle).norm() <= 1e-4, "{w} vs {oracle}");
    }

    #[test]
    fn points_on_slit_are_swallowed() {
        assert_eq!(elementary_step(c(0.0, 1.0), 0.0, 0.0, 1.0).unwrap(), StepImage::Swallowed);
        assert_eq!(elementary_step(c(0.5, 0.0), 0.5, 0.5, 1.0).unwrap(), StepImage::Swallowed);
    }

    #[test]
    fn real_points_keep_their_side() {
        let StepImage::Mapped(l) = elementary_step(c(-0.1, 0.0), 0.0, 0.0, 1.0).unwrap() else { panic!() };
        let StepImage::Mapped(r) = elementary_step(c(0.1, 0.0), 0.0, 0.0, 1.0).unwrap() else { panic!() };
        assert!(l.re < -2.0 && r.re > 2.0);
    }

    #[test]
    fn non_finite_input_is_rejected() {
        assert!(elementary_step(c(f64::NAN, 1.0), 0.0, 0.0, 1.0).is_err());
        assert!(elementary_step(c(1.0, 1.0), f64::INFINITY, 0.0, 1.0).is_err());
        assert!(elementary_step(c(1.0, 1.0), 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn restore_inverts_remove() {
        for &(re, im) in &[(0.3, 0.7), (-2.0, 0.01), (5.0, 3.0), (-0.01, 2.5), (1.5, 0.0)] {
            let w = c(re, im);
            let s = remove_slit(w, 0.2).unwrap();
            assert!(s.im >= 0.0);
            assert_abs_diff_eq!((restore_slit(s, 0.2) - w).norm(), 0.0, epsilon = 1e-12);
        }
        // Real points inside the slit image land on the slit.
        let p = restore_slit(c(0.1, 0.0), 0.25);
        assert_abs_diff_eq!(p.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.im, (1.0f64 - 0.01).sqrt(), epsilon = 1e-12);
        let q = restore_slit(c(-0.1, 0.0), 0.25);
        assert_abs_diff_eq!(q.im, p.im, epsilon = 1e-12);
    }
}
