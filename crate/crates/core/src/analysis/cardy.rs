//! Cardy's crossing formula in Carleson's triangle form and on the
//! half-plane.

use crate::error::{invalid, Result};
use quadrature::double_exponential;
use std::sync::OnceLock;

/// Crossing probability for the equilateral triangle with `A1` a full side
/// and `A2` the segment of relative length `x` ending at the opposite
/// vertex: simply `x`.
pub fn cardy_triangle(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return invalid(format!("x must lie in [0, 1], got {x}"));
    }
    Ok(x)
}

/// `int_0^m (t(1-t))^(-2/3) dt` for `m <= 1/2`. The integrand is the
/// boundary derivative of the Schwarz-Christoffel map from the half-plane
/// onto the equilateral triangle; substituting `t = u^3` removes its
/// singularity at 0, and the one at 1 is outside the range.
fn lower_integral(m: f64) -> f64 {
    let f = |u: f64| 3.0 * (1.0 - u * u * u).powf(-2.0 / 3.0);
    double_exponential::integrate(f, 0.0, m.cbrt(), 1e-14).integral
}

fn half_integral() -> f64 {
    static HALF: OnceLock<f64> = OnceLock::new();
    *HALF.get_or_init(|| lower_integral(0.5))
}

/// Half-plane crossing probability as a function of the cross-ratio `m`:
/// the image of `[0, m]` under the normalised map onto the triangle,
/// `int_0^m density / int_0^1 density`.
///
/// Values above `1/2` are computed as `1 - cardy_halfplane(1 - m)`, so the
/// symmetry holds to rounding.
pub fn cardy_halfplane(m: f64) -> Result<f64> {
    if !(m > 0.0 && m < 1.0) {
        return invalid(format!("cross-ratio must lie in (0, 1), got {m}"));
    }
    let total = 2.0 * half_integral();
    Ok(if m <= 0.5 { lower_integral(m) / total } else { 1.0 - lower_integral(1.0 - m) / total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::beta::beta_reg;

    #[test]
    fn triangle_form() {
        assert_eq!(cardy_triangle(0.0).unwrap(), 0.0);
        assert_eq!(cardy_triangle(1.0).unwrap(), 1.0);
        assert_eq!(cardy_triangle(0.5).unwrap(), 0.5);
        assert!(cardy_triangle(1.5).is_err() && cardy_triangle(-0.1).is_err());
    }

    #[test]
    fn halfplane_matches_incomplete_beta() {
        for m in [1e-6, 0.01, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.999] {
            let v = cardy_halfplane(m).unwrap();
            assert!((v - beta_reg(1.0 / 3.0, 1.0 / 3.0, m)).abs() < 1e-8, "{m}");
        }
        assert!((cardy_halfplane(0.5).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn halfplane_symmetry_and_monotonicity() {
        for k in 1..10 {
            let m = k as f64 / 10.0;
            let s = cardy_halfplane(m).unwrap() + cardy_halfplane(1.0 - m).unwrap();
            assert!((s - 1.0).abs() < 1e-10);
        }
        let values: Vec<f64> = (1..1000).map(|k| cardy_halfplane(k as f64 / 1000.0).unwrap()).collect();
        assert!(values.windows(2).all(|w| w[1] > w[0]));
        assert!(cardy_halfplane(1e-12).unwrap() < 1e-3);
        assert!(cardy_halfplane(0.0).is_err() && cardy_halfplane(1.0).is_err());
    }
}
