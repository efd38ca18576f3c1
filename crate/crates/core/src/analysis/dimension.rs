//! Box-counting dimension of planar point sets.

use crate::error::{invalid, Result};
use rustc_hash::FxHashSet;

/// Slope of `log N(eps)` against `log(1/eps)` over a window of box sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionEstimate {
    pub value: f64,
    pub stderr: f64,
    /// Box sizes used in the fit, largest first.
    pub scales_used: Vec<f64>,
    /// Occupied boxes at each size in `scales_used`.
    pub counts: Vec<usize>,
}

/// Ordinary least squares of `y` on `x`: slope, slope standard error and
/// intercept.
pub(crate) fn least_squares(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let stderr = if x.len() > 2 { (rss / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    (slope, stderr, intercept)
}

fn extent(points: &[[f64; 2]]) -> ([f64; 2], f64) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    (lo, (hi[0] - lo[0]).hypot(hi[1] - lo[1]))
}

/// Number of grid boxes of side `eps` (anchored at `origin`) that contain a
/// point.
pub fn occupied_boxes(points: &[[f64; 2]], origin: [f64; 2], eps: f64) -> usize {
    let set: FxHashSet<(i64, i64)> = points
        .iter()
        .map(|p| (((p[0] - origin[0]) / eps).floor() as i64, ((p[1] - origin[1]) / eps).floor() as i64))
        .collect();
    set.len()
}

/// Box-counting dimension using dyadic box sizes from a quarter of the
/// diameter down to `4 * resolution`. The largest and smallest of those are
/// dropped before fitting when at least four sizes remain afterwards. `resolution` is the lattice spacing or the typical
/// gap between consecutive trace points.
pub fn box_counting_dimension(points: &[[f64; 2]], resolution: f64) -> Result<DimensionEstimate> {
    if !(resolution > 0.0 && resolution.is_finite()) {
        return invalid("resolution must be positive");
    }
    if points.len() < 100 {
        return invalid(format!("box counting needs at least 100 points, got {}", points.len()));
    }
    let (_, diameter) = extent(points);
    let mut scales = Vec::new();
    let mut eps = diameter / 4.0;
    while eps >= 4.0 * resolution {
        scales.push(eps);
        eps /= 2.0;
    }
    if scales.len() < 4 {
        return invalid(format!("only {} dyadic scales between diameter/4 and 4 x resolution; need 4", scales.len()));
    }
    if scales.len() >= 6 {
        scales.remove(0);
        scales.pop();
    }
    box_counting_at_scales(points, &scales)
}

/// Box-counting dimension over explicitly chosen box sizes (at least 4).
pub fn box_counting_at_scales(points: &[[f64; 2]], scales: &[f64]) -> Result<DimensionEstimate> {
    if points.len() < 100 {
        return invalid(format!("box counting needs at least 100 points, got {}", points.len()));
    }
    if scales.len() < 4 || scales.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
        return invalid("need at least 4 positive box sizes");
    }
    if points.iter().any(|p| !(p[0].is_finite() && p[1].is_finite())) {
        return invalid("points must be finite");
    }
    let mut scales_used = scales.to_vec();
    scales_used.sort_by(|a, b| b.total_cmp(a));
    let (origin, _) = extent(points);
    let counts: Vec<usize> = scales_used.iter().map(|&e| occupied_boxes(points, origin, e)).collect();
    let x: Vec<f64> = scales_used.iter().map(|e| -e.ln()).collect();
    let y: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let (value, stderr, _) = least_squares(&x, &y);
    Ok(DimensionEstimate { value, stderr, scales_used, counts })
}

/// Lattice sites as planar points.
pub fn site_points(sites: impl IntoIterator<Item = (i32, i32)>) -> Vec<[f64; 2]> {
    sites.into_iter().map(|(x, y)| [x as f64, y as f64]).collect()
}
