//! Estimators: dimensions, exponents, crossing probabilities and
//! distribution tests.

mod cardy;
mod crossing;
mod dimension;
mod estimate;
mod fit;
mod nonintersection;
mod tests;

pub use cardy::{cardy_halfplane, cardy_triangle};
pub use crossing::{crossing_probability_mc, CrossingDomain, CrossingSetup};
pub use dimension::{box_counting_at_scales, box_counting_dimension, occupied_boxes, site_points, DimensionEstimate};
pub use estimate::{wilson_interval, Estimate, Z95};
pub use fit::{power_law_fit, ExponentEstimate, ExponentName};
pub use nonintersection::{first_meeting, nonintersection_curve, nonintersection_probability};
pub use tests::{chi_square_gof, chi_square_homogeneity, ks_two_sample, ChiSquare};
