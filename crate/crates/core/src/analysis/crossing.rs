//! Monte Carlo crossing probabilities for critical site percolation.

use super::Estimate;
use crate::error::{invalid, Result};
use crate::lattice::{white_crossing, LazyColoring, Region, Site};
use crate::rng::derive_trial_seed;

/// A domain with two marked boundary arcs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrossingDomain {
    /// Equilateral triangle with Carleson's arcs at fraction `x`.
    CarlesonTriangle { x: f64 },
    /// 60-degree rhombus between its left and right sides: a conformal
    /// rectangle of modulus 1.
    ConformalSquare,
}

/// A lattice realisation of a [`CrossingDomain`] at a given mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingSetup {
    pub region: Region,
    pub arc1: Vec<Site>,
    pub arc2: Vec<Site>,
}

impl CrossingSetup {
    /// `mesh` is the number of sites per unit side length.
    pub fn new(domain: CrossingDomain, mesh: u32) -> Result<Self> {
        if mesh < 2 {
            return invalid("mesh must be at least 2 sites per side");
        }
        match domain {
            CrossingDomain::CarlesonTriangle { x } => {
                let region = Region::Triangle { side: mesh };
                let [(_, arc1), (_, arc2)] = region.carleson_arcs(x)?;
                Ok(CrossingSetup { region, arc1, arc2 })
            }
            CrossingDomain::ConformalSquare => {
                let region = Region::Rhombus { side: mesh };
                let s = mesh as i32;
                Ok(CrossingSetup {
                    region,
                    arc1: (0..s).map(|r| (0, r)).collect(),
                    arc2: (0..s).map(|r| (s - 1, r)).collect(),
                })
            }
        }
    }

    /// Whether the colouring drawn from `seed` has a white crossing.
    pub fn trial(&self, seed: u64) -> bool {
        white_crossing(&LazyColoring { region: self.region, seed }, &self.arc1, &self.arc2)
    }
}

/// Fraction of `trials` independent colourings with a white crossing
/// between the two arcs, with a Wilson 95% interval. Trial `i` uses seed
/// `derive_trial_seed(seed, i)`.
pub fn crossing_probability_mc(domain: CrossingDomain, mesh: u32, trials: usize, seed: u64) -> Result<Estimate> {
    if trials < 100 {
        return invalid(format!("at least 100 trials are required, got {trials}"));
    }
    let setup = CrossingSetup::new(domain, mesh)?;
    let hits = (0..trials).filter(|&i| setup.trial(derive_trial_seed(seed, i as u64))).count();
    Estimate::proportion(hits, trials)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_arc_is_rejected() {
        assert!(crossing_probability_mc(CrossingDomain::CarlesonTriangle { x: 0.0 }, 50, 100, 1).is_err());
        assert!(crossing_probability_mc(CrossingDomain::ConformalSquare, 50, 10, 1).is_err());
    }

    #[test]
    fn small_runs_are_reproducible_and_sensible() {
        let a = crossing_probability_mc(CrossingDomain::CarlesonTriangle { x: 0.5 }, 30, 400, 9).unwrap();
        assert_eq!(a, crossing_probability_mc(CrossingDomain::CarlesonTriangle { x: 0.5 }, 30, 400, 9).unwrap());
        assert!(a.ci_lo < 0.5 + 0.1 && a.ci_hi > 0.5 - 0.1, "{a:?}");
        let full = crossing_probability_mc(CrossingDomain::CarlesonTriangle { x: 1.0 }, 30, 200, 9).unwrap();
        assert!(full.value > 0.9);
    }
}
