//! Lattice models: random walks and their exceptional points, site
//! percolation on the triangular lattice, loop-erased walks, uniform
//! spanning trees and their Peano curves.

mod lerw;
mod percolation;
mod text;
mod union_find;
mod ust;
mod walk;

pub use lerw::{graph_lerw, lerw_sample, loop_erase, stopped_srw};
pub use percolation::{
    cluster_crossing, exploration_path, percolation_sample, Coloring, Corner, Exploration, LazyColoring, Region, RhombusSide,
    SiteColoring,
};
pub(crate) use percolation::white_crossing;
pub use text::{parse_coloring, parse_path, write_coloring, write_path};
pub use union_find::UnionFind;
pub use ust::{ust_peano_curve, wilson_ust, RegionGraph, SpanningTree};
pub use walk::{cut_times, frontier_sites, pioneer_times, sample_srw, srw_direction_stream, SQUARE_STEPS};

use crate::error::{invalid, Result};
use rustc_hash::FxHashMap;

/// Integer lattice point. Square-lattice sites use Cartesian coordinates,
/// triangular-lattice sites axial coordinates `(q, r)`.
pub type Site = (i32, i32);

/// Neighbour structure of a path's vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Adjacency {
    /// `Z^2` with the four unit steps.
    Square4,
    /// Triangular lattice in axial coordinates, six neighbours.
    Triangular6,
    /// Hexagonal lattice; a vertex is a triangular face labelled by the sum
    /// of its three axial sites.
    Hexagonal,
}

pub const TRIANGULAR_STEPS: [Site; 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];
const HEXAGONAL_STEPS: [Site; 6] = [(1, 1), (-1, -1), (-2, 1), (2, -1), (1, -2), (-1, 2)];

impl Adjacency {
    pub fn name(self) -> &'static str {
        match self {
            Adjacency::Square4 => "square4",
            Adjacency::Triangular6 => "triangular6",
            Adjacency::Hexagonal => "hexagonal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "square4" => Some(Adjacency::Square4),
            "triangular6" => Some(Adjacency::Triangular6),
            "hexagonal" => Some(Adjacency::Hexagonal),
            _ => None,
        }
    }

    pub fn steps(self) -> &'static [Site] {
        match self {
            Adjacency::Square4 => &SQUARE_STEPS,
            Adjacency::Triangular6 => &TRIANGULAR_STEPS,
            Adjacency::Hexagonal => &HEXAGONAL_STEPS,
        }
    }

    pub fn are_neighbors(self, a: Site, b: Site) -> bool {
        let d = (b.0 - a.0, b.1 - a.1);
        self.steps().contains(&d)
    }
}

/// A nearest-neighbour path of lattice sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    pub points: Vec<Site>,
    pub adjacency: Adjacency,
}

/// First and last visit index of a site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Visits {
    pub first: usize,
    pub last: usize,
}

impl LatticePath {
    /// Checks that consecutive points are neighbours.
    pub fn new(points: Vec<Site>, adjacency: Adjacency) -> Result<Self> {
        let path = LatticePath { points, adjacency };
        path.validate()?;
        Ok(path)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(i) = self.points.windows(2).position(|w| !self.adjacency.are_neighbors(w[0], w[1])) {
            return invalid(format!(
                "points {} and {} ({:?}, {:?}) are not {} neighbours",
                i,
                i + 1,
                self.points[i],
                self.points[i + 1],
                self.adjacency.name()
            ));
        }
        Ok(())
    }

    /// Number of steps (points minus one).
    pub fn len(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.points.len() <= 1
    }

    pub fn first(&self) -> Option<Site> {
        self.points.first().copied()
    }

    pub fn last(&self) -> Option<Site> {
        self.points.last().copied()
    }

    /// First and last visit index of every visited site.
    pub fn visit_metadata(&self) -> FxHashMap<Site, Visits> {
        let mut map: FxHashMap<Site, Visits> = FxHashMap::default();
        for (k, &p) in self.points.iter().enumerate() {
            map.entry(p).and_modify(|v| v.last = k).or_insert(Visits { first: k, last: k });
        }
        map
    }

    /// Whether no site is visited twice.
    pub fn is_simple(&self) -> bool {
        self.visit_metadata().len() == self.points.len()
    }

    /// Sites in order of first visit.
    pub fn distinct_sites(&self) -> Vec<Site> {
        let mut seen = rustc_hash::FxHashSet::default();
        self.points.iter().copied().filter(|p| seen.insert(*p)).collect()
    }
}

/// Bounding box `(xmin, ymin, xmax, ymax)` of a nonempty point list.
pub(crate) fn bounding_box(points: &[Site]) -> (i32, i32, i32, i32) {
    points.iter().fold((i32::MAX, i32::MAX, i32::MIN, i32::MIN), |(a, b, c, d), &(x, y)| {
        (a.min(x), b.min(y), c.max(x), d.max(y))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_validation() {
        assert!(LatticePath::new(vec![(0, 0), (1, 0), (1, 1)], Adjacency::Square4).is_ok());
        assert!(LatticePath::new(vec![(0, 0), (1, 1)], Adjacency::Square4).is_err());
        assert!(LatticePath::new(vec![(0, 0), (1, -1)], Adjacency::Triangular6).is_ok());
        assert!(LatticePath::new(vec![(1, 1), (2, 2), (0, 3)], Adjacency::Hexagonal).is_ok());
        assert!(LatticePath::new(vec![], Adjacency::Square4).unwrap().is_empty());
    }

    #[test]
    fn metadata_replays() {
        let p = LatticePath::new(vec![(0, 0), (1, 0), (0, 0), (0, 1)], Adjacency::Square4).unwrap();
        let m = p.visit_metadata();
        assert_eq!(m[&(0, 0)], Visits { first: 0, last: 2 });
        assert_eq!(m[&(0, 1)], Visits { first: 3, last: 3 });
        assert!(!p.is_simple());
        assert_eq!(p.distinct_sites(), vec![(0, 0), (1, 0), (0, 1)]);
    }
}
