//! Loop erasure and loop-erased random walks.

use super::ust::RegionGraph;
use super::walk::{srw_direction_stream, SQUARE_STEPS};
use super::{Adjacency, LatticePath, Site};
use crate::error::{invalid, Result};
use crate::rng::rng_from_seed;
use rand::Rng;
use rustc_hash::FxHashMap;

/// Chronological loop erasure: walk the path and, whenever a site repeats,
/// cut the loop back to its earlier occurrence.
pub fn loop_erase(path: &LatticePath) -> LatticePath {
    LatticePath { points: erase_loops(&path.points), adjacency: path.adjacency }
}

fn erase_loops<T: Copy + Eq + std::hash::Hash>(seq: &[T]) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    let mut position: FxHashMap<T, usize> = FxHashMap::default();
    for &p in seq {
        if let Some(&i) = position.get(&p) {
            for q in out.drain(i + 1..) {
                position.remove(&q);
            }
        } else {
            position.insert(p, out.len());
            out.push(p);
        }
    }
    out
}

/// Simple random walk from the origin stopped at the first site with
/// `x^2 + y^2 >= r^2`.
pub fn stopped_srw(r: u32, seed: u64) -> Result<LatticePath> {
    if r < 2 {
        return invalid(format!("radius must be at least 2, got {r}"));
    }
    let r2 = (r as i64) * (r as i64);
    let mut p: Site = (0, 0);
    let mut points = vec![p];
    for d in srw_direction_stream(seed) {
        let (dx, dy) = SQUARE_STEPS[d];
        p = (p.0 + dx, p.1 + dy);
        points.push(p);
        if (p.0 as i64).pow(2) + (p.1 as i64).pow(2) >= r2 {
            break;
        }
    }
    Ok(LatticePath { points, adjacency: Adjacency::Square4 })
}

/// Loop-erased random walk from the origin to the exterior of the disk of
/// radius `r`.
pub fn lerw_sample(r: u32, seed: u64) -> Result<LatticePath> {
    Ok(loop_erase(&stopped_srw(r, seed)?))
}

/// Loop-erased walk on a region graph from `start` until it reaches a vertex
/// with `target[v]`. Returns the vertex indices.
pub fn graph_lerw(graph: &RegionGraph, start: usize, target: &[bool], seed: u64) -> Result<Vec<usize>> {
    if target.len() != graph.len() || start >= graph.len() {
        return invalid("target mask or start does not match the graph");
    }
    if !graph.reaches(start, target) {
        return invalid("no target vertex is reachable from the start");
    }
    let mut rng = rng_from_seed(seed);
    let mut v = start;
    let mut walk = vec![v];
    while !target[v] {
        let nb = graph.neighbors(v);
        if nb.is_empty() {
            return invalid("walk is stuck at an isolated vertex");
        }
        v = nb[rng.random_range(0..nb.len())];
        walk.push(v);
    }
    Ok(erase_loops(&walk))
}
