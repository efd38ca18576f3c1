//! Uniform spanning trees by Wilson's algorithm, and the Peano curve
//! winding around a spanning tree of a rectangle.

use super::{Adjacency, LatticePath, Site};
use crate::error::{invalid, Result};
use crate::rng::rng_from_seed;
use rand::Rng;
use rustc_hash::FxHashMap;

/// A finite set of `Z^2` sites with nearest-neighbour edges.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionGraph {
    sites: Vec<Site>,
    neighbors: Vec<Vec<usize>>,
    index: FxHashMap<Site, usize>,
    rectangle: Option<(usize, usize)>,
}

impl RegionGraph {
    /// The induced 4-neighbour graph on `sites` (duplicates rejected).
    pub fn from_sites(sites: Vec<Site>) -> Result<Self> {
        let mut index = FxHashMap::default();
        for (i, &s) in sites.iter().enumerate() {
            if index.insert(s, i).is_some() {
                return invalid(format!("duplicate site {s:?}"));
            }
        }
        let neighbors = sites
            .iter()
            .map(|&(x, y)| {
                [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)].iter().filter_map(|q| index.get(q).copied()).collect()
            })
            .collect();
        Ok(RegionGraph { sites, neighbors, index, rectangle: None })
    }

    /// The `width x height` block of sites `[0, width) x [0, height)`, in
    /// row-major order.
    pub fn grid(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return invalid("grid dimensions must be positive");
        }
        let sites = (0..height).flat_map(|y| (0..width).map(move |x| (x as i32, y as i32))).collect();
        let mut g = Self::from_sites(sites)?;
        g.rectangle = Some((width, height));
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn site(&self, v: usize) -> Site {
        self.sites[v]
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn index_of(&self, s: Site) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// `(width, height)` for graphs built by [`RegionGraph::grid`].
    pub fn rectangle(&self) -> Option<(usize, usize)> {
        self.rectangle
    }

    /// Whether some `target` vertex is reachable from `start`.
    pub fn reaches(&self, start: usize, target: &[bool]) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            if target[v] {
                return true;
            }
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Vertices from which no root is reachable.
    fn cut_off_from(&self, roots: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = roots.to_vec();
        for &r in roots {
            seen[r] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.len()).filter(|&v| !seen[v]).collect()
    }
}

/// A spanning forest oriented toward its roots; a tree when there is a
/// single root.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree {
    pub graph: RegionGraph,
    /// `parent[v]` is the next vertex toward the root, `None` at roots.
    pub parent: Vec<Option<usize>>,
}

impl SpanningTree {
    pub fn roots(&self) -> Vec<usize> {
        (0..self.parent.len()).filter(|&v| self.parent[v].is_none()).collect()
    }

    /// Undirected edges `(child, parent)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (v, p))).collect()
    }

    /// Vertices from `v` up to its root.
    pub fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut u = v;
        while let Some(p) = self.parent[u] {
            path.push(p);
            u = p;
            if path.len() > self.parent.len() {
                break;
            }
        }
        path
    }

    /// Checks that edges are graph edges and every vertex reaches a root
    /// without cycles.
    pub fn validate(&self) -> Result<()> {
        if self.parent.len() != self.graph.len() {
            return invalid("parent table does not match the graph");
        }
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                if !self.graph.neighbors(v).contains(&p) {
                    return invalid(format!("edge {v} -> {p} is not in the graph"));
                }
            }
        }
        // 0 = unknown, 1 = on the current chain, 2 = reaches a root.
        let mut state = vec![0u8; self.parent.len()];
        for v in 0..self.parent.len() {
            let mut chain = Vec::new();
            let mut u = v;
            loop {
                match state[u] {
                    2 => break,
                    1 => return invalid(format!("cycle through vertex {u}")),
                    _ => {}
                }
                state[u] = 1;
                chain.push(u);
                match self.parent[u] {
                    Some(p) => u = p,
                    None => break,
                }
            }
            for c in chain {
                state[c] = 2;
            }
        }
        Ok(())
    }
}

/// Uniform spanning forest of `graph` rooted at `roots` (a uniform spanning
/// tree of the graph with the roots wired together), by Wilson's algorithm:
/// vertices are attached in index order by loop-erased walks.
pub fn wilson_ust(graph: &RegionGraph, roots: &[usize], seed: u64) -> Result<SpanningTree> {
    if roots.is_empty() {
        return invalid("at least one root is required");
    }
    if let Some(&r) = roots.iter().find(|&&r| r >= graph.len()) {
        return invalid(format!("root {r} is not a vertex"));
    }
    let cut = graph.cut_off_from(roots);
    if !cut.is_empty() {
        return invalid(format!("region is disconnected: {} vertices cannot reach a root", cut.len()));
    }
    let n = graph.len();
    let mut rng = rng_from_seed(seed);
    let mut in_tree = vec![false; n];
    for &r in roots {
        in_tree[r] = true;
    }
    let mut next = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    for start in 0..n {
        let mut u = start;
        while !in_tree[u] {
            let nb = graph.neighbors(u);
            next[u] = nb[rng.random_range(0..nb.len())];
            u = next[u];
        }
        u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            parent[u] = Some(next[u]);
            u = next[u];
        }
    }
    Ok(SpanningTree { graph: graph.clone(), parent })
}

/// Contour of a spanning tree of a `w x h` rectangle.
///
/// Each site `(i, j)` becomes the unit square at `(2i, 2j)` of a doubled
/// grid, and each tree edge the square between its endpoints. The union is a
/// tree-shaped polyomino whose boundary passes once through every vertex of
/// `[0, 2w - 1] x [0, 2h - 1]`. The returned path starts at `(0, 0)`, leaves
/// toward `(1, 0)` and stops one step before closing the loop.
pub fn ust_peano_curve(tree: &SpanningTree) -> Result<LatticePath> {
    tree.validate()?;
    let (w, h) = match tree.graph.rectangle() {
        Some(dims) => dims,
        None => return invalid("the Peano curve needs a rectangular region"),
    };
    if tree.roots().len() != 1 {
        return invalid("input is a forest, not a spanning tree");
    }
    let (sw, sh) = (2 * w - 1, 2 * h - 1);
    let mut filled = vec![false; sw * sh];
    for v in 0..tree.graph.len() {
        let (i, j) = tree.graph.site(v);
        filled[2 * i as usize + 2 * j as usize * sw] = true;
    }
    for (a, b) in tree.edges() {
        let (pa, pb) = (tree.graph.site(a), tree.graph.site(b));
        let (x, y) = ((pa.0 + pb.0) as usize, (pa.1 + pb.1) as usize);
        filled[x + y * sw] = true;
    }
    let square = |x: i64, y: i64| x >= 0 && y >= 0 && (x as usize) < sw && (y as usize) < sh && filled[x as usize + y as usize * sw];
    let boundary_step = |p: (i64, i64), q: (i64, i64)| -> bool {
        if q.0 < 0 || q.1 < 0 || q.0 > sw as i64 || q.1 > sh as i64 {
            return false;
        }
        if p.1 == q.1 {
            let x = p.0.min(q.0);
            square(x, p.1 - 1) != square(x, p.1)
        } else {
            let y = p.1.min(q.1);
            square(p.0 - 1, y) != square(p.0, y)
        }
    };

    let total = 4 * w * h;
    let mut points: Vec<Site> = Vec::with_capacity(total);
    let mut prev = (0i64, 0i64);
    let mut cur = (1i64, 0i64);
    points.push((0, 0));
    while cur != (0, 0) {
        points.push((cur.0 as i32, cur.1 as i32));
        if points.len() > total {
            return invalid("contour does not close");
        }
        let nxt = [(1, 0), (0, 1), (-1, 0), (0, -1)]
            .iter()
            .map(|d| (cur.0 + d.0, cur.1 + d.1))
            .find(|&q| q != prev && boundary_step(cur, q));
        match nxt {
            Some(q) => {
                prev = cur;
                cur = q;
            }
            None => return invalid("contour is broken"),
        }
    }
    if points.len() != total {
        return invalid(format!("contour visits {} of {} vertices", points.len(), total));
    }
    LatticePath::new(points, Adjacency::Square4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn path_graph_has_one_tree() {
        let g = RegionGraph::grid(6, 1).unwrap();
        for seed in 0..10 {
            let t = wilson_ust(&g, &[0], seed).unwrap();
            t.validate().unwrap();
            assert_eq!(t.parent, vec![None, Some(0), Some(1), Some(2), Some(3), Some(4)]);
        }
    }

    #[test]
    fn disconnected_region_is_rejected() {
        let g = RegionGraph::from_sites(vec![(0, 0), (1, 0), (5, 5)]).unwrap();
        assert!(wilson_ust(&g, &[0], 1).is_err());
        assert!(wilson_ust(&g, &[], 1).is_err());
        assert!(RegionGraph::from_sites(vec![(0, 0), (0, 0)]).is_err());
    }

    #[test]
    fn smallest_peano_curve() {
        let g = RegionGraph::grid(2, 1).unwrap();
        let t = wilson_ust(&g, &[0], 0).unwrap();
        let c = ust_peano_curve(&t).unwrap();
        assert_eq!(c.points, vec![(0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (2, 1), (1, 1), (0, 1)]);
    }

    #[test]
    fn peano_curve_counts_on_4x4_trees() {
        let g = RegionGraph::grid(4, 4).unwrap();
        let mut shapes = HashMap::new();
        for seed in 0..200 {
            let t = wilson_ust(&g, &[0], seed).unwrap();
            let c = ust_peano_curve(&t).unwrap();
            assert_eq!(c.points.len(), 64);
            assert_eq!(c.len(), 63);
            assert!(c.is_simple());
            *shapes.entry(c.points.clone()).or_insert(0) += 1;
        }
        assert!(shapes.len() > 100);
    }

    #[test]
    fn peano_rejects_forests_and_non_rectangles() {
        let g = RegionGraph::grid(3, 3).unwrap();
        let forest = wilson_ust(&g, &[0, 8], 1).unwrap();
        assert!(ust_peano_curve(&forest).is_err());
        let odd = RegionGraph::from_sites(vec![(0, 0), (1, 0), (1, 1)]).unwrap();
        assert!(ust_peano_curve(&wilson_ust(&odd, &[0], 1).unwrap()).is_err());
        let mut cyclic = wilson_ust(&g, &[0], 1).unwrap();
        cyclic.parent[0] = Some(1);
        cyclic.parent[1] = Some(0);
        assert!(cyclic.validate().is_err());
    }
}
