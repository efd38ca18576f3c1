//! Simple random walk on `Z^2` and its cut, frontier and pioneer points.

use super::{bounding_box, Adjacency, LatticePath, Site, UnionFind};
use crate::rng::rng_from_seed;
use rand::RngCore;

/// East, north, west, south.
pub const SQUARE_STEPS: [Site; 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// Endless stream of walk directions (indices into [`SQUARE_STEPS`]) for a
/// seed: two bits per step, low bits of each 64-bit word first.
pub fn srw_direction_stream(seed: u64) -> impl Iterator<Item = usize> {
    let mut rng = rng_from_seed(seed);
    std::iter::repeat_with(move || {
        let word = rng.next_u64();
        (0..32).map(move |i| ((word >> (2 * i)) & 3) as usize)
    })
    .flatten()
}

/// `n`-step simple random walk from the origin.
pub fn sample_srw(n: usize, seed: u64) -> LatticePath {
    let mut points = Vec::with_capacity(n + 1);
    let mut p = (0, 0);
    points.push(p);
    for d in srw_direction_stream(seed).take(n) {
        let (dx, dy) = SQUARE_STEPS[d];
        p = (p.0 + dx, p.1 + dy);
        points.push(p);
    }
    LatticePath { points, adjacency: Adjacency::Square4 }
}

/// Indices `k` such that no site is visited both before and after `k`.
/// The first and last index always qualify.
pub fn cut_times(path: &LatticePath) -> Vec<usize> {
    let n = path.points.len();
    if n == 0 {
        return Vec::new();
    }
    let mut cover = vec![0i64; n + 1];
    for v in path.visit_metadata().values() {
        if v.last >= v.first + 2 {
            cover[v.first + 1] += 1;
            cover[v.last] -= 1;
        }
    }
    let mut depth = 0;
    let mut cuts = Vec::new();
    for (k, c) in cover.iter().take(n).enumerate() {
        depth += c;
        if depth == 0 {
            cuts.push(k);
        }
    }
    cuts
}

/// Dense grid over the bounding box of a path, padded by one cell.
struct Grid {
    x0: i32,
    y0: i32,
    width: usize,
    height: usize,
}

impl Grid {
    fn around(points: &[Site]) -> Self {
        let (xa, ya, xb, yb) = bounding_box(points);
        Grid { x0: xa - 1, y0: ya - 1, width: (xb - xa + 3) as usize, height: (yb - ya + 3) as usize }
    }

    fn len(&self) -> usize {
        self.width * self.height
    }

    fn index(&self, p: Site) -> usize {
        (p.0 - self.x0) as usize + (p.1 - self.y0) as usize * self.width
    }

    fn site(&self, i: usize) -> Site {
        ((i % self.width) as i32 + self.x0, (i / self.width) as i32 + self.y0)
    }

    /// 4-neighbours inside the grid.
    fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> {
        let (x, y) = (i % self.width, i / self.width);
        let (w, h) = (self.width, self.height);
        [
            (x + 1 < w).then(|| i + 1),
            (x > 0).then(|| i - 1),
            (y + 1 < h).then(|| i + w),
            (y > 0).then(|| i - w),
        ]
        .into_iter()
        .flatten()
    }
}

/// Visited sites 4-adjacent to the unbounded 4-connected component of
/// unvisited cells, sorted.
pub fn frontier_sites(path: &LatticePath) -> Vec<Site> {
    if path.points.is_empty() {
        return Vec::new();
    }
    let grid = Grid::around(&path.points);
    let mut visited = vec![false; grid.len()];
    for &p in &path.points {
        visited[grid.index(p)] = true;
    }
    let mut outside = vec![false; grid.len()];
    let mut stack = vec![0usize];
    outside[0] = true;
    while let Some(i) = stack.pop() {
        for j in grid.neighbors(i) {
            if !visited[j] && !outside[j] {
                outside[j] = true;
                stack.push(j);
            }
        }
    }
    let mut sites: Vec<Site> = (0..grid.len())
        .filter(|&i| visited[i] && grid.neighbors(i).any(|j| outside[j]))
        .map(|i| grid.site(i))
        .collect();
    sites.sort_unstable();
    sites
}

/// Indices `k` with `S_k` on the frontier of `S_0, ..., S_k`, sorted.
///
/// All indices are decided exactly by running time backwards: removing the
/// sites of the path in reverse order of first visit only ever adds cells to
/// the complement, so its connectivity is maintained with a union-find.
/// With `sample` given, only those indices are reported.
pub fn pioneer_times(path: &LatticePath, sample: Option<&[usize]>) -> Vec<usize> {
    let pts = &path.points;
    if pts.is_empty() {
        return Vec::new();
    }
    let grid = Grid::around(pts);
    let mut first = vec![u32::MAX; grid.len()];
    for (k, &p) in pts.iter().enumerate() {
        let i = grid.index(p);
        if first[i] == u32::MAX {
            first[i] = k as u32;
        }
    }
    let mut open: Vec<bool> = first.iter().map(|&f| f == u32::MAX).collect();
    let mut uf = UnionFind::new(grid.len());
    for i in 0..grid.len() {
        if open[i] {
            for j in [i + 1, i + grid.width] {
                if j < grid.len() && open[j] && (j != i + 1 || (i + 1) % grid.width != 0) {
                    uf.union(i, j);
                }
            }
        }
    }
    let mut pioneer = vec![false; pts.len()];
    for k in (0..pts.len()).rev() {
        let i = grid.index(pts[k]);
        let exterior = uf.find(0);
        pioneer[k] = grid.neighbors(i).any(|j| open[j] && uf.find(j) == exterior);
        if first[i] as usize == k {
            open[i] = true;
            let nb: Vec<usize> = grid.neighbors(i).filter(|&j| open[j]).collect();
            for j in nb {
                uf.union(i, j);
            }
        }
    }
    match sample {
        Some(ks) => {
            let mut out: Vec<usize> = ks.iter().copied().filter(|&k| k < pts.len() && pioneer[k]).collect();
            out.sort_unstable();
            out.dedup();
            out
        }
        None => (0..pts.len()).filter(|&k| pioneer[k]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    fn walk(moves: &str) -> LatticePath {
        let mut p = (0, 0);
        let mut points = vec![p];
        for c in moves.chars() {
            let d = match c {
                'E' => (1, 0),
                'N' => (0, 1),
                'W' => (-1, 0),
                'S' => (0, -1),
                _ => panic!(),
            };
            p = (p.0 + d.0, p.1 + d.1);
            points.push(p);
        }
        LatticePath::new(points, Adjacency::Square4).unwrap()
    }

    /// Quadratic oracle straight from the definition.
    fn brute_cut_times(path: &LatticePath) -> Vec<usize> {
        let pts = &path.points;
        (0..pts.len())
            .filter(|&k| {
                let before: HashSet<_> = pts[..k].iter().collect();
                !pts[k + 1..].iter().any(|p| before.contains(p))
            })
            .collect()
    }

    /// Frontier by a separate breadth-first fill on a hash set.
    fn oracle_frontier(points: &[Site]) -> BTreeSet<Site> {
        let visited: HashSet<Site> = points.iter().copied().collect();
        let (xa, ya, xb, yb) = bounding_box(points);
        let inside = |p: Site| p.0 >= xa - 1 && p.0 <= xb + 1 && p.1 >= ya - 1 && p.1 <= yb + 1;
        let mut outside = HashSet::new();
        let mut queue = std::collections::VecDeque::from([(xa - 1, ya - 1)]);
        outside.insert((xa - 1, ya - 1));
        while let Some(p) = queue.pop_front() {
            for d in SQUARE_STEPS {
                let q = (p.0 + d.0, p.1 + d.1);
                if inside(q) && !visited.contains(&q) && outside.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        visited
            .into_iter()
            .filter(|p| SQUARE_STEPS.iter().any(|d| outside.contains(&(p.0 + d.0, p.1 + d.1))))
            .collect()
    }

    #[test]
    fn srw_basics() {
        assert_eq!(sample_srw(0, 1).points, vec![(0, 0)]);
        let a = sample_srw(1000, 5);
        assert_eq!(a, sample_srw(1000, 5));
        assert_ne!(a, sample_srw(1000, 6));
        assert!(a.validate().is_ok());
        assert_eq!(a.len(), 1000);
    }

    #[test]
    fn cut_times_small_cases() {
        let straight = walk("EEEEE");
        assert_eq!(cut_times(&straight), (0..6).collect::<Vec<_>>());
        let looped = walk("ENWSE");
        assert_eq!(cut_times(&looped), brute_cut_times(&looped));
        assert_eq!(cut_times(&looped), vec![0, 5]);
        // Site (1, 0) is visited at times 2 and 8.
        let p = walk("EENNWSSEEE");
        assert_eq!(p.points[2], (2, 0));
        let cuts = cut_times(&p);
        assert!(cuts.iter().all(|k| !(3..=7).contains(k)));
        assert_eq!(cuts, brute_cut_times(&p));
    }

    #[test]
    fn cut_times_match_oracle_on_random_walks() {
        for seed in 0..20 {
            let p = sample_srw(400, seed);
            assert_eq!(cut_times(&p), brute_cut_times(&p));
        }
    }

    #[test]
    fn frontier_small_cases() {
        let straight = walk("EEEE");
        assert_eq!(frontier_sites(&straight).len(), 5);
        // Perimeter of a 5x5 block of sites.
        let ring = walk("EEEENNNNWWWWSSS");
        let f = frontier_sites(&ring);
        assert_eq!(f.len(), 16);
        assert_eq!(f.into_iter().collect::<BTreeSet<_>>(), ring.points.iter().copied().collect());
    }

    #[test]
    fn frontier_matches_second_implementation() {
        let p = sample_srw(10_000, 3);
        let f: BTreeSet<Site> = frontier_sites(&p).into_iter().collect();
        assert_eq!(f, oracle_frontier(&p.points));
    }

    #[test]
    fn pioneers_match_prefix_recomputation() {
        let p = sample_srw(1000, 8);
        let fast = pioneer_times(&p, None);
        let slow: Vec<usize> = (0..p.points.len())
            .filter(|&k| oracle_frontier(&p.points[..=k]).contains(&p.points[k]))
            .collect();
        assert_eq!(fast, slow);
        assert_eq!(pioneer_times(&walk("EEEE"), None), vec![0, 1, 2, 3, 4]);
        let sample = [0, 10, 500, 999, 5000];
        let sub = pioneer_times(&p, Some(&sample));
        assert!(sub.iter().all(|k| fast.contains(k) && sample.contains(k)));
    }

    #[test]
    fn frontier_sites_are_pioneer_sites() {
        for seed in 0..100 {
            let p = sample_srw(1000, seed);
            let pioneer_sites: HashSet<Site> = pioneer_times(&p, None).iter().map(|&k| p.points[k]).collect();
            let frontier = frontier_sites(&p);
            assert!(frontier.iter().all(|s| pioneer_sites.contains(s)));
        }
    }

    #[test]
    fn a_cut_site_can_be_enclosed_by_the_future() {
        // The path after time 1 encircles both earlier sites without
        // touching (0, 0), so time 1 is a cut time at a site that is visited
        // once yet has no unvisited neighbour.
        let p = walk("EENWWWSSEE");
        assert!(cut_times(&p).contains(&1));
        assert_eq!(p.points[1], (1, 0));
        assert!(!frontier_sites(&p).contains(&(1, 0)));
    }
}
