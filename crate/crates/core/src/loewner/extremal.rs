//! Extremal distance between two boundary arcs of a polygon, computed as an
//! effective resistance on a rasterised grid.

use super::{check_finite, C64};
use crate::error::{invalid, Result};

/// Default number of grid cells across the polygon diameter.
pub const DEFAULT_RESOLUTION: usize = 256;

/// Simple polygon given by its vertices in boundary order (either
/// orientation). The closing edge from the last vertex to the first is
/// implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<C64>,
}

impl Polygon {
    pub fn new(vertices: Vec<C64>) -> Result<Self> {
        if vertices.len() < 3 {
            return invalid("polygon needs at least three vertices");
        }
        for &v in &vertices {
            check_finite(v)?;
        }
        let p = Polygon { vertices };
        if p.signed_area().abs() < 1e-300 {
            return invalid("polygon is degenerate");
        }
        Ok(p)
    }

    /// Axis-parallel rectangle `[x0, x1] x [y0, y1]`, counter-clockwise
    /// from the lower-left corner.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Self::new(vec![C64::new(x0, y0), C64::new(x1, y0), C64::new(x1, y1), C64::new(x0, y1)])
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    /// Number of edges, which is also the period of the boundary parameter.
    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    fn edge(&self, i: usize) -> (C64, C64) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = self.edge(i);
                a.re * b.im - b.re * a.im
            })
            .sum::<f64>()
            / 2.0
    }

    /// Boundary point at parameter `s`: `floor(s)` selects the edge and
    /// the fractional part the position along it.
    pub fn boundary_point(&self, s: f64) -> C64 {
        let n = self.vertices.len() as f64;
        let s = s.rem_euclid(n);
        let i = s.floor() as usize;
        let (a, b) = self.edge(i);
        a + (b - a) * (s - i as f64)
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.vertices.iter().map(|v| v * factor).collect())
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    /// Even-odd point-in-polygon test.
    pub fn contains(&self, p: C64) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        for i in 0..n {
            let (a, b) = self.edge(i);
            if (a.im > p.im) != (b.im > p.im) {
                let x = a.re + (p.im - a.im) / (b.im - a.im) * (b.re - a.re);
                if p.re < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// First boundary crossing of the segment `p -> q`, returned as the
    /// fraction along the segment and the boundary parameter.
    fn first_crossing(&self, p: C64, q: C64) -> Option<(f64, f64)> {
        let d = q - p;
        let mut best: Option<(f64, f64)> = None;
        for i in 0..self.vertices.len() {
            let (a, b) = self.edge(i);
            let e = b - a;
            let denom = d.re * e.im - d.im * e.re;
            if denom.abs() < 1e-300 {
                continue;
            }
            let w = a - p;
            let t = (w.re * e.im - w.im * e.re) / denom;
            let u = (w.re * d.im - w.im * d.re) / denom;
            if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) && best.is_none_or(|(bt, _)| t < bt) {
                best = Some((t, i as f64 + u.min(1.0 - 1e-12)));
            }
        }
        best
    }
}

/// A closed interval of the boundary parameter of a [`Polygon`], running in
/// vertex order from `start` to `end` and wrapping past the last vertex when
/// `end < start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryArc {
    pub start: f64,
    pub end: f64,
}

impl BoundaryArc {
    pub fn new(start: f64, end: f64) -> Self {
        BoundaryArc { start, end }
    }

    /// The whole edge `i` of the polygon.
    pub fn edge(i: usize) -> Self {
        BoundaryArc { start: i as f64, end: (i + 1) as f64 }
    }

    fn validate(&self, n: f64) -> Result<()> {
        if !(self.start.is_finite() && self.end.is_finite()) {
            return invalid("arc endpoints must be finite");
        }
        if !(0.0..=n).contains(&self.start) || !(0.0..=n).contains(&self.end) {
            return invalid(format!("arc endpoints must lie in [0, {n}]"));
        }
        if self.start == self.end {
            return invalid("arc is degenerate");
        }
        Ok(())
    }

    /// Pieces of the arc as ordinary intervals inside `[0, n]`.
    fn pieces(&self, n: f64) -> Vec<(f64, f64)> {
        if self.start < self.end {
            vec![(self.start, self.end)]
        } else {
            vec![(self.start, n), (0.0, self.end)]
        }
    }

    fn contains(&self, s: f64, n: f64) -> bool {
        self.pieces(n).iter().any(|&(a, b)| a <= s && s <= b)
    }
}

/// Extremal distance `L` such that the polygon maps conformally onto
/// `[0, L] x [0, pi]` with `arc1` and `arc2` going to the vertical sides.
pub fn pi_extremal_distance(domain: &Polygon, arc1: BoundaryArc, arc2: BoundaryArc) -> Result<f64> {
    pi_extremal_distance_with_resolution(domain, arc1, arc2, DEFAULT_RESOLUTION)
}

/// [`pi_extremal_distance`] with an explicit grid resolution (cells across
/// the diameter).
pub fn pi_extremal_distance_with_resolution(
    domain: &Polygon,
    arc1: BoundaryArc,
    arc2: BoundaryArc,
    resolution: usize,
) -> Result<f64> {
    let n = domain.edge_count() as f64;
    arc1.validate(n)?;
    arc2.validate(n)?;
    let overlap: f64 = arc1
        .pieces(n)
        .iter()
        .flat_map(|&(a, b)| arc2.pieces(n).into_iter().map(move |(c, d)| (b.min(d) - a.max(c)).max(0.0)))
        .sum();
    if overlap > 0.0 {
        return invalid("boundary arcs overlap");
    }
    if resolution < 4 {
        return invalid("resolution must be at least 4");
    }
    let energy = dirichlet_energy(domain, arc1, arc2, resolution);
    if energy <= 0.0 {
        return invalid("arcs are not connected through the domain");
    }
    Ok(std::f64::consts::PI / energy)
}

#[derive(Clone, Copy)]
enum Link {
    Cell(usize),
    Fixed(f64),
}

fn dirichlet_energy(domain: &Polygon, arc1: BoundaryArc, arc2: BoundaryArc, resolution: usize) -> f64 {
    let n = domain.edge_count() as f64;
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in domain.vertices() {
        x0 = x0.min(v.re);
        x1 = x1.max(v.re);
        y0 = y0.min(v.im);
        y1 = y1.max(v.im);
    }
    let h = domain.diameter() / resolution as f64;
    let nx = ((x1 - x0) / h).round().max(1.0) as usize;
    let ny = ((y1 - y0) / h).round().max(1.0) as usize;
    let hx = (x1 - x0) / nx as f64;
    let hy = (y1 - y0) / ny as f64;
    let center = |i: isize, j: isize| C64::new(x0 + (i as f64 + 0.5) * hx, y0 + (j as f64 + 0.5) * hy);

    let mut index = vec![usize::MAX; nx * ny];
    let mut cells = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            if domain.contains(center(i as isize, j as isize)) {
                index[j * nx + i] = cells.len();
                cells.push((i as isize, j as isize));
            }
        }
    }

    // Adjacency with conductances.
    let mut links: Vec<Vec<(Link, f64)>> = vec![Vec::with_capacity(4); cells.len()];
    for (k, &(i, j)) in cells.iter().enumerate() {
        let p = center(i, j);
        for (di, dj, g) in [(1, 0, hy / hx), (-1, 0, hy / hx), (0, 1, hx / hy), (0, -1, hx / hy)] {
            let (a, b) = (i + di, j + dj);
            let q = center(a, b);
            let inside = a >= 0 && b >= 0 && (a as usize) < nx && (b as usize) < ny;
            let neighbour = if inside { index[b as usize * nx + a as usize] } else { usize::MAX };
            match domain.first_crossing(p, q) {
                None if neighbour != usize::MAX => links[k].push((Link::Cell(neighbour), g)),
                None => {}
                Some((t, s)) => {
                    let value = if arc1.contains(s, n) {
                        0.0
                    } else if arc2.contains(s, n) {
                        1.0
                    } else {
                        continue;
                    };
                    links[k].push((Link::Fixed(value), g / t.max(0.25)));
                }
            }
        }
    }

    let potential = solve(&links);
    let mut energy = 0.0;
    for (k, row) in links.iter().enumerate() {
        for &(link, g) in row {
            match link {
                Link::Cell(m) if m > k => energy += g * (potential[k] - potential[m]).powi(2),
                Link::Fixed(v) => energy += g * (potential[k] - v).powi(2),
                _ => {}
            }
        }
    }
    energy
}

/// Jacobi-preconditioned conjugate gradients on the grid Laplacian. Cells in
/// components with no fixed link are held at zero; they carry no energy.
fn solve(links: &[Vec<(Link, f64)>]) -> Vec<f64> {
    let m = links.len();
    let mut active = vec![false; m];
    let mut stack: Vec<usize> = (0..m).filter(|&k| links[k].iter().any(|(l, _)| matches!(l, Link::Fixed(_)))).collect();
    for &k in &stack {
        active[k] = true;
    }
    while let Some(k) = stack.pop() {
        for &(l, _) in &links[k] {
            if let Link::Cell(j) = l {
                if !active[j] {
                    active[j] = true;
                    stack.push(j);
                }
            }
        }
    }

    let diag: Vec<f64> = links.iter().map(|row| row.iter().map(|&(_, g)| g).sum()).collect();
    let rhs: Vec<f64> = links
        .iter()
        .enumerate()
        .map(|(k, row)| {
            if !active[k] {
                return 0.0;
            }
            row.iter().map(|&(l, g)| if let Link::Fixed(v) = l { g * v } else { 0.0 }).sum()
        })
        .collect();
    let apply = |x: &[f64], out: &mut [f64]| {
        for k in 0..m {
            if !active[k] {
                out[k] = 0.0;
                continue;
            }
            let mut s = diag[k] * x[k];
            for &(l, g) in &links[k] {
                if let Link::Cell(j) = l {
                    s -= g * x[j];
                }
            }
            out[k] = s;
        }
    };

    let mut x = vec![0.0; m];
    let mut r = rhs.clone();
    let precond = |r: &[f64], z: &mut [f64]| {
        for k in 0..m {
            z[k] = if active[k] && diag[k] > 0.0 { r[k] / diag[k] } else { 0.0 };
        }
    };
    let mut z = vec![0.0; m];
    precond(&r, &mut z);
    let mut p = z.clone();
    let mut ap = vec![0.0; m];
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut rz = dot(&r, &z);
    let norm0 = dot(&rhs, &rhs).sqrt().max(1e-300);
    for _ in 0..20 * m.max(10) {
        if dot(&r, &r).sqrt() <= 1e-11 * norm0 {
            break;
        }
        apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            break;
        }
        let alpha = rz / pap;
        for k in 0..m {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        precond(&r, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for k in 0..m {
            p[k] = z[k] + beta * p[k];
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rect_modulus(w: f64, h: f64) -> f64 {
        PI * w / h
    }

    #[test]
    fn rectangles_match_the_analytic_modulus() {
        for &l0 in &[1.0, 3.0] {
            let poly = Polygon::rectangle(0.0, 0.0, l0, PI).unwrap();
            let l = pi_extremal_distance(&poly, BoundaryArc::edge(3), BoundaryArc::edge(1)).unwrap();
            assert!((l - l0).abs() < 0.01 * l0, "{l} vs {l0}");
        }
        let square = Polygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        let l = pi_extremal_distance(&square, BoundaryArc::edge(3), BoundaryArc::edge(1)).unwrap();
        assert!((l - rect_modulus(1.0, 1.0)).abs() < 1e-6, "{l}");
    }

    #[test]
    fn swapping_arcs_and_scaling_leave_l_unchanged() {
        let poly = Polygon::new(vec![
            C64::new(0.0, 0.0),
            C64::new(2.0, 0.0),
            C64::new(2.5, 1.0),
            C64::new(1.0, 1.8),
            C64::new(-0.3, 1.0),
        ])
        .unwrap();
        let a1 = BoundaryArc::new(0.2, 0.9);
        let a2 = BoundaryArc::new(2.1, 3.5);
        let l = pi_extremal_distance(&poly, a1, a2).unwrap();
        let swapped = pi_extremal_distance(&poly, a2, a1).unwrap();
        assert!((l - swapped).abs() < 1e-8 * l);
        let scaled = pi_extremal_distance(&poly.scaled(7.5).unwrap(), a1, a2).unwrap();
        assert!((l - scaled).abs() < 1e-6 * l);
    }

    #[test]
    fn wrapping_arc_and_rhombus_symmetry() {
        // Unit 60-degree rhombus: opposite side pairs are exchanged by a
        // reflection, so both moduli agree and their product is pi^2.
        let s3 = 3f64.sqrt() / 2.0;
        let rhombus = Polygon::new(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.5, s3), C64::new(0.5, s3)]).unwrap();
        let l = pi_extremal_distance(&rhombus, BoundaryArc::edge(3), BoundaryArc::edge(1)).unwrap();
        assert!((l - PI).abs() < 0.02 * PI, "{l}");
        let wrapped = pi_extremal_distance(&rhombus, BoundaryArc::new(3.0, 4.0), BoundaryArc::new(1.0, 2.0)).unwrap();
        assert_eq!(l, wrapped);
        let rect = Polygon::rectangle(0.0, 0.0, 2.0, 1.0).unwrap();
        let via_wrap = pi_extremal_distance(&rect, BoundaryArc::new(3.5, 0.5), BoundaryArc::new(1.5, 2.5)).unwrap();
        assert!(via_wrap > 0.0);
    }

    #[test]
    fn overlapping_or_degenerate_arcs_are_rejected() {
        let sq = Polygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        assert!(pi_extremal_distance(&sq, BoundaryArc::new(0.0, 1.5), BoundaryArc::new(1.0, 2.0)).is_err());
        assert!(pi_extremal_distance(&sq, BoundaryArc::new(3.5, 0.5), BoundaryArc::new(0.2, 1.0)).is_err());
        assert!(pi_extremal_distance(&sq, BoundaryArc::new(1.0, 1.0), BoundaryArc::edge(3)).is_err());
        // Arcs sharing only an endpoint are fine.
        assert!(pi_extremal_distance(&sq, BoundaryArc::edge(0), BoundaryArc::edge(1)).is_ok());
        assert!(Polygon::new(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).is_err());
    }
}
