//! Critical site percolation on the triangular lattice.
//!
//! Sites use axial coordinates `(q, r)`, embedded at `q + r/2 + i r sqrt(3)/2`.
//! Colours are read from a counter-based hash of the site's index in the
//! region, so a site's colour is the same whether it is drawn eagerly for the
//! whole region or lazily on first query.

use super::{Adjacency, LatticePath, Site, UnionFind, TRIANGULAR_STEPS};
use crate::error::{invalid, Result};
use crate::rng::counter_word;

/// Lattice domains with a boundary made of straight sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Equilateral triangle `q, r >= 0, q + r < side`, with `side` sites per
    /// side and corners `(0, 0)`, `(side - 1, 0)`, `(0, side - 1)`.
    Triangle { side: u32 },
    /// 60-degree rhombus `0 <= q, r < side`. Its two pairs of opposite sides
    /// are exchanged by the reflection `q <-> r`, so it is a conformal
    /// square.
    Rhombus { side: u32 },
}

impl Region {
    pub fn side(&self) -> u32 {
        match *self {
            Region::Triangle { side } | Region::Rhombus { side } => side,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.side() < 2 {
            return invalid("regions need at least two sites per side");
        }
        Ok(())
    }

    pub fn contains(&self, (q, r): Site) -> bool {
        let s = self.side() as i32;
        match self {
            Region::Triangle { .. } => q >= 0 && r >= 0 && q + r < s,
            Region::Rhombus { .. } => q >= 0 && r >= 0 && q < s && r < s,
        }
    }

    /// Row-major index within the `side x side` bounding box.
    pub fn index(&self, site: Site) -> Option<usize> {
        self.contains(site).then(|| site.0 as usize + site.1 as usize * self.side() as usize)
    }

    /// Sites in index order.
    pub fn sites(&self) -> Vec<Site> {
        let s = self.side() as i32;
        (0..s).flat_map(|r| (0..s).map(move |q| (q, r))).filter(|&p| self.contains(p)).collect()
    }

    /// Size of the index space.
    pub fn index_len(&self) -> usize {
        (self.side() as usize).pow(2)
    }

    /// Carleson's arcs on the triangle: `A1` the bottom side and `A2` the
    /// part of the left side within distance `x` (relative to the side
    /// length) of the top vertex.
    pub fn carleson_arcs(&self, x: f64) -> Result<[(String, Vec<Site>); 2]> {
        let n = match *self {
            Region::Triangle { side } => side as i32 - 1,
            Region::Rhombus { .. } => return invalid("Carleson arcs are defined on the triangle"),
        };
        if !(x > 0.0 && x <= 1.0) {
            return invalid(format!("arc fraction must lie in (0, 1], got {x}"));
        }
        let from = (((1.0 - x) * n as f64).round() as i32).max(1);
        let a1 = (0..=n).map(|q| (q, 0)).collect();
        let a2: Vec<Site> = (from..=n).map(|r| (0, r)).collect();
        Ok([("A1".to_string(), a1), ("A2".to_string(), a2)])
    }

    /// Default named arcs: rhombus sides (`left`, `right` whole; `bottom`,
    /// `top` without the corners), or the three triangle sides (`bottom`
    /// whole; `right` and `left` without the bottom corners).
    pub fn default_arcs(&self) -> Vec<(String, Vec<Site>)> {
        let s = self.side() as i32;
        let mut arcs: Vec<(String, Vec<Site>)> = match self {
            Region::Rhombus { .. } => vec![
                ("left".into(), (0..s).map(|r| (0, r)).collect()),
                ("right".into(), (0..s).map(|r| (s - 1, r)).collect()),
                ("bottom".into(), (1..s - 1).map(|q| (q, 0)).collect()),
                ("top".into(), (1..s - 1).map(|q| (q, s - 1)).collect()),
            ],
            Region::Triangle { .. } => vec![
                ("bottom".into(), (0..s).map(|q| (q, 0)).collect()),
                ("right".into(), (1..s).map(|r| (s - 1 - r, r)).filter(|&(q, _)| q > 0).collect()),
                ("left".into(), (1..s).map(|r| (0, r)).collect()),
            ],
        };
        arcs.retain(|(_, sites)| !sites.is_empty());
        arcs
    }

    fn on_boundary(&self, p: Site) -> bool {
        self.contains(p) && TRIANGULAR_STEPS.iter().any(|d| !self.contains((p.0 + d.0, p.1 + d.1)))
    }
}

/// Fair colour of site index `idx` under `seed`: bit `idx % 64` of word
/// `idx / 64` of the counter stream. `true` is white.
fn hashed_colour(seed: u64, idx: usize) -> bool {
    (counter_word(seed, (idx / 64) as u64) >> (idx % 64)) & 1 == 1
}

/// Read access to a colouring of a region.
pub trait Coloring {
    fn region(&self) -> &Region;
    /// Colour of a site of the region; `true` is white.
    fn is_white(&self, site: Site) -> bool;
}

/// Colours computed on demand from a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LazyColoring {
    pub region: Region,
    pub seed: u64,
}

impl Coloring for LazyColoring {
    fn region(&self) -> &Region {
        &self.region
    }

    fn is_white(&self, site: Site) -> bool {
        hashed_colour(self.seed, self.region.index(site).expect("site outside the region"))
    }
}

/// A fully materialised colouring with named boundary arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteColoring {
    pub region: Region,
    /// Indexed by [`Region::index`]; entries outside the region are unused.
    white: Vec<bool>,
    arcs: Vec<(String, Vec<Site>)>,
}

impl Coloring for SiteColoring {
    fn region(&self) -> &Region {
        &self.region
    }

    fn is_white(&self, site: Site) -> bool {
        self.white[self.region.index(site).expect("site outside the region")]
    }
}

impl SiteColoring {
    /// Colouring given site by site in the order of [`Region::sites`].
    pub fn from_colors(region: Region, colors: &[bool]) -> Result<Self> {
        region.validate()?;
        let sites = region.sites();
        if colors.len() != sites.len() {
            return invalid(format!("expected {} colours, got {}", sites.len(), colors.len()));
        }
        let mut white = vec![false; region.index_len()];
        for (s, &c) in sites.iter().zip(colors) {
            white[region.index(*s).unwrap()] = c;
        }
        let mut coloring = SiteColoring { region, white, arcs: Vec::new() };
        for (name, sites) in region.default_arcs() {
            coloring.set_arc(&name, sites)?;
        }
        Ok(coloring)
    }

    pub fn uniform(region: Region, white: bool) -> Result<Self> {
        region.validate()?;
        Self::from_colors(region, &vec![white; region.sites().len()])
    }

    /// Colours in the order of [`Region::sites`].
    pub fn colors(&self) -> Vec<bool> {
        self.region.sites().into_iter().map(|s| self.is_white(s)).collect()
    }

    pub fn set_color(&mut self, site: Site, white: bool) -> Result<()> {
        match self.region.index(site) {
            Some(i) => {
                self.white[i] = white;
                Ok(())
            }
            None => invalid(format!("{site:?} is outside the region")),
        }
    }

    pub fn arcs(&self) -> &[(String, Vec<Site>)] {
        &self.arcs
    }

    pub fn arc(&self, name: &str) -> Result<&[Site]> {
        match self.arcs.iter().find(|(n, _)| n == name) {
            Some((_, sites)) => Ok(sites),
            None => invalid(format!("unknown arc '{name}'")),
        }
    }

    /// Adds or replaces a named arc. Arcs must be nonempty, connected sets of
    /// boundary sites, disjoint from every other arc.
    pub fn set_arc(&mut self, name: &str, sites: Vec<Site>) -> Result<()> {
        if sites.is_empty() {
            return invalid(format!("arc '{name}' is empty"));
        }
        if let Some(s) = sites.iter().find(|&&s| !self.region.on_boundary(s)) {
            return invalid(format!("arc '{name}' contains {s:?}, which is not a boundary site"));
        }
        let mut uf = UnionFind::new(sites.len());
        for i in 0..sites.len() {
            for j in i + 1..sites.len() {
                if Adjacency::Triangular6.are_neighbors(sites[i], sites[j]) {
                    uf.union(i, j);
                }
            }
        }
        if (1..sites.len()).any(|i| !uf.connected(0, i)) {
            return invalid(format!("arc '{name}' is not connected"));
        }
        for (other, osites) in &self.arcs {
            if other != name && osites.iter().any(|s| sites.contains(s)) {
                return invalid(format!("arcs '{name}' and '{other}' overlap"));
            }
        }
        self.arcs.retain(|(n, _)| n != name);
        self.arcs.push((name.to_string(), sites));
        Ok(())
    }

    /// Replaces every arc with the given list.
    pub fn with_arcs(mut self, arcs: Vec<(String, Vec<Site>)>) -> Result<Self> {
        self.arcs.clear();
        for (name, sites) in arcs {
            self.set_arc(&name, sites)?;
        }
        Ok(self)
    }
}

/// I.i.d. fair colouring of `region`.
pub fn percolation_sample(region: Region, seed: u64) -> Result<SiteColoring> {
    region.validate()?;
    let side = region.side() as usize;
    let white = (0..region.index_len())
        .map(|i| region.contains(((i % side) as i32, (i / side) as i32)) && hashed_colour(seed, i))
        .collect();
    let mut coloring = SiteColoring { region, white, arcs: Vec::new() };
    for (name, sites) in region.default_arcs() {
        coloring.set_arc(&name, sites)?;
    }
    Ok(coloring)
}

/// Whether a white 6-connected cluster meets both arcs.
pub fn cluster_crossing(coloring: &SiteColoring, a1: &str, a2: &str) -> Result<bool> {
    let (s1, s2) = (coloring.arc(a1)?, coloring.arc(a2)?);
    if a1 == a2 {
        return invalid("the two arcs must differ");
    }
    Ok(white_crossing(coloring, s1, s2))
}

pub(crate) fn white_crossing<C: Coloring>(coloring: &C, s1: &[Site], s2: &[Site]) -> bool {
    let region = *coloring.region();
    let len = region.index_len();
    let (v1, v2) = (len, len + 1);
    let mut uf = UnionFind::new(len + 2);
    for site in region.sites() {
        if !coloring.is_white(site) {
            continue;
        }
        let i = region.index(site).unwrap();
        for d in [(1, 0), (0, 1), (1, -1)] {
            let nb = (site.0 + d.0, site.1 + d.1);
            if let Some(j) = region.index(nb) {
                if coloring.is_white(nb) {
                    uf.union(i, j);
                }
            }
        }
    }
    for &s in s1 {
        if coloring.is_white(s) {
            uf.union(v1, region.index(s).unwrap());
        }
    }
    for &s in s2 {
        if coloring.is_white(s) {
            uf.union(v2, region.index(s).unwrap());
        }
    }
    uf.connected(v1, v2)
}

/// Sides of the rhombus, in counter-clockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhombusSide {
    Bottom,
    Right,
    Top,
    Left,
}

const SIDES: [RhombusSide; 4] = [RhombusSide::Bottom, RhombusSide::Right, RhombusSide::Top, RhombusSide::Left];

impl RhombusSide {
    fn position(self) -> usize {
        SIDES.iter().position(|&s| s == self).unwrap()
    }

    fn next(self) -> Self {
        SIDES[(self.position() + 1) % 4]
    }
}

/// Corners of the rhombus; each sits between two consecutive sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    BottomLeft,
    BottomRight,
    TopRight,
    TopLeft,
}

impl Corner {
    /// The corner where `side` ends, going counter-clockwise.
    pub fn after(side: RhombusSide) -> Self {
        match side {
            RhombusSide::Bottom => Corner::BottomRight,
            RhombusSide::Right => Corner::TopRight,
            RhombusSide::Top => Corner::TopLeft,
            RhombusSide::Left => Corner::BottomLeft,
        }
    }
}

/// The ring of sites just outside a rhombus of side `l`, split into sides.
fn ring_side((q, r): Site, l: i32) -> Option<RhombusSide> {
    if r == -1 && (0..=l).contains(&q) {
        Some(RhombusSide::Bottom)
    } else if q == l && (0..l).contains(&r) {
        Some(RhombusSide::Right)
    } else if r == l && (-1..l).contains(&q) {
        Some(RhombusSide::Top)
    } else if q == -1 && (0..l).contains(&r) {
        Some(RhombusSide::Left)
    } else {
        None
    }
}

/// First and last ring site of a side, going counter-clockwise.
fn side_ends(side: RhombusSide, l: i32) -> (Site, Site) {
    match side {
        RhombusSide::Bottom => ((0, -1), (l, -1)),
        RhombusSide::Right => ((l, 0), (l, l - 1)),
        RhombusSide::Top => ((l - 1, l), (-1, l)),
        RhombusSide::Left => ((-1, l - 1), (-1, 0)),
    }
}

/// An exploration interface on the hexagonal lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Exploration {
    /// Hexagonal vertices (triangular faces labelled by the sum of their
    /// three sites) in the order visited.
    pub path: LatticePath,
    /// Lattice edges crossed by the path, as `(white site, black site)`.
    pub edges: Vec<(Site, Site)>,
    pub end: Corner,
    side: i32,
}

impl Exploration {
    /// Whether the path runs along the boundary ring on `side`, with that
    /// ring on its black (right-hand) side.
    pub fn touches_black(&self, side: RhombusSide) -> bool {
        self.edges.iter().any(|&(_, b)| ring_side(b, self.side) == Some(side))
    }

    /// Whether the path runs along the boundary ring on `side`, with that
    /// ring on its white (left-hand) side.
    pub fn touches_white(&self, side: RhombusSide) -> bool {
        self.edges.iter().any(|&(w, _)| ring_side(w, self.side) == Some(side))
    }
}

fn check_contiguous(arc: &[RhombusSide], what: &str) -> Result<()> {
    if arc.is_empty() {
        return invalid(format!("{what} arc is empty"));
    }
    for w in arc.windows(2) {
        if w[1] != w[0].next() {
            return invalid(format!("{what} arc is not a counter-clockwise run of sides"));
        }
    }
    Ok(())
}

/// Interface between the white cluster of `white_arc` and the black cluster
/// of `black_arc` in a rhombus, with the outer ring of sites coloured by the
/// arcs. The walk keeps white on its left; at each hexagonal vertex it turns
/// away from the colour of the site ahead. Sites are coloured on first query
/// when `coloring` is lazy.
///
/// Arcs are counter-clockwise runs of sides that together partition the
/// boundary; the walk starts at the corner where `white_arc` ends and stops
/// at the corner where `black_arc` ends.
pub fn exploration_path<C: Coloring>(
    coloring: &C,
    start_corner: Corner,
    white_arc: &[RhombusSide],
    black_arc: &[RhombusSide],
) -> Result<Exploration> {
    let l = match *coloring.region() {
        Region::Rhombus { side } => side as i32,
        Region::Triangle { .. } => return invalid("exploration is implemented on the rhombus"),
    };
    check_contiguous(white_arc, "white")?;
    check_contiguous(black_arc, "black")?;
    if white_arc.len() + black_arc.len() != 4 || white_arc.iter().any(|s| black_arc.contains(s)) {
        return invalid("arcs must partition the four sides");
    }
    let last_white = *white_arc.last().unwrap();
    if black_arc[0] != last_white.next() {
        return invalid("black arc must start where the white arc ends");
    }
    if start_corner != Corner::after(last_white) {
        return invalid(format!("exploration must start at {:?}", Corner::after(last_white)));
    }
    let end = Corner::after(*black_arc.last().unwrap());

    let region = *coloring.region();
    let colour = |s: Site| -> Result<bool> {
        if region.contains(s) {
            Ok(coloring.is_white(s))
        } else {
            match ring_side(s, l) {
                Some(side) => Ok(white_arc.contains(&side)),
                None => invalid(format!("exploration left the domain at {s:?}")),
            }
        }
    };
    let embed = |(q, r): Site| (2 * q as i64 + r as i64, r as i64);
    let outer = |s: Site| !region.contains(s);

    let mut a = side_ends(last_white, l).1;
    let mut b = side_ends(black_arc[0], l).0;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let max_steps = 4 * (l as usize + 2).pow(2);
    loop {
        edges.push((a, b));
        if edges.len() > 1 && outer(a) && outer(b) {
            break;
        }
        if edges.len() > max_steps {
            return invalid("exploration did not terminate");
        }
        let (ea, eb) = (embed(a), embed(b));
        let ahead = TRIANGULAR_STEPS
            .iter()
            .map(|d| (a.0 + d.0, a.1 + d.1))
            .filter(|&c| Adjacency::Triangular6.are_neighbors(c, b))
            .find(|&c| {
                let ec = embed(c);
                let (cx, cy) = (2 * ec.0 - ea.0 - eb.0, 2 * ec.1 - ea.1 - eb.1);
                let (ax, ay) = (ea.0 - eb.0, ea.1 - eb.1);
                cx * ay - cy * ax > 0
            })
            .expect("two sites always share a face ahead");
        vertices.push((a.0 + b.0 + ahead.0, a.1 + b.1 + ahead.1));
        if colour(ahead)? {
            a = ahead;
        } else {
            b = ahead;
        }
    }
    let path = LatticePath::new(vertices, Adjacency::Hexagonal)?;
    Ok(Exploration { path, edges, end, side: l })
}
