//! Plain-text serialisation of lattice paths and colourings.
//!
//! Paths:
//! ```text
//! # slelab lattice-path v1
//! adjacency square4
//! 0 0
//! 1 0
//! ```
//! Colourings list one line of `0`/`1` per row `r` (white is `1`), then the
//! named arcs as `arc <name> q,r q,r ...`:
//! ```text
//! # slelab coloring v1
//! region rhombus 2
//! 10
//! 01
//! arc left 0,0 0,1
//! ```

use super::{Adjacency, LatticePath, Region, Site, SiteColoring};
use crate::error::{Error, Result};
use std::fmt::Write;

const PATH_HEADER: &str = "# slelab lattice-path v1";
const COLORING_HEADER: &str = "# slelab coloring v1";

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

pub fn write_path(path: &LatticePath) -> String {
    let mut out = format!("{PATH_HEADER}\nadjacency {}\n", path.adjacency.name());
    for (q, r) in &path.points {
        writeln!(out, "{q} {r}").unwrap();
    }
    out
}

/// Numbered, non-blank lines that are not comments (the header excepted).
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, header: &str) -> Result<()> {
    match lines.next() {
        Some((_, l)) if l == header => Ok(()),
        Some((n, l)) => parse_err(n, format!("expected '{header}', found '{l}'")),
        None => parse_err(1, "empty input"),
    }
}

fn parse_int(line: usize, tok: &str) -> Result<i32> {
    tok.parse().or_else(|_| parse_err(line, format!("'{tok}' is not an integer")))
}

pub fn parse_path(text: &str) -> Result<LatticePath> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, PATH_HEADER)?;
    let adjacency = match lines.next() {
        Some((n, l)) => {
            let name = l.strip_prefix("adjacency ").map(str::trim);
            match name.and_then(Adjacency::from_name) {
                Some(a) => a,
                None => return parse_err(n, format!("expected 'adjacency <square4|triangular6|hexagonal>', found '{l}'")),
            }
        }
        None => return parse_err(2, "missing adjacency line"),
    };
    let mut points: Vec<Site> = Vec::new();
    for (n, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return parse_err(n, format!("expected two coordinates, found '{l}'"));
        }
        let p = (parse_int(n, toks[0])?, parse_int(n, toks[1])?);
        if let Some(&prev) = points.last() {
            if !adjacency.are_neighbors(prev, p) {
                return parse_err(n, format!("{p:?} is not a {} neighbour of {prev:?}", adjacency.name()));
            }
        }
        points.push(p);
    }
    Ok(LatticePath { points, adjacency })
}

pub fn write_coloring(coloring: &SiteColoring) -> String {
    let region = coloring.region;
    let (kind, side) = match region {
        Region::Triangle { side } => ("triangle", side),
        Region::Rhombus { side } => ("rhombus", side),
    };
    let mut out = format!("{COLORING_HEADER}\nregion {kind} {side}\n");
    let colors = coloring.colors();
    let mut it = colors.iter();
    for r in 0..side as i32 {
        let width = (0..side as i32).filter(|&q| region.contains((q, r))).count();
        let row: String = it.by_ref().take(width).map(|&w| if w { '1' } else { '0' }).collect();
        out.push_str(&row);
        out.push('\n');
    }
    for (name, sites) in coloring.arcs() {
        out.push_str("arc ");
        out.push_str(name);
        for (q, r) in sites {
            write!(out, " {q},{r}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_coloring(text: &str) -> Result<SiteColoring> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, COLORING_HEADER)?;
    let region = match lines.next() {
        Some((n, l)) => {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "region" {
                return parse_err(n, format!("expected 'region <triangle|rhombus> <side>', found '{l}'"));
            }
            let side: u32 = toks[2].parse().or_else(|_| parse_err(n, format!("bad side '{}'", toks[2])))?;
            let region = match toks[1] {
                "triangle" => Region::Triangle { side },
                "rhombus" => Region::Rhombus { side },
                other => return parse_err(n, format!("unknown region '{other}'")),
            };
            region.validate().or_else(|e| parse_err(n, e.to_string()))?;
            region
        }
        None => return parse_err(2, "missing region line"),
    };
    let side = region.side() as i32;
    let mut colors = Vec::new();
    let mut last_line = 2;
    for r in 0..side {
        let width = (0..side).filter(|&q| region.contains((q, r))).count();
        let Some((n, l)) = lines.next() else {
            return parse_err(last_line + 1, format!("missing colour row {r}"));
        };
        last_line = n;
        if l.chars().count() != width || !l.chars().all(|c| c == '0' || c == '1') {
            return parse_err(n, format!("row {r} must be {width} characters of 0/1"));
        }
        colors.extend(l.chars().map(|c| c == '1'));
    }
    let coloring = SiteColoring::from_colors(region, &colors).or_else(|e| parse_err(last_line, e.to_string()))?;
    let mut arcs = Vec::new();
    let mut arc_lines = Vec::new();
    for (n, l) in lines {
        let mut toks = l.split_whitespace();
        if toks.next() != Some("arc") {
            return parse_err(n, format!("expected 'arc <name> q,r ...', found '{l}'"));
        }
        let Some(name) = toks.next() else {
            return parse_err(n, "arc without a name");
        };
        let mut sites = Vec::new();
        for tok in toks {
            let Some((q, r)) = tok.split_once(',') else {
                return parse_err(n, format!("expected 'q,r', found '{tok}'"));
            };
            sites.push((parse_int(n, q)?, parse_int(n, r)?));
        }
        arcs.push((name.to_string(), sites));
        arc_lines.push(n);
    }
    let mut coloring = coloring.with_arcs(Vec::new())?;
    for ((name, sites), n) in arcs.into_iter().zip(arc_lines) {
        coloring.set_arc(&name, sites).or_else(|e| parse_err(n, e.to_string()))?;
    }
    Ok(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{percolation_sample, sample_srw};

    #[test]
    fn path_round_trip() {
        let walk = sample_srw(200, 5);
        assert_eq!(parse_path(&write_path(&walk)).unwrap(), walk);
    }

    #[test]
    fn path_errors_carry_line_numbers() {
        let bad = "# slelab lattice-path v1\nadjacency square4\n0 0\n1 0\n3 0\n";
        match parse_path(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_path("nope"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_path("# slelab lattice-path v1\nadjacency cubic\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            parse_path("# slelab lattice-path v1\nadjacency square4\n0 x\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn coloring_round_trip() {
        for region in [Region::Rhombus { side: 7 }, Region::Triangle { side: 9 }] {
            let c = percolation_sample(region, 12).unwrap();
            let text = write_coloring(&c);
            assert_eq!(parse_coloring(&text).unwrap(), c);
        }
        let t = Region::Triangle { side: 9 };
        let c = percolation_sample(t, 4).unwrap().with_arcs(t.carleson_arcs(0.4).unwrap().to_vec()).unwrap();
        assert_eq!(parse_coloring(&write_coloring(&c)).unwrap(), c);
    }

    #[test]
    fn coloring_errors() {
        let good = write_coloring(&percolation_sample(Region::Rhombus { side: 2 }, 0).unwrap());
        let short_row = good.lines().enumerate().map(|(i, l)| if i == 2 { "1" } else { l }).collect::<Vec<_>>().join("\n");
        assert!(matches!(parse_coloring(&short_row), Err(Error::Parse { line: 3, .. })));
        let overlapping = format!("{good}arc extra 0,0\n");
        assert!(matches!(parse_coloring(&overlapping), Err(Error::Parse { .. })));
        assert!(matches!(parse_coloring("# slelab coloring v1\nregion hexagon 3\n"), Err(Error::Parse { line: 2, .. })));
    }
}
