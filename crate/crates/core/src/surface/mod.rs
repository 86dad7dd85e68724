//! Unpunctured marked surfaces, their ideal triangulations, flips and the
//! quiver with potential of a triangulation.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::qp::{Arrow, Potential, Qp, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("a surface needs at least one boundary component")]
    NoBoundary,
    #[error("boundary component {0} has no marked point")]
    UnmarkedBoundary(usize),
    #[error("surface has no arcs (disk with at most three marked points)")]
    Degenerate,
    #[error("triangulation has {got} triangles, expected {expected}")]
    TriangleCount { expected: usize, got: usize },
    #[error("side {0} does not occur the right number of times")]
    BadGluing(Side),
    #[error("arc {0} is not flippable")]
    NotFlippable(usize),
    #[error("polygon diagonals do not form a triangulation")]
    BadDiagonals,
}

/// Genus plus the number of marked points on each boundary component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedSurface {
    genus: usize,
    marks: Vec<usize>,
}

impl MarkedSurface {
    pub fn new(genus: usize, marks: Vec<usize>) -> Result<Self, SurfaceError> {
        if marks.is_empty() {
            return Err(SurfaceError::NoBoundary);
        }
        if let Some(i) = marks.iter().position(|&m| m == 0) {
            return Err(SurfaceError::UnmarkedBoundary(i));
        }
        let s = MarkedSurface { genus, marks };
        if s.arc_count() == 0 {
            return Err(SurfaceError::Degenerate);
        }
        Ok(s)
    }

    pub fn disk(marks: usize) -> Result<Self, SurfaceError> {
        MarkedSurface::new(0, vec![marks])
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    pub fn boundary_components(&self) -> usize {
        self.marks.len()
    }

    pub fn marked_points(&self) -> usize {
        self.marks.iter().sum()
    }

    /// Triangles in any triangulation: `4g + 2b + |M| - 4`.
    pub fn decoration_count(&self) -> usize {
        (4 * self.genus + 2 * self.boundary_components() + self.marked_points()).saturating_sub(4)
    }

    /// Arcs in any triangulation: `6g + 3b + |M| - 6`.
    pub fn arc_count(&self) -> usize {
        (6 * self.genus + 3 * self.boundary_components() + self.marked_points()).saturating_sub(6)
    }

    /// A triangulation obtained by fanning a polygon whose side word is
    /// the first boundary, then `a b a^-1 b^-1` per handle, then
    /// `c d c^-1` for each further boundary `d`.
    pub fn standard_triangulation(&self) -> Triangulation {
        // polygon sides: Some(boundary segment) or glued pairs as arc ids
        let mut sides: Vec<Side> = Vec::new();
        let mut segment = 0;
        let mut arc = 0;
        for _ in 0..self.marks[0] {
            sides.push(Side::Boundary(segment));
            segment += 1;
        }
        for _ in 0..self.genus {
            let (a, b) = (arc, arc + 1);
            arc += 2;
            sides.extend([Side::Arc(a), Side::Arc(b), Side::Arc(a), Side::Arc(b)]);
        }
        for &m in &self.marks[1..] {
            let c = arc;
            arc += 1;
            sides.push(Side::Arc(c));
            for _ in 0..m {
                sides.push(Side::Boundary(segment));
                segment += 1;
            }
            sides.push(Side::Arc(c));
        }
        let p = sides.len();
        // fan from polygon vertex 0: diagonal to vertex k is arc `arc + k - 2`
        let diagonal = |k: usize| Side::Arc(arc + k - 2);
        let mut triangles = Vec::new();
        for k in 1..p - 1 {
            let first = if k == 1 { sides[0] } else { diagonal(k) };
            let last = if k == p - 2 { sides[p - 1] } else { diagonal(k + 1) };
            triangles.push([first, sides[k], last]);
        }
        Triangulation::new(self.clone(), triangles).expect("polygon model is a triangulation")
    }
}

impl fmt::Display for MarkedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "surface {} {}", self.genus, self.marks.len())?;
        for m in &self.marks {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

/// A side of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Arc(usize),
    Boundary(usize),
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Arc(i) => write!(f, "a{i}"),
            Side::Boundary(i) => write!(f, "d{i}"),
        }
    }
}

/// Triangles as counter-clockwise triples of sides; arcs are `0..n`,
/// boundary segments `0..|M|`. Self-folded triangles are not supported.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    surface: MarkedSurface,
    triangles: Vec<[Side; 3]>,
}

/// One node per triangle, one edge per arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: usize,
    /// `(triangle, triangle, arc)`
    pub edges: Vec<(usize, usize, usize)>,
}

impl Triangulation {
    /// Checks counts and that every arc borders two different triangles and
    /// every boundary segment one.
    pub fn new(surface: MarkedSurface, triangles: Vec<[Side; 3]>) -> Result<Self, SurfaceError> {
        let expected = surface.decoration_count();
        if triangles.len() != expected {
            return Err(SurfaceError::TriangleCount { expected, got: triangles.len() });
        }
        let mut arc_uses = vec![Vec::new(); surface.arc_count()];
        let mut segment_uses = vec![0usize; surface.marked_points()];
        for (t, tri) in triangles.iter().enumerate() {
            for &s in tri {
                match s {
                    Side::Arc(i) if i < arc_uses.len() => arc_uses[i].push(t),
                    Side::Boundary(i) if i < segment_uses.len() => segment_uses[i] += 1,
                    _ => return Err(SurfaceError::BadGluing(s)),
                }
            }
        }
        for (i, uses) in arc_uses.iter().enumerate() {
            if uses.len() != 2 || uses[0] == uses[1] {
                return Err(SurfaceError::BadGluing(Side::Arc(i)));
            }
        }
        if let Some(i) = segment_uses.iter().position(|&u| u != 1) {
            return Err(SurfaceError::BadGluing(Side::Boundary(i)));
        }
        Ok(Triangulation { surface, triangles })
    }

    pub fn surface(&self) -> &MarkedSurface {
        &self.surface
    }

    pub fn triangles(&self) -> &[[Side; 3]] {
        &self.triangles
    }

    pub fn arc_count(&self) -> usize {
        self.surface.arc_count()
    }

    fn triangles_of(&self, arc: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for (p, &s) in tri.iter().enumerate() {
                if s == Side::Arc(arc) {
                    out.push((t, p));
                }
            }
        }
        out
    }

    /// Replaces `arc` by the other diagonal of the quadrilateral formed by
    /// its two triangles; the new arc keeps the index.
    pub fn flip(&self, arc: usize) -> Result<Triangulation, SurfaceError> {
        let at = self.triangles_of(arc);
        let [(t1, p1), (t2, p2)] = at.as_slice() else { return Err(SurfaceError::NotFlippable(arc)) };
        let rot = |t: usize, p: usize| {
            let tri = self.triangles[t];
            (tri[(p + 1) % 3], tri[(p + 2) % 3])
        };
        // (g, a, b) and (g, c, d) become (g, b, c) and (g, d, a)
        let ((a, b), (c, d)) = (rot(*t1, *p1), rot(*t2, *p2));
        let g = Side::Arc(arc);
        let mut triangles = self.triangles.clone();
        triangles[*t1] = [g, b, c];
        triangles[*t2] = [g, d, a];
        Triangulation::new(self.surface.clone(), triangles)
    }

    /// Arcs that can be flipped (all of them, since self-folded triangles
    /// never occur).
    pub fn flippable_arcs(&self) -> Vec<usize> {
        (0..self.arc_count()).collect()
    }

    pub fn dual_graph(&self) -> DualGraph {
        let edges = (0..self.arc_count())
            .map(|i| {
                let at = self.triangles_of(i);
                (at[0].0, at[1].0, i)
            })
            .collect();
        DualGraph { nodes: self.triangles.len(), edges }
    }

    /// Quiver with potential: one vertex per arc (arc `i` is vertex
    /// `i + 1`); in a triangle with counter-clockwise sides `x, y, z`,
    /// arrows run clockwise `y -> x`, `z -> y`, `x -> z` between arc sides;
    /// each all-arc triangle contributes its 3-cycle with coefficient 1.
    /// Opposite arrows from different triangles that are not in the
    /// potential cancel.
    pub fn qp(&self) -> Qp {
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut cycles: Vec<Vec<alloc::string::String>> = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            let mut ids = Vec::new();
            for (k, (from, to)) in [(1, 0), (2, 1), (0, 2)].into_iter().enumerate() {
                if let (Side::Arc(u), Side::Arc(v)) = (tri[from], tri[to]) {
                    let id = format!("t{t}_{k}");
                    arrows.push(Arrow::new(id.clone(), u + 1, v + 1));
                    ids.push(id);
                }
            }
            if ids.len() == 3 {
                // x -> z -> y -> x
                cycles.push(vec![ids[2].clone(), ids[1].clone(), ids[0].clone()]);
            }
        }
        let in_potential: BTreeSet<&str> = cycles.iter().flatten().map(|s| s.as_str()).collect();
        let mut removed = vec![false; arrows.len()];
        for i in 0..arrows.len() {
            for j in i + 1..arrows.len() {
                let (a, b) = (&arrows[i], &arrows[j]);
                if !removed[i]
                    && !removed[j]
                    && a.source == b.target
                    && a.target == b.source
                    && !in_potential.contains(a.id.as_str())
                    && !in_potential.contains(b.id.as_str())
                {
                    removed[i] = true;
                    removed[j] = true;
                }
            }
        }
        let arrows: Vec<Arrow> = arrows.into_iter().zip(removed).filter(|(_, r)| !r).map(|(a, _)| a).collect();
        let quiver = Quiver::new(self.arc_count(), arrows).expect("arrow endpoints are arcs");
        let refs: Vec<Vec<&str>> = cycles.iter().map(|c| c.iter().map(|s| s.as_str()).collect()).collect();
        let refs: Vec<&[&str]> = refs.iter().map(|c| c.as_slice()).collect();
        Qp::new(quiver, Potential::from_cycles(&refs), Some(3)).expect("triangle cycles are composable")
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.surface)?;
        writeln!(f, "arcs {}", self.arc_count())?;
        for t in &self.triangles {
            writeln!(f, "triangle {} {} {}", t[0], t[1], t[2])?;
        }
        Ok(())
    }
}

/// Triangulation of the `m`-gon (vertices `0..m` counter-clockwise,
/// boundary segment `i` from vertex `i` to `i + 1`) by the given diagonals;
/// arcs are numbered in the order given.
pub fn polygon_triangulation(m: usize, diagonals: &[(usize, usize)]) -> Result<Triangulation, SurfaceError> {
    let surface = MarkedSurface::disk(m)?;
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    let side = |a: usize, b: usize| -> Option<Side> {
        let (a, b) = norm(a, b);
        if b == a + 1 {
            Some(Side::Boundary(a))
        } else if a == 0 && b == m - 1 {
            Some(Side::Boundary(m - 1))
        } else {
            diagonals.iter().position(|&(x, y)| norm(x, y) == (a, b)).map(Side::Arc)
        }
    };
    let mut triangles = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                if let (Some(x), Some(y), Some(z)) = (side(a, b), side(b, c), side(c, a)) {
                    triangles.push([x, y, z]);
                }
            }
        }
    }
    if diagonals.len() != surface.arc_count() {
        return Err(SurfaceError::BadDiagonals);
    }
    Triangulation::new(surface, triangles).map_err(|_| SurfaceError::BadDiagonals)
}

/// Fan triangulation of the `m`-gon from vertex 0.
pub fn triangulate_polygon(m: usize) -> Result<Triangulation, SurfaceError> {
    let diagonals: Vec<(usize, usize)> = (2..m.saturating_sub(1)).map(|k| (0, k)).collect();
    polygon_triangulation(m, &diagonals)
}

fn diagonal_sets(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if hi - lo < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // the triangle on the side (lo, hi) has apex k
    for k in lo + 1..hi {
        for left in diagonal_sets(lo, k) {
            for right in diagonal_sets(k, hi) {
                let mut d = left.clone();
                d.extend_from_slice(&right);
                if k > lo + 1 {
                    d.push((lo, k));
                }
                if k < hi - 1 {
                    d.push((k, hi));
                }
                out.push(d);
            }
        }
    }
    out
}

/// Every triangulation of the `m`-gon, by recursion on the triangle
/// containing the side `(0, m - 1)`.
pub fn enumerate_triangulations(m: usize) -> Result<Vec<Triangulation>, SurfaceError> {
    MarkedSurface::disk(m)?;
    diagonal_sets(0, m - 1)
        .into_iter()
        .map(|mut d| {
            d.sort_unstable();
            polygon_triangulation(m, &d)
        })
        .collect()
}
