//! JSON documents (schema version 1) and DOT export. Directions and QP
//! vertices are 1-based here; graph vertices keep their breadth-first
//! numbering with the base as `0`.

use std::fmt::Write;

use clusterbraid_core::exchange::{Ball, ExchangeGraph};
use clusterbraid_core::presentation::{Presentation, TriState};
use clusterbraid_core::Qp;
use serde::Serialize;

use crate::format::serialize_presentation;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArrowJson {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub degree: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermJson {
    pub coefficient: String,
    pub cycle: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QpJson {
    pub n: usize,
    pub arrows: Vec<ArrowJson>,
    pub potential: Vec<TermJson>,
    pub degree_n: Option<u32>,
}

impl From<&Qp> for QpJson {
    fn from(qp: &Qp) -> Self {
        QpJson {
            n: qp.vertex_count(),
            arrows: qp
                .quiver
                .arrows()
                .iter()
                .map(|a| ArrowJson { id: a.id.clone(), source: a.source, target: a.target, degree: a.degree })
                .collect(),
            potential: qp
                .potential
                .terms()
                .map(|(cycle, c)| TermJson { coefficient: c.to_string(), cycle: cycle.to_vec() })
                .collect(),
            degree_n: qp.degree_n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexJson {
    pub id: usize,
    /// Short digest of the canonical seed key.
    pub key: String,
    pub distance: usize,
    pub b: Vec<Vec<i64>>,
    pub c: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeJson {
    pub source: usize,
    pub direction: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaceJson {
    pub kind: &'static str,
    pub vertex: usize,
    /// The two boundary paths as edge indices into `edges`.
    pub paths: [Vec<usize>; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphJson {
    pub v: u32,
    pub rank: usize,
    pub base: usize,
    /// False when the document is a neighbourhood with edges leaving it.
    pub complete: bool,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub faces: Vec<FaceJson>,
}

impl From<&ExchangeGraph> for GraphJson {
    fn from(g: &ExchangeGraph) -> Self {
        let dist = g.distances(g.base());
        GraphJson {
            v: SCHEMA_VERSION,
            rank: g.rank(),
            base: g.base(),
            complete: true,
            vertices: (0..g.vertex_count())
                .map(|v| VertexJson {
                    id: v,
                    key: g.key(v).digest(),
                    distance: dist[v].unwrap_or(usize::MAX),
                    b: g.seed(v).b.clone(),
                    c: g.seed(v).c.clone(),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson { source: e.source, direction: e.direction + 1, target: e.target })
                .collect(),
            faces: g
                .faces()
                .iter()
                .map(|f| FaceJson { kind: f.kind.name(), vertex: f.vertex, paths: [f.paths.0.clone(), f.paths.1.clone()] })
                .collect(),
        }
    }
}

impl From<&Ball> for GraphJson {
    fn from(ball: &Ball) -> Self {
        GraphJson {
            v: SCHEMA_VERSION,
            rank: ball.seeds.first().map_or(0, |s| s.rank()),
            base: 0,
            complete: ball.complete,
            vertices: ball
                .seeds
                .iter()
                .enumerate()
                .map(|(v, s)| VertexJson {
                    id: v,
                    key: ball.keys[v].digest(),
                    distance: ball.distance[v],
                    b: s.b.clone(),
                    c: s.c.clone(),
                })
                .collect(),
            edges: ball.edges.iter().map(|&(s, k, t)| EdgeJson { source: s, direction: k + 1, target: t }).collect(),
            faces: Vec::new(),
        }
    }
}

/// DOT digraph in vertex order; the base is drawn as a double circle.
pub fn to_dot(g: &GraphJson) -> String {
    let mut out = String::from("digraph ceg {\n");
    for v in &g.vertices {
        let shape = if v.id == g.base { ", shape=doublecircle" } else { "" };
        let _ = writeln!(out, "  v{} [label=\"{}\"{}];", v.id, v.key, shape);
    }
    for e in &g.edges {
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.source, e.target, e.direction);
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresentationJson {
    pub v: u32,
    pub kind: String,
    pub simplified: bool,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    /// The `gens:`/`rel:` text form.
    pub text: String,
}

impl PresentationJson {
    pub fn new(kind: &str, simplified: bool, p: &Presentation) -> Self {
        PresentationJson {
            v: SCHEMA_VERSION,
            kind: kind.to_string(),
            simplified,
            generators: p.generators().to_vec(),
            relators: p.relators().iter().map(|r| p.format_word(r)).collect(),
            text: serialize_presentation(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictJson {
    pub v: u32,
    pub claim: String,
    pub status: &'static str,
    pub transcript: Vec<String>,
}

impl VerdictJson {
    pub fn new(claim: &str, status: &TriState) -> Self {
        VerdictJson { v: SCHEMA_VERSION, claim: claim.to_string(), status: status.label(), transcript: status.transcript() }
    }
}
