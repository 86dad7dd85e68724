//! Computations shared by the command line and the HTTP API, so both print
//! the same bytes for the same input.

use std::fmt::Write;

use clusterbraid_core::exchange::{build_ceg, fundamental_presentation, ExchangeGraph, FaceKind, Seed};
use clusterbraid_core::presentation::{build_at, build_br, tietze_simplify, Presentation};
use clusterbraid_core::qp::mutate_qp;
use clusterbraid_core::Qp;

use crate::Error;

pub const DEFAULT_MAX_VERTICES: usize = 10_000;
pub const MAX_VERTICES_VAR: &str = "CLUSTERBRAID_MAX_VERTICES";
/// Move budget for simplifying point-group presentations.
pub const TIETZE_BUDGET: usize = 2000;

/// The exchange graph cap: `CLUSTERBRAID_MAX_VERTICES` when set to a
/// positive integer, otherwise 10000.
pub fn max_vertices() -> usize {
    std::env::var(MAX_VERTICES_VAR).ok().and_then(|v| v.trim().parse().ok()).filter(|&n| n > 0).unwrap_or(DEFAULT_MAX_VERTICES)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Br,
    At,
    Cbr,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Br => "br",
            Kind::At => "at",
            Kind::Cbr => "cbr",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "br" => Ok(Kind::Br),
            "at" => Ok(Kind::At),
            "cbr" => Ok(Kind::Cbr),
            other => Err(Error::UnknownKind(other.to_string())),
        }
    }
}

/// Mutates at each 1-based vertex in turn.
pub fn mutate_sequence(qp: &Qp, vertices: &[usize]) -> Result<Qp, Error> {
    let mut cur = qp.clone();
    for &k in vertices {
        if k == 0 || k > cur.vertex_count() {
            return Err(Error::InvalidVertex { vertex: k, n: cur.vertex_count() });
        }
        cur = mutate_qp(&cur, k)?;
    }
    Ok(cur)
}

pub fn exchange_graph(qp: &Qp, max_vertices: usize) -> Result<ExchangeGraph, Error> {
    Ok(build_ceg(&Seed::from_quiver(&qp.quiver), max_vertices)?)
}

/// `vertices=5 edges=10 pentagons=5`, listing squares and pentagons when
/// present, then hexagons on a second line.
pub fn graph_summary(g: &ExchangeGraph) -> String {
    let mut out = format!("vertices={} edges={}", g.vertex_count(), g.edge_count());
    for kind in [FaceKind::Square, FaceKind::Pentagon] {
        let count = g.face_count(kind);
        if count > 0 {
            let _ = write!(out, " {}s={count}", kind.name());
        }
    }
    let _ = write!(out, "\nhexagons={}", g.face_count(FaceKind::Hexagon));
    out
}

/// `Br(Q)`, `AT(Q,W)` or the point group of the exchange graph.
pub fn presentation(qp: &Qp, kind: Kind, simplify: bool, max_vertices: usize) -> Result<Presentation, Error> {
    let p = match kind {
        Kind::Br => build_br(&qp.quiver)?,
        Kind::At => build_at(qp)?,
        Kind::Cbr => fundamental_presentation(&exchange_graph(qp, max_vertices)?, true),
    };
    Ok(if simplify { tietze_simplify(&p, TIETZE_BUDGET).presentation } else { p })
}
