use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{Letter, Presentation, PresentationError, Word};
use crate::qp::{DynkinType, Qp, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    /// `ab = ba`
    Co,
    /// `aba = bab`
    Br,
    /// `abca = bcab = cabc`
    Tr,
}

/// Relators for a commutation, braid or triangle relation among the given
/// generators (0-based indices).
pub fn make_relation(kind: RelationKind, gens: &[usize]) -> Result<Vec<Word>, PresentationError> {
    let (name, arity) = match kind {
        RelationKind::Co => ("Co", 2),
        RelationKind::Br => ("Br", 2),
        RelationKind::Tr => ("Tr", 3),
    };
    if gens.len() != arity {
        return Err(PresentationError::Arity { kind: name, expected: arity, got: gens.len() });
    }
    let g = |i: usize| Letter::gen(gens[i]);
    let w = |ls: &[Letter]| Word::new(ls);
    Ok(match kind {
        RelationKind::Co => vec![w(&[g(0), g(1), g(0).inverse(), g(1).inverse()])],
        RelationKind::Br => {
            vec![w(&[g(0), g(1), g(0), g(1).inverse(), g(0).inverse(), g(1).inverse()])]
        }
        RelationKind::Tr => {
            let (a, b, c) = (g(0), g(1), g(2));
            let abca = w(&[a, b, c, a]);
            let bcab = w(&[b, c, a, b]);
            let cabc = w(&[c, a, b, c]);
            vec![abca.concat(&bcab.inverse()), bcab.concat(&cabc.inverse())]
        }
    })
}

/// Unordered adjacency of a quiver with at most one arrow per vertex pair.
fn simple_edges(q: &Quiver) -> Result<BTreeSet<(usize, usize)>, PresentationError> {
    let mut edges = BTreeSet::new();
    for a in q.arrows() {
        if a.source == a.target {
            return Err(PresentationError::Loop(a.source));
        }
        let e = (a.source.min(a.target), a.source.max(a.target));
        if !edges.insert(e) {
            return Err(PresentationError::MultipleArrows(e.0, e.1));
        }
    }
    Ok(edges)
}

fn braid_relators(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<Word> {
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let kind = if edges.contains(&(i, j)) { RelationKind::Br } else { RelationKind::Co };
            rels.extend(make_relation(kind, &[i - 1, j - 1]).expect("arity 2"));
        }
    }
    rels
}

/// Braid group of a diagram: generators `b1..bn`, a braid relation for each
/// joined pair and a commutation relation for every other pair.
pub fn build_br(q: &Quiver) -> Result<Presentation, PresentationError> {
    let edges = simple_edges(q)?;
    Presentation::with_numbered("b", q.vertex_count(), braid_relators(q.vertex_count(), &edges))
}

/// [`build_br`] on the standard labelling of a Dynkin diagram.
pub fn build_br_dynkin(t: DynkinType) -> Presentation {
    build_br(&t.quiver()).expect("Dynkin diagrams are simple")
}

/// Braid relations of the quiver plus, for every cycle `v1 -> ... -> vm`
/// in the potential, `R_i = R_{i+1}` for `i = 1..m-1`, where
/// `R_i = b_{v_i} b_{v_{i+1}} ...` has length `2m - 2` (indices mod `m`).
pub fn build_at(qp: &Qp) -> Result<Presentation, PresentationError> {
    let q = &qp.quiver;
    let edges = simple_edges(q)?;
    let mut rels = braid_relators(q.vertex_count(), &edges);
    for (cycle, _) in qp.potential.terms() {
        let vertices: Vec<usize> = cycle
            .iter()
            .map(|id| q.arrow(id).expect("potential arrows exist").source - 1)
            .collect();
        let m = vertices.len();
        let r = |i: usize| {
            let ls: Vec<Letter> = (0..2 * m - 2).map(|k| Letter::gen(vertices[(i + k) % m])).collect();
            Word::new(&ls)
        };
        for i in 0..m - 1 {
            rels.push(r(i).concat(&r(i + 1).inverse()));
        }
    }
    Presentation::with_numbered("b", q.vertex_count(), rels)
}
