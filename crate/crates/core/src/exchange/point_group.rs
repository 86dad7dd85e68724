use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::graph::{ExchangeGraph, FaceKind};
use crate::presentation::{Letter, Presentation, Word};

/// How the spanning tree of the underlying undirected graph is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SpanningTree {
    /// Breadth-first from the base, edges in direction order.
    #[default]
    Bfs,
    /// Greedy over edge ids in the given priority order (any edges left
    /// out are considered afterwards in id order).
    EdgeOrder(Vec<usize>),
}

/// The length-two loop `e_i` followed by the return edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistLoop {
    pub vertex: usize,
    pub direction: usize,
    pub edges: [usize; 2],
    pub word: Word,
}

/// Presentation of the point group at the base: one generator per directed
/// edge off the spanning tree, one relator per face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointGroup {
    pub presentation: Presentation,
    /// Generator of each edge; `None` for tree edges.
    pub generator_of_edge: Vec<Option<usize>>,
    pub tree_edges: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn spanning_tree(g: &ExchangeGraph, choice: &SpanningTree) -> Vec<usize> {
    let mut tree = Vec::new();
    match choice {
        SpanningTree::Bfs => {
            let mut seen = vec![false; g.vertex_count()];
            seen[g.base()] = true;
            let mut queue = VecDeque::from([g.base()]);
            while let Some(v) = queue.pop_front() {
                for k in 0..g.rank() {
                    let e = g.edge(v, k);
                    if !seen[e.target] {
                        seen[e.target] = true;
                        tree.push(g.edge_id(v, k));
                        queue.push_back(e.target);
                    }
                }
            }
        }
        SpanningTree::EdgeOrder(order) => {
            let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
            let rest = (0..g.edge_count()).filter(|e| !order.contains(e));
            for id in order.iter().copied().chain(rest) {
                let e = &g.edges()[id];
                let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
                if a != b {
                    parent[a] = b;
                    tree.push(id);
                }
            }
        }
    }
    tree
}

impl PointGroup {
    pub fn new(g: &ExchangeGraph, include_hexagons: bool, tree: &SpanningTree) -> Self {
        let tree_edges = spanning_tree(g, tree);
        let mut generator_of_edge = vec![None; g.edge_count()];
        let mut names = Vec::new();
        for (id, e) in g.edges().iter().enumerate() {
            if !tree_edges.contains(&id) {
                generator_of_edge[id] = Some(names.len());
                names.push(format!("e{}_{}", e.source, e.direction + 1));
            }
        }
        let mut pg = PointGroup {
            presentation: Presentation::new(names.clone(), Vec::new()).expect("no relators"),
            generator_of_edge,
            tree_edges,
        };
        let relators = g
            .faces()
            .iter()
            .filter(|f| include_hexagons || f.kind != FaceKind::Hexagon)
            .map(|f| pg.path_word(&f.paths.0).concat(&pg.path_word(&f.paths.1).inverse()))
            .collect();
        pg.presentation = Presentation::new(names, relators).expect("edge generators");
        pg
    }

    /// Word of a directed edge path; tree edges are trivial.
    pub fn path_word(&self, edges: &[usize]) -> Word {
        let ls: Vec<Letter> = edges.iter().filter_map(|&e| self.generator_of_edge[e]).map(Letter::gen).collect();
        Word::new(&ls)
    }

    pub fn twist_loop(&self, g: &ExchangeGraph, v: usize, direction: usize) -> TwistLoop {
        let w = g.walk(v, &[direction, direction]);
        TwistLoop { vertex: v, direction, edges: [w.edges[0], w.edges[1]], word: self.path_word(&w.edges) }
    }

    /// Twist loop of every direction at `v`.
    pub fn twist_loops(&self, g: &ExchangeGraph, v: usize) -> Vec<TwistLoop> {
        (0..g.rank()).map(|i| self.twist_loop(g, v, i)).collect()
    }

    /// The presentation with generators `t1..tn` appended and defined by
    /// the base twist loops, numbered by the directions of `labels`
    /// (`labels[i]` is the base direction of `ti`). Returns the indices of
    /// the new generators.
    pub fn with_twist_generators(&self, g: &ExchangeGraph, labels: &[usize]) -> (Presentation, Vec<usize>) {
        let edges = self.presentation.generator_count();
        let mut names: Vec<String> = self.presentation.generators().to_vec();
        let mut relators = self.presentation.relators().to_vec();
        let mut twists = Vec::new();
        for (i, &d) in labels.iter().enumerate() {
            let t = edges + i;
            names.push(format!("t{}", i + 1));
            twists.push(t);
            relators.push(Word::generator(t).inverse().concat(&self.twist_loop(g, g.base(), d).word));
        }
        (Presentation::new(names, relators).expect("valid generators"), twists)
    }
}

/// Point-group presentation with the breadth-first tree.
pub fn fundamental_presentation(g: &ExchangeGraph, include_hexagons: bool) -> Presentation {
    PointGroup::new(g, include_hexagons, &SpanningTree::Bfs).presentation
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::{build_ceg, zero_matrix, Seed};
    use crate::presentation::abelianization;

    #[test]
    fn a1a1_abelianizes_to_z2() {
        let g = build_ceg(&Seed::initial(zero_matrix(2)).unwrap(), 100).unwrap();
        let p = fundamental_presentation(&g, true);
        let ab = abelianization(&p);
        assert_eq!((ab.free_rank, ab.torsion.len()), (2, 0));
    }

    #[test]
    fn generator_count_is_cycle_rank() {
        let g = build_ceg(&Seed::initial(alloc::vec![alloc::vec![0, 1], alloc::vec![-1, 0]]).unwrap(), 100).unwrap();
        let pg = PointGroup::new(&g, false, &SpanningTree::Bfs);
        assert_eq!(pg.presentation.generator_count(), 10 - 4);
        assert_eq!(pg.presentation.relators().len(), 5);
        let other = PointGroup::new(&g, false, &SpanningTree::EdgeOrder(alloc::vec![9, 8, 7, 6]));
        assert_eq!(other.tree_edges.len(), 4);
    }

    #[test]
    fn trivial_graph() {
        let g = build_ceg(&Seed::initial(Vec::new()).unwrap(), 10).unwrap();
        let p = fundamental_presentation(&g, true);
        assert_eq!((p.generator_count(), p.relators().len()), (0, 0));
    }
}
