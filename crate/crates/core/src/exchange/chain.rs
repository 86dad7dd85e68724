use alloc::vec::Vec;

use super::graph::build_ceg;
use super::point_group::{PointGroup, SpanningTree};
use super::{mutate_matrix, negated, ExchangeError, Seed};
use crate::presentation::{build_br, check_homomorphism, Bounds, Presentation, TriState, Word};
use crate::qp::{dynkin_type, DynkinType, Qp, Quiver};

/// Twist loops at a seed in terms of those at its mutation in direction
/// `j`: `t_i -> t'_j^-1 t'_i t'_j` when the quiver has a degree-1 arrow
/// `i -> j`, and `t_i -> t'_i` otherwise (including `i = j`). The formula
/// is the same for every Calabi–Yau dimension `n_cy >= 3`.
pub fn conjugate_twists(q: &Quiver, j: usize, n_cy: u32) -> Result<Vec<Word>, ExchangeError> {
    let n = q.vertex_count();
    if j >= n || n_cy < 3 {
        return Err(ExchangeError::InvalidDirection { direction: j, n });
    }
    let tj = Word::generator(j);
    Ok((0..n)
        .map(|i| {
            if i != j && q.count(i + 1, j + 1, 1) > 0 {
                tj.conjugate(&Word::generator(i))
            } else {
                Word::generator(i)
            }
        })
        .collect())
}

/// Inverse of [`conjugate_twists`]: each `t'_i` as a word in the `t`.
pub fn invert_conjugation(q: &Quiver, j: usize) -> Vec<Word> {
    let tj = Word::generator(j);
    (0..q.vertex_count())
        .map(|i| {
            if i != j && q.count(i + 1, j + 1, 1) > 0 {
                tj.inverse().conjugate(&Word::generator(i))
            } else {
                Word::generator(i)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainResult {
    /// Braid group of the Dynkin quiver reached by the sequence.
    pub braid: Presentation,
    /// Point-group presentation of the exchange graph.
    pub point_group: Presentation,
    /// Image of each braid generator as a word in the base twist loops
    /// `t1..tn` (labelled like the input quiver).
    pub twist_images: Vec<Word>,
    /// The same images in the point-group generators.
    pub images: Vec<Word>,
    pub status: TriState,
}

/// Transports the tautological map `b_i -> t_i` at the Dynkin seed reached
/// by `sequence` (1-based vertices) back to the base seed through
/// [`conjugate_twists`], and checks that the result is a homomorphism from
/// the braid group into the point group.
pub fn dynkin_iso_chain(
    qp: &Qp,
    target: DynkinType,
    sequence: &[usize],
    max_vertices: usize,
    bounds: &Bounds,
) -> Result<ChainResult, ExchangeError> {
    let n = qp.vertex_count();
    let seed = Seed::from_quiver(&qp.quiver);
    // Ext quivers along the sequence
    let mut b = seed.b.clone();
    let mut quivers = Vec::new();
    for &k in sequence {
        if k == 0 || k > n {
            return Err(ExchangeError::InvalidDirection { direction: k, n });
        }
        quivers.push(Quiver::from_exchange_matrix(&b));
        b = mutate_matrix(&b, k - 1);
    }
    let dynkin = Quiver::from_exchange_matrix(&negated(&b));
    if dynkin_type(&dynkin) != Some(target) {
        return Err(ExchangeError::NotDynkin);
    }
    let braid = build_br(&dynkin).map_err(|_| ExchangeError::NotDynkin)?;
    let g = build_ceg(&seed, max_vertices)?;
    let pg = PointGroup::new(&g, true, &SpanningTree::Bfs);

    // words in the twist loops of the current seed, labelled as the input
    let mut images: Vec<Word> = (0..n).map(Word::generator).collect();
    for (q, &k) in quivers.iter().zip(sequence).rev() {
        let back = invert_conjugation(q, k - 1);
        images = images.iter().map(|w| w.substitute(&back)).collect();
    }
    let base_loops: Vec<Word> =
        (0..n).map(|i| pg.twist_loop(&g, g.base(), g.base_relabel()[i]).word).collect();
    let in_edges: Vec<Word> = images.iter().map(|w| w.substitute(&base_loops)).collect();
    let status = check_homomorphism(&braid, &pg.presentation, &in_edges, bounds).expect("image shapes match");
    Ok(ChainResult { braid, point_group: pg.presentation, twist_images: images, images: in_edges, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn conjugation_branches() {
        let q = Quiver::from_edges(2, &[(1, 2)]).unwrap();
        let m = conjugate_twists(&q, 1, 3).unwrap();
        assert_eq!(m[0], Word::from_signed(&[-2, 1, 2]));
        assert_eq!(m[1], Word::from_signed(&[2]));
        // arrows into 1 only: no conjugation
        let m = conjugate_twists(&q, 0, 3).unwrap();
        assert_eq!(m, vec![Word::from_signed(&[1]), Word::from_signed(&[2])]);
        let disjoint = Quiver::from_edges(2, &[]).unwrap();
        assert_eq!(conjugate_twists(&disjoint, 0, 5).unwrap(), vec![Word::generator(0), Word::generator(1)]);
        assert!(conjugate_twists(&q, 2, 3).is_err());
    }

    #[test]
    fn inverse_undoes_conjugation() {
        let q = Quiver::from_edges(3, &[(1, 2), (3, 2), (2, 1)]).unwrap();
        for j in 0..3 {
            let f = conjugate_twists(&q, j, 3).unwrap();
            let g = invert_conjugation(&q, j);
            for (i, w) in f.iter().enumerate() {
                assert_eq!(w.substitute(&g), Word::generator(i));
            }
        }
    }
}
