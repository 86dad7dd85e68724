#![allow(dead_code)]

use clusterbraid_core::qp::{Arrow, Coeff, Potential, Qp, Quiver};
use clusterbraid_core::surface::{MarkedSurface, Triangulation};
use proptest::prelude::*;

/// Quiver on `n` vertices with `mult[p]` arrows for the `p`-th pair `i < j`
/// (negative: pointing `j -> i`).
pub fn quiver_from_multiplicities(n: usize, mult: &[i8]) -> Quiver {
    let mut arrows = Vec::new();
    let mut pair = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            let m = mult[pair % mult.len()];
            pair += 1;
            let (s, t) = if m > 0 { (i, j) } else { (j, i) };
            for _ in 0..m.unsigned_abs() {
                arrows.push(Arrow::new(format!("a{}", arrows.len() + 1), s, t));
            }
        }
    }
    Quiver::new(n, arrows).unwrap()
}

/// Every oriented 3-cycle of single arrows gets a nonzero coefficient.
/// `None` when some 3-cycle uses a multiple arrow: such potentials are
/// only determined up to changes of variables the normal form cannot see.
pub fn generic_triangle_potential(q: &Quiver, coeffs: &[Coeff]) -> Option<Potential> {
    let arrows = q.arrows();
    let single = |a: &Arrow| q.count(a.source, a.target, 1) == 1;
    let mut w = Potential::zero();
    let mut c = 0;
    for x in arrows {
        for y in arrows.iter().filter(|y| y.source == x.target) {
            for z in arrows.iter().filter(|z| z.source == y.target && z.target == x.source) {
                if !(single(x) && single(y) && single(z)) {
                    return None;
                }
                if x.id < y.id && x.id < z.id {
                    w.add_term(coeffs[c % coeffs.len()], vec![x.id.clone(), y.id.clone(), z.id.clone()]);
                    c += 1;
                }
            }
        }
    }
    Some(w)
}

pub fn arb_quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=5, proptest::collection::vec(-2i8..=2, 10)).prop_map(|(n, m)| quiver_from_multiplicities(n, &m))
}

fn arb_coeff() -> impl Strategy<Value = Coeff> {
    (prop_oneof![-3i64..=-1, 1i64..=3], 1i64..=3).prop_map(|(a, b)| Coeff::new(a, b))
}

/// Cluster-legal QPs with `n <= 5`, at most two parallel arrows and a
/// generic potential on the triangles.
pub fn arb_qp() -> impl Strategy<Value = Qp> {
    (arb_quiver(), proptest::collection::vec(arb_coeff(), 12)).prop_filter_map("multiple arrow on a triangle", |(q, c)| {
        let w = generic_triangle_potential(&q, &c)?;
        Some(Qp::new(q, w, None).unwrap())
    })
}

/// Walks `flips` from the standard triangulation, each choice taken modulo
/// the flippable arcs.
pub fn flip_walk(s: &MarkedSurface, flips: &[usize]) -> Triangulation {
    let mut t = s.standard_triangulation();
    for &f in flips {
        let arcs = t.flippable_arcs();
        if arcs.is_empty() {
            break;
        }
        t = t.flip(arcs[f % arcs.len()]).unwrap();
    }
    t
}

/// Small surfaces: polygons with 4..=8 marks, annuli, a pair of pants and
/// a one-holed torus.
pub fn corpus_surfaces() -> Vec<MarkedSurface> {
    let mut out: Vec<MarkedSurface> = (4..=8).map(|m| MarkedSurface::disk(m).unwrap()).collect();
    for marks in [vec![1, 1], vec![1, 2], vec![2, 2], vec![3, 1], vec![1, 1, 1], vec![2, 1, 1]] {
        out.push(MarkedSurface::new(0, marks).unwrap());
    }
    for marks in [vec![1], vec![2], vec![1, 1]] {
        out.push(MarkedSurface::new(1, marks).unwrap());
    }
    out.push(MarkedSurface::new(2, vec![1]).unwrap());
    out
}
