use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use super::potential::add_path;
use super::{
    check_mutable, starred, validate_superpotential_degree, validate_quiver, Arrow, Coeff,
    CompositeNamer, PathSum, Potential, QpError, Quiver, ValidationFlags,
};

/// A quiver with potential, optionally carrying the Calabi–Yau degree `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Qp {
    pub quiver: Quiver,
    pub potential: Potential,
    pub degree_n: Option<u32>,
}

impl Qp {
    /// Checks that every term is a closed path of the quiver and, when `N`
    /// is given, the degree conditions.
    pub fn new(quiver: Quiver, potential: Potential, degree_n: Option<u32>) -> Result<Self, QpError> {
        potential.check_composable(&quiver)?;
        let qp = Qp { quiver, potential, degree_n };
        if qp.degree_n.is_some() {
            let report = validate_superpotential_degree(&qp)?;
            if let Some(v) = report.violations.first() {
                return Err(QpError::DegreeViolation(v.to_string()));
            }
        }
        Ok(qp)
    }

    /// The quiver with zero potential.
    pub fn plain(quiver: Quiver) -> Self {
        Qp { quiver, potential: Potential::zero(), degree_n: None }
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }
}

impl fmt::Display for Qp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; W = {}", self.quiver, self.potential)
    }
}

/// Unreduced mutation at `k`: composite arrows `[ba]` for every path
/// `b: i->k`, `a: k->j`, reversed arrows at `k`, the potential rewritten
/// through the composites plus `sum [ba] a* b*`.
pub fn premutate_qp(qp: &Qp, k: usize) -> Result<Qp, QpError> {
    let q = &qp.quiver;
    check_mutable(q, k)?;
    for a in q.arrows() {
        if a.source == k && a.target == k {
            return Err(QpError::TwoCycleAtVertex(k));
        }
        if a.target == k && q.arrows().iter().any(|b| b.source == k && b.target == a.source) {
            return Err(QpError::TwoCycleAtVertex(k));
        }
    }
    qp.potential.check_composable(q)?;

    let mut namer = CompositeNamer::new(k, q.arrows().iter().map(|a| a.id.as_str()));
    let mut arrows = Vec::with_capacity(q.arrows().len());
    for a in q.arrows() {
        if a.source == k || a.target == k {
            let id = starred(&a.id);
            namer.reserve(&id);
            arrows.push(Arrow { id, source: a.target, target: a.source, degree: a.degree });
        } else {
            arrows.push(a.clone());
        }
    }
    let incoming: Vec<&Arrow> = q.arrows().iter().filter(|a| a.target == k).collect();
    let outgoing: Vec<&Arrow> = q.arrows().iter().filter(|a| a.source == k).collect();
    let mut composite: BTreeMap<(&str, &str), String> = BTreeMap::new();
    let mut delta = Vec::new();
    for b in &incoming {
        for a in &outgoing {
            let id = namer.next(b.source, a.target);
            arrows.push(Arrow::new(id.clone(), b.source, a.target));
            delta.push([id.clone(), starred(&a.id), starred(&b.id)]);
            composite.insert((b.id.as_str(), a.id.as_str()), id);
        }
    }

    let map = q.arrow_map();
    let mut w = Potential::zero();
    for (cycle, c) in qp.potential.terms() {
        let n = cycle.len();
        let start = (0..n).find(|&i| map[cycle[i].as_str()].source != k).unwrap_or(0);
        let rotated: Vec<&String> = (0..n).map(|i| &cycle[(start + i) % n]).collect();
        let mut out = Vec::with_capacity(n);
        let mut i = 0;
        while i < n {
            let x = rotated[i];
            if map[x.as_str()].target == k && i + 1 < n {
                let y = rotated[i + 1];
                let id = composite
                    .get(&(x.as_str(), y.as_str()))
                    .ok_or_else(|| QpError::NotComposable(cycle.join(" ")))?;
                out.push(id.clone());
                i += 2;
            } else {
                out.push(x.clone());
                i += 1;
            }
        }
        w.add_term(c, out);
    }
    for t in delta {
        w.add_term(Coeff::one(), t.to_vec());
    }
    Ok(Qp { quiver: Quiver::from_parts(q.vertex_count(), arrows), potential: w, degree_n: qp.degree_n })
}

struct Elimination {
    a: String,
    b: String,
    replacement: PathSum,
}

/// Finds the cheapest admissible elimination among the 2-cycle terms.
fn choose_elimination(qp: &Qp) -> Result<Option<Elimination>, QpError> {
    let map = qp.quiver.arrow_map();
    let mut best: Option<(usize, Elimination)> = None;
    let mut blocked: Option<String> = None;
    for (cycle, c) in qp.potential.terms() {
        if cycle.len() != 2 {
            continue;
        }
        let (x, y) = (map[cycle[0].as_str()], map[cycle[1].as_str()]);
        if x.degree != 1 || y.degree != 1 || x.source == x.target || x.id == y.id {
            continue;
        }
        for (a, b) in [(x, y), (y, x)] {
            let mut r = qp.potential.cyclic_derivative(&b.id);
            add_path(&mut r, alloc::vec![a.id.clone()], -c);
            let free = r.keys().all(|p| p.iter().all(|z| *z != a.id && *z != b.id));
            let linear_b = qp
                .potential
                .terms()
                .all(|(t, _)| t.iter().filter(|z| **z == b.id).count() <= 1);
            if !(free && linear_b) {
                blocked.get_or_insert_with(|| cycle.join(" "));
                continue;
            }
            let size = r.values().count();
            if best.as_ref().is_none_or(|(s, _)| size < *s) {
                let mut replacement = PathSum::new();
                for (p, v) in r {
                    replacement.insert(p, -v / c);
                }
                best = Some((size, Elimination { a: a.id.clone(), b: b.id.clone(), replacement }));
            }
        }
    }
    match (best, blocked) {
        (Some((_, e)), _) => Ok(Some(e)),
        (None, Some(cycle)) => Err(QpError::NonlinearTwoCycle(cycle)),
        (None, None) => Ok(None),
    }
}

/// Removes 2-cycle terms `c·ab` by the substitution `a -> -(∂_b W - c·a)/c`
/// and deletes `a`, `b`. Iterations are capped at `64·#arrows`.
pub fn reduce_qp(qp: &Qp) -> Result<Qp, QpError> {
    let cap = 64 * qp.quiver.arrows().len().max(1);
    let mut cur = qp.clone();
    for _ in 0..cap {
        let Some(e) = choose_elimination(&cur)? else {
            return Ok(cur);
        };
        let w = cur.potential.substitute(&e.a, &e.replacement);
        if w.contains_arrow(&e.a) || w.contains_arrow(&e.b) {
            return Err(QpError::NonlinearTwoCycle(alloc::format!("{} {}", e.a, e.b)));
        }
        let arrows = cur
            .quiver
            .arrows()
            .iter()
            .filter(|x| x.id != e.a && x.id != e.b)
            .cloned()
            .collect();
        cur = Qp {
            quiver: Quiver::from_parts(cur.quiver.vertex_count(), arrows),
            potential: w,
            degree_n: cur.degree_n,
        };
    }
    if choose_elimination(&cur)?.is_none() {
        return Ok(cur);
    }
    Err(QpError::ReductionCapExceeded(cap))
}

/// Derksen–Weyman–Zelevinsky mutation: [`reduce_qp`] after [`premutate_qp`].
/// Fails if a 2-cycle survives the reduction.
pub fn mutate_qp(qp: &Qp, k: usize) -> Result<Qp, QpError> {
    let out = reduce_qp(&premutate_qp(qp, k)?)?;
    let report = validate_quiver(&out.quiver, ValidationFlags::default());
    if let Some(v) = report.violations.first() {
        return Err(QpError::DegenerateTwoCycles(v.to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::{mutate_quiver, normal_form};
    use alloc::vec;

    fn three_cycle() -> Qp {
        let q = Quiver::new(
            3,
            vec![Arrow::new("a", 1, 2), Arrow::new("b", 2, 3), Arrow::new("c", 3, 1)],
        )
        .unwrap();
        let w = Potential::from_cycles(&[&["a", "b", "c"]]);
        Qp::new(q, w, None).unwrap()
    }

    fn ids(qp: &Qp) -> Vec<(String, usize, usize)> {
        let mut v: Vec<_> =
            qp.quiver.arrows().iter().map(|a| (a.id.clone(), a.source, a.target)).collect();
        v.sort();
        v
    }

    #[test]
    fn premutation_of_three_cycle() {
        let p = premutate_qp(&three_cycle(), 3).unwrap();
        assert_eq!(
            ids(&p),
            vec![
                ("a".to_string(), 1, 2),
                ("b*".to_string(), 3, 2),
                ("c*".to_string(), 1, 3),
                ("m3_2_1_0".to_string(), 2, 1),
            ]
        );
        let mut expected = Potential::zero();
        expected.add_term(Coeff::one(), vec!["a".into(), "m3_2_1_0".into()]);
        expected.add_term(Coeff::one(), vec!["m3_2_1_0".into(), "c*".into(), "b*".into()]);
        assert_eq!(p.potential, expected);
    }

    #[test]
    fn premutation_of_path() {
        let q = Quiver::new(3, vec![Arrow::new("a", 1, 2), Arrow::new("b", 2, 3)]).unwrap();
        let p = premutate_qp(&Qp::plain(q), 2).unwrap();
        assert_eq!(
            ids(&p),
            vec![("a*".to_string(), 2, 1), ("b*".to_string(), 3, 2), ("m2_1_3_0".to_string(), 1, 3)]
        );
        let terms: Vec<_> = p.potential.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, ["a*", "m2_1_3_0", "b*"].map(String::from).as_slice());
    }

    #[test]
    fn reduction_of_three_cycle_premutation() {
        let r = reduce_qp(&premutate_qp(&three_cycle(), 3).unwrap()).unwrap();
        assert_eq!(ids(&r), vec![("b*".to_string(), 3, 2), ("c*".to_string(), 1, 3)]);
        assert!(r.potential.is_zero());
        let m = mutate_qp(&three_cycle(), 3).unwrap();
        assert_eq!(m, r);
    }

    #[test]
    fn reduction_substitutes_partner_path() {
        // a: 1->2, b: 2->1, p: 1->3, q: 3->2, r: 2->4, s: 4->1
        // W = ab + bpq + 3·ars
        let q = Quiver::new(
            4,
            vec![
                Arrow::new("a", 1, 2),
                Arrow::new("b", 2, 1),
                Arrow::new("p", 1, 3),
                Arrow::new("q", 3, 2),
                Arrow::new("r", 2, 4),
                Arrow::new("s", 4, 1),
            ],
        )
        .unwrap();
        let mut w = Potential::zero();
        w.add_term(Coeff::one(), vec!["a".into(), "b".into()]);
        w.add_term(Coeff::one(), vec!["b".into(), "p".into(), "q".into()]);
        w.add_term(Coeff::from_integer(3), vec!["a".into(), "r".into(), "s".into()]);
        let qp = Qp::new(q, w, None).unwrap();
        let r = reduce_qp(&qp).unwrap();
        // ∂_b W = a + p q, so a -> -p q and 3·a r s becomes -3·p q r s
        assert_eq!(r.quiver.arrows().len(), 4);
        let terms: Vec<_> = r.potential.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, ["p", "q", "r", "s"].map(String::from).as_slice());
        assert_eq!(terms[0].1, Coeff::from_integer(-3));
    }

    #[test]
    fn reduce_without_two_cycles_is_identity() {
        let qp = three_cycle();
        assert_eq!(reduce_qp(&qp).unwrap(), qp);
    }

    #[test]
    fn source_mutation_and_errors() {
        let q = Quiver::from_edges(2, &[(1, 2)]).unwrap();
        let m = mutate_qp(&Qp::plain(q.clone()), 1).unwrap();
        assert_eq!(ids(&m), vec![("a1*".to_string(), 2, 1)]);
        assert!(matches!(mutate_qp(&Qp::plain(q), 4), Err(QpError::InvalidVertex { .. })));
        let two = Quiver::from_edges(2, &[(1, 2), (2, 1)]).unwrap();
        assert!(matches!(premutate_qp(&Qp::plain(two), 1), Err(QpError::TwoCycleAtVertex(1))));
    }

    #[test]
    fn three_cycle_mutation_matches_quiver_mutation_and_involutes() {
        let qp = three_cycle();
        for k in 1..=3 {
            let m = mutate_qp(&qp, k).unwrap();
            let fz = mutate_quiver(&qp.quiver, k).unwrap();
            assert_eq!(m.quiver.exchange_matrix(), fz.exchange_matrix());
            let back = mutate_qp(&m, k).unwrap();
            assert_eq!(normal_form(&back), normal_form(&qp));
        }
    }
}
