mod common;

use clusterbraid_core::qp::{
    dynkin_type, is_mutation_dynkin, mutate_qp, mutate_quiver, normal_form, DynkinFamily, DynkinSearch, DynkinType,
    validate_quiver, Potential, Qp, Quiver, ValidationFlags,
};
use common::{arb_qp, arb_quiver};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn quiver_mutation_is_an_involution(q in arb_quiver(), k in 0usize..5) {
        let k = k % q.vertex_count() + 1;
        let back = mutate_quiver(&mutate_quiver(&q, k).unwrap(), k).unwrap();
        prop_assert_eq!(normal_form(&Qp::plain(back)), normal_form(&Qp::plain(q)));
    }

    #[test]
    fn qp_mutation_is_an_involution(qp in arb_qp(), k in 0usize..5) {
        let k = k % qp.vertex_count() + 1;
        let once = mutate_qp(&qp, k).unwrap();
        prop_assert!(validate_quiver(&once.quiver, ValidationFlags::default()).is_cluster_legal());
        prop_assert_eq!(once.vertex_count(), qp.vertex_count());
        let twice = mutate_qp(&once, k).unwrap();
        prop_assert_eq!(normal_form(&twice), normal_form(&qp));
    }

    #[test]
    fn qp_mutation_agrees_with_quiver_mutation(qp in arb_qp(), k in 0usize..5) {
        let k = k % qp.vertex_count() + 1;
        let m = mutate_qp(&qp, k).unwrap();
        let plain = mutate_quiver(&qp.quiver, k).unwrap();
        prop_assert_eq!(m.quiver.exchange_matrix(), plain.exchange_matrix());
    }

    #[test]
    fn normal_form_is_idempotent(qp in arb_qp()) {
        let nf = normal_form(&qp);
        prop_assert_eq!(normal_form(&nf.to_qp()), nf);
    }

    #[test]
    fn normal_form_ignores_arrow_names(qp in arb_qp(), shift in 1usize..7) {
        let rename = |id: &str| format!("z{}", (id[1..].parse::<usize>().unwrap() * 7 + shift) % 101);
        let arrows = qp.quiver.arrows().iter().map(|a| {
            clusterbraid_core::qp::Arrow::new(rename(&a.id), a.source, a.target)
        }).collect();
        let mut w = Potential::zero();
        for (cycle, c) in qp.potential.terms() {
            w.add_term(c, cycle.iter().map(|a| rename(a)).collect());
        }
        let renamed = Qp::new(Quiver::new(qp.vertex_count(), arrows).unwrap(), w, None).unwrap();
        prop_assert_eq!(normal_form(&renamed), normal_form(&qp));
    }

    #[test]
    fn dynkin_type_ignores_orientation(ty in 0usize..9, flips in proptest::collection::vec(any::<bool>(), 8)) {
        let t = [
            DynkinType::new(DynkinFamily::A, 1),
            DynkinType::new(DynkinFamily::A, 4),
            DynkinType::new(DynkinFamily::A, 7),
            DynkinType::new(DynkinFamily::D, 4),
            DynkinType::new(DynkinFamily::D, 5),
            DynkinType::new(DynkinFamily::D, 8),
            DynkinType::new(DynkinFamily::E, 6),
            DynkinType::new(DynkinFamily::E, 7),
            DynkinType::new(DynkinFamily::E, 8),
        ][ty].unwrap();
        let edges: Vec<(usize, usize)> = t
            .edges()
            .into_iter()
            .zip(&flips)
            .map(|((a, b), &f)| if f { (b, a) } else { (a, b) })
            .collect();
        let q = Quiver::from_edges(t.rank(), &edges).unwrap();
        prop_assert_eq!(dynkin_type(&q), Some(t));
    }
}

#[test]
fn markov_quiver_is_mutation_invariant() {
    let markov = Quiver::from_edges(3, &[(1, 2), (1, 2), (2, 3), (2, 3), (3, 1), (3, 1)]).unwrap();
    for k in 1..=3 {
        let m = mutate_quiver(&markov, k).unwrap();
        let b = m.exchange_matrix();
        assert!(b.iter().flatten().all(|x| x.abs() == 2 || *x == 0), "{b:?}");
    }
    assert!(matches!(is_mutation_dynkin(&Qp::plain(markov), 5), DynkinSearch::NoneWithinBound { .. }));
}

#[test]
fn three_cycle_mutates_to_a3() {
    let q = Quiver::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
    let ids: Vec<String> = q.arrows().iter().map(|a| a.id.clone()).collect();
    let qp = Qp::new(q, Potential::from_cycles(&[&ids]), None).unwrap();
    for k in 1..=3 {
        let m = mutate_qp(&qp, k).unwrap();
        assert!(m.potential.is_zero());
        assert_eq!(dynkin_type(&m.quiver), DynkinType::new(DynkinFamily::A, 3));
    }
}
