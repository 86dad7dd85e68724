use clusterbraid_core::presentation::{
    abelianization, build_at, check_homomorphism, identity_images, knuth_bendix, make_relation, replay,
    tietze_simplify, todd_coxeter, Bounds, LetterOrder, Letter, Presentation, RelationKind, Word,
};
use clusterbraid_core::qp::{Potential, Qp, Quiver};
use proptest::prelude::*;

fn s3() -> Presentation {
    let ab = Word::from_signed(&[1, 2]);
    Presentation::with_numbered("g", 2, vec![Word::from_signed(&[1, 1]), Word::from_signed(&[2, 2]), ab.pow(3)]).unwrap()
}

fn arb_word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((0..gens, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::new(&ls.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect::<Vec<_>>()))
}

fn arb_presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=3).prop_flat_map(|n| {
        proptest::collection::vec(arb_word(n, 6), 0..=3).prop_map(move |rels| {
            let rels = rels.into_iter().filter(|w| !w.letters().is_empty()).collect();
            Presentation::with_numbered("x", n, rels).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn identity_is_a_homomorphism(p in arb_presentation()) {
        let id = identity_images(p.generator_count());
        prop_assert!(check_homomorphism(&p, &p, &id, &Bounds::default()).unwrap().is_verified());
    }

    #[test]
    fn tietze_keeps_abelianization_and_replays(p in arb_presentation(), budget in 0usize..50) {
        let s = tietze_simplify(&p, budget);
        prop_assert_eq!(abelianization(&s.presentation), abelianization(&p));
        prop_assert_eq!(replay(&p, &s.transcript).presentation, s.presentation);
    }

    #[test]
    fn s3_rewriting_agrees_with_cosets(u in arb_word(2, 12), v in arb_word(2, 12)) {
        let p = s3();
        let kb = knuth_bendix(&p, 1000, 20, LetterOrder::default());
        prop_assert!(kb.is_confluent());
        let nu = kb.reduce(u.letters());
        prop_assert_eq!(kb.reduce(&nu), nu.clone());
        let table = todd_coxeter(&p, &[], 100);
        let same_coset = table.act(0, u.letters()) == table.act(0, v.letters());
        prop_assert_eq!(same_coset, nu == kb.reduce(v.letters()));
    }
}

#[test]
fn s3_has_six_normal_forms_and_six_cosets() {
    let p = s3();
    let kb = knuth_bendix(&p, 1000, 20, LetterOrder::default());
    assert_eq!(kb.count_normal_forms(100), Some(6));
    assert_eq!(todd_coxeter(&p, &[], 100).index(), Some(6));
    assert_eq!(todd_coxeter(&p, &[Word::generator(0)], 100).index(), Some(3));
}

#[test]
fn triangle_relation_matches_the_three_cycle_relators() {
    let q = Quiver::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
    let ids: Vec<String> = q.arrows().iter().map(|a| a.id.clone()).collect();
    let at = build_at(&Qp::new(q, Potential::from_cycles(&[&ids]), None).unwrap()).unwrap();
    let mut rels = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        rels.extend(make_relation(RelationKind::Br, &[a, b]).unwrap());
    }
    rels.extend(make_relation(RelationKind::Tr, &[0, 1, 2]).unwrap());
    let tr = Presentation::with_numbered("b", 3, rels).unwrap();
    let id = identity_images(3);
    let bounds = Bounds::default();
    assert!(check_homomorphism(&at, &tr, &id, &bounds).unwrap().is_verified());
    assert!(check_homomorphism(&tr, &at, &id, &bounds).unwrap().is_verified());
}
