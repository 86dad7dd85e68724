#[path = "../../core/tests/common/mod.rs"]
mod common;

use clusterbraid::format::{parse_document, parse_quiver, serialize_quiver};
use clusterbraid::ops::mutate_sequence;
use clusterbraid::session::Session;
use clusterbraid_core::qp::normal_form;
use common::arb_qp;
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Action {
    Mutate(usize),
    Undo,
}

fn arb_action() -> impl Strategy<Value = Action> {
    prop_oneof![3 => (1usize..=5).prop_map(Action::Mutate), 1 => Just(Action::Undo)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quiver_documents_round_trip(qp in arb_qp()) {
        let text = serialize_quiver(&qp);
        let parsed = parse_quiver(&text).unwrap();
        prop_assert_eq!(&parsed, &qp);
        prop_assert_eq!(serialize_quiver(&parsed), text);
    }

    #[test]
    fn sessions_equal_their_replay(qp in arb_qp(), actions in proptest::collection::vec(arb_action(), 0..8)) {
        let n = qp.vertex_count();
        let mut s = Session::new("p", qp.clone());
        let mut applied = Vec::new();
        for a in actions {
            match a {
                Action::Mutate(k) => {
                    let k = (k - 1) % n + 1;
                    s.mutate(k).unwrap();
                    applied.push(k);
                }
                Action::Undo => {
                    prop_assert_eq!(s.undo().is_ok(), applied.pop().is_some());
                }
            }
        }
        prop_assert_eq!(s.history(), &applied[..]);
        let expected = mutate_sequence(&qp, &applied).unwrap();
        prop_assert_eq!(normal_form(s.current()), normal_form(&expected));
        prop_assert_eq!(normal_form(&s.replay().unwrap()), normal_form(&expected));
        let state = s.state();
        prop_assert_eq!(normal_form(&parse_document(&state.document).unwrap()), normal_form(s.current()));
    }
}
