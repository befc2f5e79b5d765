//! Cross-validation between the closed-form embeddings and the exact
//! solver, at and around the member size where the closed-form guarantees
//! begin to hold.

use prefdom::axes::DEFAULT_AXIS_CAP;
use prefdom::euclid::{induced_ranking, recognize_euclidean, EuclideanStatus};
use prefdom::family::{gen_embedding, gen_profile};

#[test]
fn solver_confirms_deletions_at_first_guaranteed_size() {
    let k = 5;
    let p = gen_profile(k);
    for s in 1..=2 * k {
        let deleted = p.delete_voter(s).unwrap();
        let result = recognize_euclidean(&deleted, DEFAULT_AXIS_CAP);
        assert!(
            matches!(result.status(), EuclideanStatus::Euclidean { .. }),
            "k={k} s={s}: solver disagrees with the closed form"
        );
    }
}

#[test]
fn solver_embeddings_reproduce_deleted_members_by_sorting() {
    for k in [2, 3] {
        let p = gen_profile(k);
        for s in 1..=2 * k {
            let deleted = p.delete_voter(s).unwrap();
            let result = recognize_euclidean(&deleted, DEFAULT_AXIS_CAP);
            let EuclideanStatus::Euclidean { embedding, .. } = result.status() else {
                panic!("k={k} s={s}: expected an embedding");
            };
            for v in 1..=deleted.n() {
                let induced = induced_ranking(embedding, v).unwrap();
                assert_eq!(
                    induced.order(),
                    deleted.ranking(v).order(),
                    "k={k} s={s} v={v}"
                );
            }
        }
    }
}

#[test]
fn closed_form_rankings_match_member_by_sorting() {
    let k = 6;
    let p = gen_profile(k);
    for s in 1..=2 * k {
        let deleted = p.delete_voter(s).unwrap();
        let e = gen_embedding(k, s);
        for v in 1..=deleted.n() {
            // The embedding keeps all 2k voters; skip over the deleted slot.
            let ev = if v >= s { v + 1 } else { v };
            let induced = induced_ranking(&e, ev).unwrap();
            assert_eq!(induced.order(), deleted.ranking(v).order(), "s={s} v={v}");
        }
    }
}
