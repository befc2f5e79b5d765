//! Single-crossing voter orders: testing, search, and obstruction witnesses.
//!
//! A profile is single-crossing in a voter order when, for every pair of
//! alternatives, the voters preferring the first over the second form a
//! contiguous prefix or suffix of the order: walking the line of voters, each
//! pairwise comparison changes orientation at most once.
//!
//! [`find_sc_order`] searches for such an order. It guesses the first voter,
//! sorts the rest by swap distance from that voter with ties broken by id,
//! and verifies. In a single-crossing order the disagreement sets against the
//! first voter are nested, so equal distance forces identical rankings;
//! sorting by distance therefore recovers a valid order whenever the guessed
//! first voter begins one.
//!
//! [`find_sc_obstruction`] explains failures through two forbidden patterns:
//! three voters that are each the odd one out on a pair of their own, and
//! four voters realizing all four orientation combinations on two pairs.

use crate::profile::{AltId, Profile, VoterId};

/// A left-to-right ordering of all voters.
pub type VoterOrder = Vec<VoterId>;

/// The lexicographically smaller of an order and its reversal. Reversal never
/// changes which profiles are single-crossing on an order.
pub fn canonical_order(order: &[VoterId]) -> VoterOrder {
    let mut rev = order.to_vec();
    rev.reverse();
    if order <= rev.as_slice() {
        order.to_vec()
    } else {
        rev
    }
}

/// True when every pair of alternatives changes orientation at most once
/// along `order`.
///
/// Panics when `order` is not a permutation of `1..=p.n()`.
pub fn is_single_crossing_on(p: &Profile, order: &[VoterId]) -> bool {
    let n = p.n();
    assert_eq!(order.len(), n, "order must list every voter exactly once");
    let mut seen = vec![false; n];
    for &v in order {
        assert!(v >= 1 && v <= n, "order entry {v} outside 1..={n}");
        assert!(!seen[v - 1], "order repeats voter {v}");
        seen[v - 1] = true;
    }
    let rank = p.position_matrix();
    let m = p.m();
    for a in 1..=m {
        for b in a + 1..=m {
            let mut flips = 0;
            let mut prev = None;
            for &v in order {
                let cur = rank[v - 1][a - 1] < rank[v - 1][b - 1];
                if prev.is_some_and(|pv| pv != cur) {
                    flips += 1;
                    if flips > 1 {
                        return false;
                    }
                }
                prev = Some(cur);
            }
        }
    }
    true
}

/// Number of alternative pairs on which voters `u` and `v` disagree.
///
/// Panics when a voter id is out of range.
pub fn kendall_distance(p: &Profile, u: VoterId, v: VoterId) -> usize {
    let ru = p.ranking(u).positions();
    let rv = p.ranking(v).positions();
    let m = p.m();
    let mut d = 0;
    for a in 1..=m {
        for b in a + 1..=m {
            if (ru[a - 1] < ru[b - 1]) != (rv[a - 1] < rv[b - 1]) {
                d += 1;
            }
        }
    }
    d
}

/// Finds a voter order in which `p` is single-crossing, canonicalized, or
/// `None` when no such order exists.
pub fn find_sc_order(p: &Profile) -> Option<VoterOrder> {
    let n = p.n();
    for first in 1..=n {
        let dist: Vec<usize> = (1..=n).map(|u| kendall_distance(p, first, u)).collect();
        let mut order: VoterOrder = (1..=n).collect();
        order.sort_by_key(|&u| (dist[u - 1], u));
        if is_single_crossing_on(p, &order) {
            return Some(canonical_order(&order));
        }
    }
    None
}

/// A small subprofile showing that no single-crossing order exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScWitness {
    /// `voters[t]` disagrees with the other two voters on `pairs[t]`, stored
    /// majority-preferred element first. Whoever is ordered between the other
    /// two makes their pair change orientation twice.
    Gamma {
        voters: [VoterId; 3],
        pairs: [(AltId, AltId); 3],
    },
    /// The four voters realize all four orientation combinations on the two
    /// pairs, in the order `++`, `+-`, `-+`, `--` (`+` prefers the first
    /// element). Two pairs admit at most three combinations along one order.
    Delta {
        voters: [VoterId; 4],
        pairs: [(AltId, AltId); 2],
    },
}

/// Finds a forbidden pattern certifying that `p` is not single-crossing, or
/// `None` when some single-crossing order exists.
///
/// Scans voter triples for the odd-one-out pattern first, then pairs of
/// alternative pairs for the four-orientation pattern; the first hit wins, so
/// the result is deterministic.
pub fn find_sc_obstruction(p: &Profile) -> Option<ScWitness> {
    let n = p.n();
    let m = p.m();
    let rank = p.position_matrix();
    let pref = |v: VoterId, x: AltId, y: AltId| rank[v - 1][x - 1] < rank[v - 1][y - 1];

    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let trio = [i, j, k];
                let mut pairs = [(0, 0); 3];
                let mut complete = true;
                for t in 0..3 {
                    let (a, b) = match t {
                        0 => (1, 2),
                        1 => (0, 2),
                        _ => (0, 1),
                    };
                    let mut found = None;
                    'pairs: for x in 1..=m {
                        for y in x + 1..=m {
                            let votes = [
                                pref(trio[0], x, y),
                                pref(trio[1], x, y),
                                pref(trio[2], x, y),
                            ];
                            if votes[a] == votes[b] && votes[t] != votes[a] {
                                // Majority-preferred element first.
                                found = Some(if votes[t] { (y, x) } else { (x, y) });
                                break 'pairs;
                            }
                        }
                    }
                    match found {
                        Some(pr) => pairs[t] = pr,
                        None => {
                            complete = false;
                            break;
                        }
                    }
                }
                if complete {
                    return Some(ScWitness::Gamma {
                        voters: trio,
                        pairs,
                    });
                }
            }
        }
    }

    let all_pairs: Vec<(AltId, AltId)> = (1..=m)
        .flat_map(|x| (x + 1..=m).map(move |y| (x, y)))
        .collect();
    for (qi, &q1) in all_pairs.iter().enumerate() {
        for &q2 in &all_pairs[qi + 1..] {
            let mut reps: [Option<VoterId>; 4] = [None; 4];
            for v in 1..=n {
                let idx = match (pref(v, q1.0, q1.1), pref(v, q2.0, q2.1)) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                };
                if reps[idx].is_none() {
                    reps[idx] = Some(v);
                }
            }
            if let [Some(a), Some(b), Some(c), Some(d)] = reps {
                return Some(ScWitness::Delta {
                    voters: [a, b, c, d],
                    pairs: [q1, q2],
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{arb_profile, example23, permutations};
    use proptest::prelude::*;

    fn brute_force_is_sc(p: &Profile) -> bool {
        permutations(p.n())
            .iter()
            .any(|ord| is_single_crossing_on(p, ord))
    }

    #[test]
    fn example_is_single_crossing_in_given_order() {
        let p = example23();
        assert!(is_single_crossing_on(&p, &[1, 2, 3]));
        assert_eq!(find_sc_order(&p), Some(vec![1, 2, 3]));
        assert_eq!(find_sc_obstruction(&p), None);
    }

    #[test]
    fn example_is_not_single_crossing_with_middle_swap() {
        // Voters 1 and 2 prefer 2 to 5, voter 3 the reverse, so seating voter
        // 3 between them flips the pair twice.
        assert!(!is_single_crossing_on(&example23(), &[1, 3, 2]));
    }

    #[test]
    fn condorcet_cycle_has_gamma_witness() {
        let p = Profile::parse("3 3\n1 2 3\n2 3 1\n3 1 2\n").unwrap();
        assert_eq!(find_sc_order(&p), None);
        assert_eq!(
            find_sc_obstruction(&p),
            Some(ScWitness::Gamma {
                voters: [1, 2, 3],
                pairs: [(3, 1), (1, 2), (2, 3)]
            })
        );
    }

    #[test]
    fn four_orientations_have_delta_witness() {
        // The voters disagree only on {1,2} and {3,4}, realizing all four
        // orientation combinations; no triple has three odd-one-out roles.
        let p = Profile::parse("4 4\n1 2 3 4\n1 2 4 3\n2 1 3 4\n2 1 4 3\n").unwrap();
        assert_eq!(find_sc_order(&p), None);
        assert_eq!(
            find_sc_obstruction(&p),
            Some(ScWitness::Delta {
                voters: [1, 2, 3, 4],
                pairs: [(1, 2), (3, 4)]
            })
        );
    }

    #[test]
    fn trivial_profiles_are_single_crossing() {
        let p = Profile::parse("3 1\n2 1 3\n").unwrap();
        assert_eq!(find_sc_order(&p), Some(vec![1]));
        let p = Profile::parse("1 3\n1\n1\n1\n").unwrap();
        assert_eq!(find_sc_order(&p), Some(vec![1, 2, 3]));
    }

    #[test]
    fn swap_distance_counts_disagreements() {
        let p = example23();
        assert_eq!(kendall_distance(&p, 1, 1), 0);
        assert_eq!(kendall_distance(&p, 1, 2), 4);
        assert_eq!(kendall_distance(&p, 1, 3), 9);
        assert_eq!(kendall_distance(&p, 2, 1), 4);
    }

    #[test]
    #[should_panic(expected = "order repeats voter")]
    fn rejects_non_permutation_order() {
        is_single_crossing_on(&example23(), &[1, 1, 2]);
    }

    proptest! {
        #[test]
        fn order_search_matches_brute_force(p in arb_profile(4, 5)) {
            match find_sc_order(&p) {
                Some(ord) => {
                    prop_assert!(is_single_crossing_on(&p, &ord));
                    prop_assert_eq!(&canonical_order(&ord), &ord);
                }
                None => prop_assert!(!brute_force_is_sc(&p)),
            }
        }

        #[test]
        fn obstruction_found_exactly_when_not_single_crossing(p in arb_profile(4, 5)) {
            let witness = find_sc_obstruction(&p);
            prop_assert_eq!(witness.is_none(), find_sc_order(&p).is_some());
            match witness {
                None => {}
                Some(ScWitness::Gamma { voters, pairs }) => {
                    for (t, &(maj, odd)) in pairs.iter().enumerate() {
                        for (u, v) in voters.into_iter().enumerate() {
                            if u == t {
                                prop_assert!(p.prefers(v, odd, maj));
                            } else {
                                prop_assert!(p.prefers(v, maj, odd));
                            }
                        }
                    }
                }
                Some(ScWitness::Delta { voters, pairs: [q1, q2] }) => {
                    let combos: Vec<(bool, bool)> = voters
                        .into_iter()
                        .map(|v| (p.prefers(v, q1.0, q1.1), p.prefers(v, q2.0, q2.1)))
                        .collect();
                    prop_assert_eq!(combos, vec![(true, true), (true, false), (false, true), (false, false)]);
                }
            }
        }

        #[test]
        fn single_crossing_test_is_reversal_invariant(
            p in arb_profile(4, 5),
            shuffle in proptest::collection::vec(proptest::num::u64::ANY, 5),
        ) {
            let n = p.n();
            let mut order: Vec<usize> = (1..=n).collect();
            order.sort_by_key(|&v| shuffle[v - 1]);
            let mut rev = order.clone();
            rev.reverse();
            prop_assert_eq!(is_single_crossing_on(&p, &order), is_single_crossing_on(&p, &rev));
            prop_assert_eq!(canonical_order(&order), canonical_order(&rev));
        }
    }
}
