//! Proptest strategies and fixtures shared by the unit test modules.

use proptest::prelude::*;

use crate::profile::Profile;

/// Three voters over six alternatives; single-peaked on the natural axis and
/// single-crossing in the natural voter order, yet with no line embedding.
pub(crate) const EXAMPLE23: &str = "6 3\n3 2 1 4 5 6\n3 4 2 5 6 1\n5 4 3 6 2 1\n";

pub(crate) fn example23() -> Profile {
    Profile::parse(EXAMPLE23).unwrap()
}

/// Random profile with `1..=max_m` alternatives and `1..=max_n` voters; each
/// ranking is an independent uniform permutation.
pub(crate) fn arb_profile(max_m: usize, max_n: usize) -> impl Strategy<Value = Profile> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        let row = Just((1..=m).collect::<Vec<usize>>()).prop_shuffle();
        proptest::collection::vec(row, n).prop_map(move |rows| Profile::new(m, rows).unwrap())
    })
}

/// All orderings of `1..=m`, lexicographically.
pub(crate) fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for a in 1..=m {
            if !used[a - 1] {
                used[a - 1] = true;
                cur.push(a);
                rec(m, cur, used, out);
                cur.pop();
                used[a - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(m, &mut Vec::with_capacity(m), &mut vec![false; m], &mut out);
    out
}
