//! Single-peaked axes: testing, enumeration, and obstruction witnesses.
//!
//! An axis is a left-to-right ordering of all alternatives. A voter is
//! single-peaked on an axis when their preference rises along the axis up to
//! their favorite alternative and falls after it; a profile is single-peaked
//! on an axis when every voter is. Equivalently, within any contiguous axis
//! window, each voter's least preferred alternative of the window sits at one
//! of the window's two ends.
//!
//! [`enumerate_axes`] lists every axis a profile is single-peaked on, up to
//! reversal. It peels alternatives from the outside in: at each step the
//! voters' worst remaining alternatives are the only candidates for the free
//! ends of the unplaced window, giving a branching factor of at most two.
//! Adjacent-pair prunes cut inconsistent branches early, and a full test on
//! each completed axis covers the one adjacency the prunes never see, the
//! junction where the two ends of the construction meet.
//!
//! [`find_sp_obstruction`] explains failures: a profile is single-peaked on
//! some axis exactly when it contains neither of two small forbidden
//! patterns, a 3-voter/3-alternative one and a 2-voter/4-alternative one,
//! returned here as an [`SpWitness`].

use std::collections::BTreeSet;

use crate::profile::{AltId, Profile, VoterId};

/// Default bound on the number of axes [`enumerate_axes`] returns.
pub const DEFAULT_AXIS_CAP: usize = 1024;

/// A left-to-right ordering of all alternatives.
pub type Axis = Vec<AltId>;

/// The lexicographically smaller of an axis and its reversal. Reversing an
/// axis never changes which profiles are single-peaked on it.
pub fn canonical_axis(axis: &[AltId]) -> Axis {
    let mut rev = axis.to_vec();
    rev.reverse();
    if axis <= rev.as_slice() {
        axis.to_vec()
    } else {
        rev
    }
}

/// True when every voter of `p` is single-peaked on `axis`.
///
/// Panics when `axis` is not a permutation of `1..=p.m()`.
pub fn is_single_peaked_on(p: &Profile, axis: &[AltId]) -> bool {
    let m = p.m();
    assert_eq!(
        axis.len(),
        m,
        "axis must list every alternative exactly once"
    );
    let mut pos = vec![usize::MAX; m];
    for (i, &a) in axis.iter().enumerate() {
        assert!(a >= 1 && a <= m, "axis entry {a} outside 1..={m}");
        assert!(pos[a - 1] == usize::MAX, "axis repeats alternative {a}");
        pos[a - 1] = i;
    }
    // Walk each ranking worst to best; every step must strip an end of the
    // still-unseen axis window.
    p.rankings().iter().all(|r| {
        let (mut lo, mut hi) = (0, m - 1);
        for &alt in r.order().iter().rev() {
            let pp = pos[alt - 1];
            if pp == lo {
                lo += 1;
            } else if pp == hi {
                hi -= 1;
            } else {
                return false;
            }
        }
        true
    })
}

/// All axes a profile is single-peaked on, canonicalized and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisEnumeration {
    axes: Vec<Axis>,
    truncated: bool,
}

impl AxisEnumeration {
    /// Canonical axes in lexicographic order, without duplicates.
    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    /// True when the cap cut the enumeration short; more axes exist.
    pub fn truncated(&self) -> bool {
        self.truncated
    }
}

/// Enumerates every axis (up to reversal) on which `p` is single-peaked,
/// stopping after `cap` distinct axes. The result is empty exactly when `p`
/// is not single-peaked.
///
/// Panics when `cap` is zero.
pub fn enumerate_axes(p: &Profile, cap: usize) -> AxisEnumeration {
    assert!(cap >= 1, "axis cap must be at least 1");
    let mut peeler = Peeler {
        p,
        rank: p.position_matrix(),
        tops: p.rankings().iter().map(|r| r.top()).collect(),
        left: Vec::with_capacity(p.m()),
        right: Vec::with_capacity(p.m()),
        side: vec![Side::Unplaced; p.m()],
        found: BTreeSet::new(),
        truncated: false,
        cap,
    };
    peeler.search();
    AxisEnumeration {
        axes: peeler.found.into_iter().collect(),
        truncated: peeler.truncated,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Unplaced,
    Left,
    Right,
}

struct Peeler<'a> {
    p: &'a Profile,
    rank: Vec<Vec<usize>>,
    tops: Vec<AltId>,
    left: Vec<AltId>,
    /// Outside-in: `right[0]` is the rightmost axis position.
    right: Vec<AltId>,
    side: Vec<Side>,
    found: BTreeSet<Axis>,
    truncated: bool,
    cap: usize,
}

impl Peeler<'_> {
    /// Explores all placements; returns false once the cap stops the search.
    fn search(&mut self) -> bool {
        let m = self.p.m();
        let placed = self.left.len() + self.right.len();
        if placed == m {
            return self.emit();
        }
        // Each voter's worst unplaced alternative must take a free end.
        let mut ends: Vec<AltId> = Vec::with_capacity(3);
        for v in 1..=self.p.n() {
            let rv = &self.rank[v - 1];
            let w = (1..=m)
                .filter(|&a| self.side[a - 1] == Side::Unplaced)
                .max_by_key(|&a| rv[a - 1])
                .unwrap();
            if !ends.contains(&w) {
                ends.push(w);
                if ends.len() > 2 {
                    // Three would-be extremes cannot share two ends.
                    return true;
                }
            }
        }
        if placed + 1 == m {
            // The junction element: both its neighbors are already placed, so
            // no single-sided prune applies; emit and let the full test rule.
            self.place_left(ends[0]);
            let go = self.search();
            self.unplace_left();
            return go;
        }
        if ends.len() == 1 {
            let e = ends[0];
            if self.can_left(e) {
                self.place_left(e);
                let go = self.search();
                self.unplace_left();
                if !go {
                    return false;
                }
            }
            if self.can_right(e) {
                self.place_right(e);
                let go = self.search();
                self.unplace_right();
                if !go {
                    return false;
                }
            }
        } else {
            // Two distinct extremes must occupy the two free ends, one each.
            for (l, r) in [(ends[0], ends[1]), (ends[1], ends[0])] {
                if self.can_left(l) && self.can_right(r) {
                    self.place_left(l);
                    self.place_right(r);
                    let go = self.search();
                    self.unplace_right();
                    self.unplace_left();
                    if !go {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks the axis adjacency created by pushing `x` onto the left stack:
    /// voters whose peak is already left of `x` must be falling there, all
    /// others still rising.
    fn can_left(&self, x: AltId) -> bool {
        let Some(&prev) = self.left.last() else {
            return true;
        };
        (1..=self.p.n()).all(|v| {
            let rv = &self.rank[v - 1];
            if self.side[self.tops[v - 1] - 1] == Side::Left {
                rv[prev - 1] < rv[x - 1]
            } else {
                rv[x - 1] < rv[prev - 1]
            }
        })
    }

    fn can_right(&self, x: AltId) -> bool {
        let Some(&prev) = self.right.last() else {
            return true;
        };
        (1..=self.p.n()).all(|v| {
            let rv = &self.rank[v - 1];
            if self.side[self.tops[v - 1] - 1] == Side::Right {
                rv[prev - 1] < rv[x - 1]
            } else {
                rv[x - 1] < rv[prev - 1]
            }
        })
    }

    fn place_left(&mut self, a: AltId) {
        self.left.push(a);
        self.side[a - 1] = Side::Left;
    }

    fn unplace_left(&mut self) {
        let a = self.left.pop().unwrap();
        self.side[a - 1] = Side::Unplaced;
    }

    fn place_right(&mut self, a: AltId) {
        self.right.push(a);
        self.side[a - 1] = Side::Right;
    }

    fn unplace_right(&mut self) {
        let a = self.right.pop().unwrap();
        self.side[a - 1] = Side::Unplaced;
    }

    fn emit(&mut self) -> bool {
        let mut axis: Axis = self.left.clone();
        axis.extend(self.right.iter().rev());
        // The prunes never compare the pair across the junction of the two
        // stacks; the full test keeps the enumeration sound.
        if is_single_peaked_on(self.p, &axis) {
            self.found.insert(canonical_axis(&axis));
            if self.found.len() > self.cap {
                self.found.pop_last();
                self.truncated = true;
                return false;
            }
        }
        true
    }
}

/// A small subprofile showing that no single-peaked axis exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpWitness {
    /// Each voter ranks a different member of the triple last within it, but
    /// an axis window has only two ends for three would-be extremes.
    /// `voters[t]` is the voter whose worst among `alts` is `alts[t]`.
    Triple {
        voters: [VoterId; 3],
        alts: [AltId; 3],
    },
    /// The two voters traverse `a, b, c` in opposite directions, forcing `b`
    /// strictly between `a` and `c` on any axis; both prefer `d` to `b`, yet
    /// `d` cannot sit on both sides of `b` at once.
    Interval4 {
        voters: [VoterId; 2],
        alts: [AltId; 4],
    },
}

/// Finds a forbidden pattern certifying that `p` is not single-peaked, or
/// `None` when `p` is single-peaked on some axis.
///
/// Scans all alternative triples against voter triples first, then all
/// 4-element subsets against voter pairs; the first hit wins, so the result
/// is deterministic.
pub fn find_sp_obstruction(p: &Profile) -> Option<SpWitness> {
    let m = p.m();
    let n = p.n();
    let rank = p.position_matrix();
    let worst3 = |v: VoterId, trip: [AltId; 3]| -> AltId {
        let rv = &rank[v - 1];
        trip.into_iter().max_by_key(|&x| rv[x - 1]).unwrap()
    };
    for a in 1..=m {
        for b in a + 1..=m {
            for c in b + 1..=m {
                for i in 1..=n {
                    for j in i + 1..=n {
                        for k in j + 1..=n {
                            let ws = [
                                worst3(i, [a, b, c]),
                                worst3(j, [a, b, c]),
                                worst3(k, [a, b, c]),
                            ];
                            if ws[0] != ws[1] && ws[0] != ws[2] && ws[1] != ws[2] {
                                let mut voters = [0; 3];
                                for (v, w) in [i, j, k].into_iter().zip(ws) {
                                    let role = if w == a {
                                        0
                                    } else if w == b {
                                        1
                                    } else {
                                        2
                                    };
                                    voters[role] = v;
                                }
                                return Some(SpWitness::Triple {
                                    voters,
                                    alts: [a, b, c],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    for s1 in 1..=m {
        for s2 in s1 + 1..=m {
            for s3 in s2 + 1..=m {
                for s4 in s3 + 1..=m {
                    let subset = [s1, s2, s3, s4];
                    for i in 1..=n {
                        for j in i + 1..=n {
                            let ri = &rank[i - 1];
                            let rj = &rank[j - 1];
                            // All assignments of roles a, b, c, d to the
                            // subset, in lexicographic tuple order.
                            for &a in &subset {
                                for &b in &subset {
                                    if b == a {
                                        continue;
                                    }
                                    for &c in &subset {
                                        if c == a || c == b {
                                            continue;
                                        }
                                        for &d in &subset {
                                            if d == a || d == b || d == c {
                                                continue;
                                            }
                                            if ri[a - 1] < ri[b - 1]
                                                && ri[b - 1] < ri[c - 1]
                                                && ri[d - 1] < ri[b - 1]
                                                && rj[c - 1] < rj[b - 1]
                                                && rj[b - 1] < rj[a - 1]
                                                && rj[d - 1] < rj[b - 1]
                                            {
                                                return Some(SpWitness::Interval4 {
                                                    voters: [i, j],
                                                    alts: [a, b, c, d],
                                                });
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}
