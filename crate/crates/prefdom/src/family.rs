//! A parametric family of minimally non-Euclidean profiles.
//!
//! For every `k >= 2`, [`gen_profile`] builds a profile with `4k`
//! alternatives and `2k` voters that is single-peaked on the identity axis
//! and single-crossing, yet admits no line embedding, while deleting any
//! single voter makes it embeddable. Members grow with `k`, and their
//! minimality means no fixed list of forbidden subprofiles can ever
//! characterize the Euclidean domain: each member would have to be forbidden
//! itself, but only whole members fail.
//!
//! The negative half is witnessed by [`noneuclid_certificate`]: a cycle of
//! `2k` midpoint constraints, two per voter, whose coefficient sum telescopes
//! to zero, so no embedding satisfies all of them strictly.
//! [`noneuclid_rows_contained`] ties the cycle back to the full constraint
//! system of the profile on its unique axis.
//!
//! The positive half is [`gen_embedding`]: a closed-form embedding for the
//! profile with voter `s` deleted, built from an explicit alternative-spacing
//! recurrence and midpoint voter placements. [`check_lemmas`] verifies the
//! arithmetic facts the closed form relies on; they hold for `k >= 5`, and
//! [`minimality_check`] falls back to the exact solver for smaller `k`.

use num_bigint::BigInt;

use crate::axes::{enumerate_axes, DEFAULT_AXIS_CAP};
use crate::crossing::is_single_crossing_on;
use crate::euclid::{
    build_constraints, recognize_euclidean, verify_embedding, ConstraintMode, Embedding,
    EuclideanStatus,
};
use crate::exactlp::{check_certificate, rat, HomogeneousSystem, Rat};
use crate::profile::{AltId, Profile, VoterId};

/// The family member with `4k` alternatives and `2k` voters.
///
/// Voter `2i-1` prefers upper alternative `2k+2i-1` to lower alternative
/// `2i` but `2i-1` to `2k+2i`; voter `2i` splits the same four alternatives
/// the other way; the final voter closes the cycle. Everything else pads the
/// rankings so that the identity axis is forced.
///
/// Panics when `k < 2`.
pub fn gen_profile(k: usize) -> Profile {
    assert!(k >= 2, "family needs k >= 2");
    let x_piece = |i: usize| (2 * i + 2..=2 * k + 2 * i - 2).rev();
    let y_piece = |i: usize| (1..=2 * i - 2).rev();
    let z_piece = |i: usize| 2 * k + 2 * i + 1..=4 * k;
    let mut rows: Vec<Vec<AltId>> = Vec::with_capacity(2 * k);
    for i in 1..=k {
        let mut row: Vec<AltId> = x_piece(i).collect();
        row.extend([
            2 * i + 1,
            2 * k + 2 * i - 1,
            2 * i,
            2 * i - 1,
            2 * k + 2 * i,
        ]);
        row.extend(y_piece(i));
        row.extend(z_piece(i));
        rows.push(row);
        if i < k {
            let mut row: Vec<AltId> = x_piece(i).collect();
            row.extend([
                2 * k + 2 * i - 1,
                2 * k + 2 * i,
                2 * i + 1,
                2 * i,
                2 * i - 1,
            ]);
            row.extend(y_piece(i));
            row.extend(z_piece(i));
            rows.push(row);
        }
    }
    let mut row: Vec<AltId> = x_piece(k).collect();
    row.extend((2..=2 * k + 1).rev());
    row.extend([4 * k - 1, 4 * k, 1]);
    rows.push(row);
    Profile::new(4 * k, rows).expect("family rows are permutations by construction")
}

/// Alternative positions (integers) and voter positions (quarter-integers)
/// of the closed-form embedding for member `k` with voter `s` deleted.
fn embedding_points(k: usize, s: VoterId) -> (Vec<BigInt>, Vec<Rat>) {
    assert!(k >= 2, "family needs k >= 2");
    assert!(
        s >= 1 && s <= 2 * k,
        "deleted voter {s} out of range 1..={}",
        2 * k
    );
    let ki = k as i64;
    let si = s as i64;
    // Alternative spacings are taken as least nonnegative residues mod 4k.
    let wrap = |v: i64| BigInt::from(v.rem_euclid(4 * ki));
    let two = BigInt::from(2);

    // e[idx] holds the position of alternative idx; e[0] is unused.
    let mut e = vec![BigInt::from(0); 4 * k + 1];
    for i in 1..=ki {
        let idx = (2 * i) as usize;
        let v = &e[idx - 1] + wrap(4 * i - 2 * si - 3);
        e[idx] = v;
        if i < ki {
            let v = &e[idx] + &two;
            e[idx + 1] = v;
        }
    }
    for i in 1..=ki - 1 {
        let lo = (2 * i) as usize;
        let hi = (2 * ki + 2 * i) as usize;
        // The upper odd gap echoes the previous upper gap, shifted by the
        // lower alternative the deletion leaves exposed.
        let sub = if si != 2 * i - 1 { lo + 1 } else { lo + 2 };
        let v = &e[hi - 2] + &e[hi - 3] - &e[sub] + &two;
        e[hi - 1] = v;
        let v = &e[hi - 1] + wrap(4 * i - 2 * si - 1);
        e[hi] = v;
    }
    let last = 4 * k;
    let sub = if si != 2 * ki { 2 } else { 2 * k + 1 };
    let v = &e[last - 2] + &e[last - 3] - &e[sub] + &two;
    e[last - 1] = v;
    let v = if si != 2 * ki {
        &e[last - 1] + &e[2] - &e[1] - &two
    } else {
        &e[last - 1] + &e[2 * k + 1] - &e[2 * k - 1]
    };
    e[last] = v;

    // Voters sit at midpoints of midpoints: the average of the four
    // alternatives whose comparisons pin them down.
    let quarter = |a: usize, b: usize, c: usize, d: usize| -> Rat {
        Rat::new(&e[a] + &e[b] + &e[c] + &e[d], BigInt::from(4))
    };
    let mut f = Vec::with_capacity(2 * k);
    for i in 1..=k - 1 {
        f.push(quarter(2 * i - 1, 2 * i, 2 * k + 2 * i - 1, 2 * k + 2 * i));
        f.push(quarter(
            2 * i + 1,
            2 * i + 2,
            2 * k + 2 * i - 1,
            2 * k + 2 * i,
        ));
    }
    if s != 2 * k {
        f.push(quarter(2 * k - 1, 2 * k, 4 * k - 1, 4 * k));
    } else {
        f.push(quarter(2 * k - 2, 2 * k + 1, 4 * k - 1, 4 * k));
    }
    f.push(quarter(1, 2, 4 * k - 1, 4 * k));
    (e.split_off(1), f)
}

/// The closed-form embedding for member `k` with voter `s` deleted. The
/// embedding keeps all `2k` voter positions and tags voter `s` as deleted;
/// verify it against `gen_profile(k).delete_voter(s)`.
///
/// The construction provably reproduces the deleted profile for `k >= 5`;
/// for smaller `k` it may fail and the exact solver decides instead (see
/// [`minimality_check`]).
///
/// Panics when `k < 2` or `s` is out of range.
pub fn gen_embedding(k: usize, s: VoterId) -> Embedding {
    let (e, f) = embedding_points(k, s);
    Embedding::new(e.into_iter().map(Rat::from_integer).collect(), f, Some(s))
}

/// Consecutive alternative-position differences of the closed-form
/// embedding: entry `j` is the gap between alternatives `j+1` and `j+2`.
///
/// Panics when `k < 2` or `s` is out of range.
pub fn distance_row(k: usize, s: VoterId) -> Vec<BigInt> {
    let (e, _) = embedding_points(k, s);
    e.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// One verified arithmetic fact about the closed-form alternative positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaClause {
    name: &'static str,
    ok: bool,
    counterexample: Option<String>,
}

impl LemmaClause {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn ok(&self) -> bool {
        self.ok
    }

    pub fn counterexample(&self) -> Option<&str> {
        self.counterexample.as_deref()
    }
}

/// Outcome of [`check_lemmas`] for one `(k, s)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    k: usize,
    s: VoterId,
    clauses: Vec<LemmaClause>,
}

impl LemmaReport {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> VoterId {
        self.s
    }

    pub fn clauses(&self) -> &[LemmaClause] {
        &self.clauses
    }

    pub fn all_ok(&self) -> bool {
        self.clauses.iter().all(LemmaClause::ok)
    }
}

/// Verifies the arithmetic facts behind the closed-form embedding for one
/// `(k, s)` pair: exact values of the first positions, gap identities, and
/// the growth inequalities separating the two halves of the axis. All
/// clauses hold when `k >= 5`; for smaller `k` the report is informational.
///
/// Panics when `k < 2` or `s` is out of range.
pub fn check_lemmas(k: usize, s: VoterId) -> LemmaReport {
    let (e, _) = embedding_points(k, s);
    let ev = |idx: usize| -> &BigInt { &e[idx - 1] };
    let big = BigInt::from;
    let ki = k as i64;
    let si = s as i64;
    let mut clauses = Vec::new();
    let mut push = |name: &'static str, counterexample: Option<String>| {
        clauses.push(LemmaClause {
            name,
            ok: counterexample.is_none(),
            counterexample,
        });
    };

    let bad = (1..4 * k)
        .find(|&i| ev(i) >= ev(i + 1))
        .map(|i| format!("E[{}]={} >= E[{}]={}", i, ev(i), i + 1, ev(i + 1)));
    push("strictly-increasing", bad);

    let expect = |name: &'static str,
                  idx: usize,
                  want: i64,
                  push: &mut dyn FnMut(&'static str, Option<String>)| {
        let bad = (*ev(idx) != big(want)).then(|| format!("E[{}]={}, want {}", idx, ev(idx), want));
        push(name, bad);
    };
    expect("E2-value", 2, 4 * ki - 2 * si + 1, &mut push);
    expect("E3-value", 3, 4 * ki - 2 * si + 3, &mut push);
    let want4 = if s <= 2 {
        4 * ki - 4 * si + 8
    } else {
        8 * ki - 4 * si + 8
    };
    expect("E4-value", 4, want4, &mut push);
    if s <= 2 {
        let got = ev(2 * k - 2) - ev(2 * k - 3);
        let want = big(4 * ki - 2 * si - 7);
        push(
            "d(2k-2)-value",
            (got != want).then(|| format!("got {got}, want {want}")),
        );
        if k >= 3 {
            let got = ev(2 * k - 4) - ev(2 * k - 5);
            let want = big(4 * ki - 2 * si - 11);
            push(
                "d(2k-4)-value",
                (got != want).then(|| format!("got {got}, want {want}")),
            );
        }
    }

    let mut bad = None;
    for i in 1..=k {
        let applicable = if i < k {
            s != 2 * i - 1
        } else {
            s != 2 * k - 1 && s != 2 * k
        };
        if applicable {
            let got = ev(2 * k + 2 * i) - ev(2 * k + 2 * i - 1);
            let want = ev(2 * i) - ev(2 * i - 1) + big(2);
            if got != want {
                bad = Some(format!("i={i}: got {got}, want {want}"));
                break;
            }
        }
    }
    push("even-gap-up", bad);

    let mut bad = None;
    for i in 1..k {
        if s != 2 * i {
            let got = ev(2 * k + 2 * i) - ev(2 * k + 2 * i - 1);
            let want = ev(2 * i + 2) - ev(2 * i + 1) - big(2);
            if got != want {
                bad = Some(format!("i={i}: got {got}, want {want}"));
                break;
            }
        }
    }
    push("even-gap-down", bad);

    let mut bad = None;
    'sep: for y in 1..=4 * k {
        for x in y + 1..=4 * k {
            if ev(x) - ev(y) < big((x - y) as i64) {
                bad = Some(format!("E[{}]-E[{}]={} < {}", x, y, ev(x) - ev(y), x - y));
                break 'sep;
            }
        }
    }
    push("index-separation", bad);

    let bad = (1..2 * k)
        .find(|&i| ev(2 * i + 1) - ev(2 * i) < big(2))
        .map(|i| format!("i={}: gap {}", i, ev(2 * i + 1) - ev(2 * i)));
    push("odd-gap-two", bad);

    let bad = (1..k)
        .find(|&i| ev(2 * k + 2 * i - 1) < &(ev(2 * k) + ev(2 * i) + big(2)))
        .map(|i| {
            format!(
                "i={}: E[{}]={}",
                i,
                2 * k + 2 * i - 1,
                ev(2 * k + 2 * i - 1)
            )
        });
    push("wing-clearance", bad);

    LemmaReport { k, s, clauses }
}

/// A strict system over the `4k` alternative positions together with a
/// nonnegative row combination summing to zero: the rows cannot all hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedRefutation {
    system: HomogeneousSystem,
    certificate: Vec<Rat>,
}

impl CertifiedRefutation {
    pub fn system(&self) -> &HomogeneousSystem {
        &self.system
    }

    pub fn certificate(&self) -> &[Rat] {
        &self.certificate
    }
}

/// The cycle of `2k` preference constraints that every embedding of member
/// `k` would have to satisfy, with the all-ones certificate showing they sum
/// to zero. Each row states a midpoint comparison implied by one voter.
///
/// Panics when `k < 2`.
pub fn noneuclid_certificate(k: usize) -> CertifiedRefutation {
    assert!(k >= 2, "family needs k >= 2");
    let m = 4 * k;
    let mut system = HomogeneousSystem::new(m);
    {
        let mut push = |label: String, plus: [AltId; 2], minus: [AltId; 2]| {
            let mut coeffs = vec![rat(0); m];
            for p in plus {
                coeffs[p - 1] = rat(1);
            }
            for q in minus {
                coeffs[q - 1] = rat(-1);
            }
            system.push_row(label, coeffs);
        };
        for i in 1..=k {
            push(
                format!("cyc1:{i}"),
                [2 * k + 2 * i - 1, 2 * i],
                [2 * k + 2 * i, 2 * i - 1],
            );
        }
        for i in 1..k {
            push(
                format!("cyc2:{i}"),
                [2 * k + 2 * i, 2 * i + 1],
                [2 * k + 2 * i - 1, 2 * i + 2],
            );
        }
        push("cyc3".to_string(), [4 * k, 1], [4 * k - 1, 2]);
    }
    let certificate = vec![rat(1); 2 * k];
    assert!(
        check_certificate(&system, &certificate),
        "cycle rows must telescope to zero"
    );
    CertifiedRefutation {
        system,
        certificate,
    }
}

/// True when every cycle row of [`noneuclid_certificate`] is the sum of two
/// preference rows of the full constraint system of `gen_profile(k)` on the
/// identity axis, padded with zero voter coefficients. This pins the
/// refutation to constraints the profile itself forces.
pub fn noneuclid_rows_contained(k: usize) -> bool {
    let p = gen_profile(k);
    let identity: Vec<AltId> = (1..=p.m()).collect();
    let full = build_constraints(&p, &identity, ConstraintMode::Full);
    let cyc = noneuclid_certificate(k);
    cyc.system().rows().iter().all(|crow| {
        let (l1, l2) = summand_labels(k, crow.label());
        let (Some(r1), Some(r2)) = (full.row_by_label(&l1), full.row_by_label(&l2)) else {
            return false;
        };
        (0..full.num_vars()).all(|t| {
            let want = if t < 4 * k {
                crow.coeffs()[t].clone()
            } else {
                rat(0)
            };
            &r1.coeffs()[t] + &r2.coeffs()[t] == want
        })
    })
}

/// The two preference rows whose sum is the given cycle row.
fn summand_labels(k: usize, label: &str) -> (String, String) {
    let index = |prefix: &str| {
        label
            .strip_prefix(prefix)
            .and_then(|t| t.parse::<usize>().ok())
    };
    if let Some(i) = index("cyc1:") {
        (
            format!("v{}:{}>{}", 2 * i - 1, 2 * k + 2 * i - 1, 2 * i),
            format!("v{}:{}>{}", 2 * i - 1, 2 * i - 1, 2 * k + 2 * i),
        )
    } else if let Some(i) = index("cyc2:") {
        (
            format!("v{}:{}>{}", 2 * i, 2 * i + 2, 2 * k + 2 * i - 1),
            format!("v{}:{}>{}", 2 * i, 2 * k + 2 * i, 2 * i + 1),
        )
    } else {
        (
            format!("v{}:2>{}", 2 * k, 4 * k - 1),
            format!("v{}:{}>1", 2 * k, 4 * k),
        )
    }
}

/// True when the axis enumeration for `p` yields exactly the identity axis.
pub(crate) fn axes_exactly_identity(p: &Profile) -> bool {
    let e = enumerate_axes(p, DEFAULT_AXIS_CAP);
    let identity: Vec<AltId> = (1..=p.m()).collect();
    !e.truncated() && e.axes() == [identity]
}

/// True when member `k` is single-peaked on the identity axis and on no
/// other axis up to reversal.
pub fn canonical_axes_check(k: usize) -> bool {
    axes_exactly_identity(&gen_profile(k))
}

/// True when member `k` is single-crossing in the order that swaps the last
/// two voters: `v1, ..., v_{2k-2}, v_{2k}, v_{2k-1}`.
pub fn sc_order_check(k: usize) -> bool {
    let p = gen_profile(k);
    let mut order: Vec<VoterId> = (1..=2 * k - 2).collect();
    order.push(2 * k);
    order.push(2 * k - 1);
    is_single_crossing_on(&p, &order)
}

/// True when member `k` is single-crossing in the natural voter order
/// `v1, ..., v_{2k}`. Observed false: the final voter disrupts the last
/// couple, which is why [`sc_order_check`] swaps the last two voters.
pub fn natural_sc_order_holds(k: usize) -> bool {
    let p = gen_profile(k);
    let order: Vec<VoterId> = (1..=2 * k).collect();
    is_single_crossing_on(&p, &order)
}

/// What happened for one deleted voter during [`minimality_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionOutcome {
    /// The deleted voter.
    pub s: VoterId,
    /// Violations of the closed-form embedding against the deleted profile.
    pub closed_form_violations: usize,
    /// Exact-solver verdict on the deleted profile; only computed for
    /// `k <= 4`, where the closed form has no guarantee.
    pub lp_euclidean: Option<bool>,
}

/// Outcome of [`minimality_check`] for one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    k: usize,
    family_not_euclidean: bool,
    deletions: Vec<DeletionOutcome>,
}

impl MinimalityReport {
    pub fn k(&self) -> usize {
        self.k
    }

    /// True when the full member was recognized as not Euclidean with valid
    /// certificates on every axis.
    pub fn family_not_euclidean(&self) -> bool {
        self.family_not_euclidean
    }

    pub fn deletions(&self) -> &[DeletionOutcome] {
        &self.deletions
    }

    /// True when the member is not Euclidean but every single-voter deletion
    /// is: by closed form for `k >= 5`, by the exact solver for `k <= 4`.
    pub fn passes(&self) -> bool {
        self.family_not_euclidean
            && self.deletions.iter().all(|d| {
                if self.k >= 5 {
                    d.closed_form_violations == 0
                } else {
                    d.lp_euclidean == Some(true)
                }
            })
    }
}

/// Checks that member `k` is a minimal non-Euclidean profile: the member
/// itself is refuted on every axis, and each of the `2k` single-voter
/// deletions is Euclidean.
///
/// Panics when `k < 2`.
pub fn minimality_check(k: usize) -> MinimalityReport {
    let p = gen_profile(k);
    let family_not_euclidean = match recognize_euclidean(&p, DEFAULT_AXIS_CAP).status() {
        EuclideanStatus::NotEuclidean { refutations } => {
            !refutations.is_empty()
                && refutations
                    .iter()
                    .all(|r| check_certificate(r.system(), r.certificate()))
        }
        _ => false,
    };
    let mut deletions = Vec::with_capacity(2 * k);
    for s in 1..=2 * k {
        let deleted = p.delete_voter(s).unwrap();
        let embedding = gen_embedding(k, s);
        let report = verify_embedding(&deleted, &embedding, ConstraintMode::Full)
            .expect("generated embedding matches the deleted profile shape");
        let lp_euclidean = (k <= 4).then(|| {
            matches!(
                recognize_euclidean(&deleted, DEFAULT_AXIS_CAP).status(),
                EuclideanStatus::Euclidean { .. }
            )
        });
        deletions.push(DeletionOutcome {
            s,
            closed_form_violations: report.violations().len(),
            lp_euclidean,
        });
    }
    MinimalityReport {
        k,
        family_not_euclidean,
        deletions,
    }
}
