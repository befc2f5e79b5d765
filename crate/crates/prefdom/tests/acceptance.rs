//! Acceptance gate: one test per release criterion, each ending in a single
//! PASS line. Frozen data (member rows, spacing tables, worked values) was
//! derived independently of the code under test.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prefdom::axes::{enumerate_axes, DEFAULT_AXIS_CAP};
use prefdom::crossing::{find_sc_order, is_single_crossing_on};
use prefdom::euclid::{
    build_constraints, recognize_euclidean, verify_embedding, ConstraintMode, EuclideanStatus,
};
use prefdom::exactlp::{
    check_certificate, check_witness, rat, Feasibility, HomogeneousSystem, Rat,
};
use prefdom::family::{
    canonical_axes_check, check_lemmas, distance_row, gen_embedding, gen_profile,
    noneuclid_certificate, noneuclid_rows_contained, sc_order_check,
};
use prefdom::profile::Profile;

/// Alternative spacings d2..d16 of the closed-form embeddings of member 4,
/// one row per deleted voter s = 1..8.
const SPACING_TABLE_K4: [[i64; 15]; 8] = [
    [15, 2, 3, 2, 7, 2, 11, 13, 1, 35, 5, 62, 9, 145, 13],
    [13, 2, 1, 2, 5, 2, 9, 12, 15, 30, 3, 68, 7, 151, 11],
    [11, 2, 15, 2, 3, 2, 7, 24, 13, 35, 1, 81, 5, 187, 9],
    [9, 2, 13, 2, 1, 2, 5, 20, 11, 30, 15, 68, 3, 171, 7],
    [7, 2, 11, 2, 15, 2, 3, 32, 9, 54, 13, 97, 1, 242, 5],
    [5, 2, 9, 2, 13, 2, 1, 28, 7, 46, 11, 84, 15, 207, 3],
    [3, 2, 7, 2, 11, 2, 15, 24, 5, 54, 9, 100, 13, 233, 1],
    [1, 2, 5, 2, 9, 2, 13, 20, 3, 46, 7, 84, 11, 142, 33],
];

const MEMBER4: &str = "\
16 8
8 7 6 5 4 3 9 2 1 10 11 12 13 14 15 16
8 7 6 5 4 9 10 3 2 1 11 12 13 14 15 16
10 9 8 7 6 5 11 4 3 12 2 1 13 14 15 16
10 9 8 7 6 11 12 5 4 3 2 1 13 14 15 16
12 11 10 9 8 7 13 6 5 14 4 3 2 1 15 16
12 11 10 9 8 13 14 7 6 5 4 3 2 1 15 16
14 13 12 11 10 9 15 8 7 16 6 5 4 3 2 1
14 13 12 11 10 9 8 7 6 5 4 3 2 15 16 1
";

/// Single-peaked and single-crossing, yet not Euclidean.
const BENCHMARK: &str = "\
6 3
3 2 1 4 5 6
3 4 2 5 6 1
5 4 3 6 2 1
";

#[test]
fn criterion_01_spacing_table_bit_exact() {
    let start = Instant::now();
    for (row, want) in SPACING_TABLE_K4.iter().enumerate() {
        let s = row + 1;
        let got = distance_row(4, s);
        let want: Vec<BigInt> = want.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(got, want, "spacing row s={s}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("PASS criterion 01: member-4 spacing table reproduced bit-exactly in {elapsed:?}");
}

#[test]
fn criterion_02_member_four_rows() {
    assert_eq!(gen_profile(4), Profile::parse(MEMBER4).unwrap());
    println!("PASS criterion 02: member 4 matches its frozen sixteen-alternative rows");
}

#[test]
fn criterion_03_worked_embedding_values() {
    let e = gen_embedding(4, 5);
    assert_eq!(*e.alt(4), rat(20));
    assert_eq!(e.alt(4) - e.alt(3), rat(11));
    println!("PASS criterion 03: member 4 with voter 5 deleted places alternative 4 at 20, gap 11");
}

#[test]
fn criterion_04_members_not_euclidean() {
    let start = Instant::now();
    for k in 2..=6 {
        let p = gen_profile(k);
        let result = recognize_euclidean(&p, DEFAULT_AXIS_CAP);
        match result.status() {
            EuclideanStatus::NotEuclidean { refutations } => {
                assert!(!refutations.is_empty(), "k={k}: no axis was refuted");
                for r in refutations {
                    assert!(
                        check_certificate(r.system(), r.certificate()),
                        "k={k}: invalid certificate"
                    );
                }
            }
            other => panic!("k={k}: expected NotEuclidean, got {other:?}"),
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("PASS criterion 04: members 2..6 refuted on every axis with valid certificates in {elapsed:?}");
}

#[test]
fn criterion_05_deletions_euclidean() {
    // Large members: the closed-form embedding must verify outright.
    for k in [5, 6] {
        let p = gen_profile(k);
        for s in 1..=2 * k {
            let deleted = p.delete_voter(s).unwrap();
            let e = gen_embedding(k, s);
            let report = verify_embedding(&deleted, &e, ConstraintMode::Full).unwrap();
            assert!(report.ok(), "k={k} s={s}: {:?}", report.violations());
        }
    }
    // Small members: the exact solver must find an embedding.
    for k in [2, 3, 4] {
        let p = gen_profile(k);
        for s in 1..=2 * k {
            let deleted = p.delete_voter(s).unwrap();
            let result = recognize_euclidean(&deleted, DEFAULT_AXIS_CAP);
            assert!(
                matches!(result.status(), EuclideanStatus::Euclidean { .. }),
                "k={k} s={s}: deletion not recognized as Euclidean"
            );
        }
    }
    println!("PASS criterion 05: every single-voter deletion of members 2..6 is Euclidean");
}

#[test]
fn criterion_06_unique_axis() {
    for k in 2..=6 {
        assert!(canonical_axes_check(k), "k={k}");
    }
    println!("PASS criterion 06: members 2..6 are single-peaked on exactly the identity axis");
}

#[test]
fn criterion_07_refutation_cycles() {
    for k in 2..=8 {
        let cyc = noneuclid_certificate(k);
        assert_eq!(cyc.system().rows().len(), 2 * k, "k={k}");
        assert!(check_certificate(cyc.system(), cyc.certificate()), "k={k}");
        assert!(
            noneuclid_rows_contained(k),
            "k={k}: cycle row not a sum of profile rows"
        );
    }
    println!("PASS criterion 07: refutation cycles for members 2..8 telescope and embed in the constraint systems");
}

#[test]
fn criterion_08_swapped_tail_single_crossing() {
    for k in 2..=6 {
        assert!(sc_order_check(k), "k={k}");
    }
    println!(
        "PASS criterion 08: members 2..6 are single-crossing with the last two voters swapped"
    );
}

#[test]
fn criterion_09_lemma_clauses_hold() {
    for k in 5..=8 {
        for s in 1..=2 * k {
            let report = check_lemmas(k, s);
            assert!(
                report.all_ok(),
                "k={k} s={s}: {:?}",
                report
                    .clauses()
                    .iter()
                    .filter(|c| !c.ok())
                    .collect::<Vec<_>>()
            );
        }
    }
    println!(
        "PASS criterion 09: closed-form arithmetic clauses hold for members 5..8, every deletion"
    );
}

#[test]
fn criterion_10_benchmark_profile() {
    let p = Profile::parse(BENCHMARK).unwrap();
    let axes = enumerate_axes(&p, DEFAULT_AXIS_CAP);
    let identity: Vec<usize> = (1..=6).collect();
    assert!(axes.axes().contains(&identity));
    assert_eq!(find_sc_order(&p), Some(vec![1, 2, 3]));
    assert!(is_single_crossing_on(&p, &[1, 2, 3]));
    let result = recognize_euclidean(&p, DEFAULT_AXIS_CAP);
    match result.status() {
        EuclideanStatus::NotEuclidean { refutations } => {
            assert!(!refutations.is_empty());
            for r in refutations {
                assert!(check_certificate(r.system(), r.certificate()));
            }
        }
        other => panic!("expected NotEuclidean, got {other:?}"),
    }
    println!("PASS criterion 10: benchmark profile is single-peaked and single-crossing but not Euclidean");
}

#[test]
fn criterion_11_randomized_recognizer_and_solver() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    for round in 0..500 {
        let p = random_profile(&mut rng, 5, 3);
        let got = matches!(
            recognize_euclidean(&p, DEFAULT_AXIS_CAP).status(),
            EuclideanStatus::Euclidean { .. }
        );
        let want = euclidean_oracle(&p);
        assert_eq!(got, want, "round {round}: {}", p.to_text());
    }
    for round in 0..500 {
        let system = random_system(&mut rng);
        match system.feasible_strict() {
            Feasibility::Feasible(x) => {
                assert!(
                    check_witness(&system, &x),
                    "round {round}:\n{}",
                    system.dump()
                )
            }
            Feasibility::Infeasible(y) => {
                assert!(
                    check_certificate(&system, &y),
                    "round {round}:\n{}",
                    system.dump()
                )
            }
        }
    }
    println!("PASS criterion 11: 500 random recognitions match the all-axes oracle; 500 random systems yield valid evidence");
}

#[test]
fn criterion_12_constraint_modes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0012);
    for round in 0..500 {
        let p = random_profile(&mut rng, 5, 3);
        let mut axis: Vec<usize> = (1..=p.m()).collect();
        axis.shuffle(&mut rng);
        let full = build_constraints(&p, &axis, ConstraintMode::Full);
        let reduced = build_constraints(&p, &axis, ConstraintMode::Reduced);
        match (full.feasible_strict(), reduced.feasible_strict()) {
            (Feasibility::Feasible(_), Feasibility::Feasible(x)) => {
                assert!(
                    check_witness(&full, &x),
                    "round {round}: reduced witness fails full system"
                );
            }
            (Feasibility::Infeasible(_), Feasibility::Infeasible(_)) => {}
            (f, r) => panic!("round {round}: modes disagree: full {f:?}, reduced {r:?}"),
        }
    }
    for k in 2..=6 {
        let p = gen_profile(k);
        for s in 1..=2 * k {
            let deleted = p.delete_voter(s).unwrap();
            let e = gen_embedding(k, s);
            let full = verify_embedding(&deleted, &e, ConstraintMode::Full).unwrap();
            let reduced = verify_embedding(&deleted, &e, ConstraintMode::Reduced).unwrap();
            assert_eq!(full.ok(), reduced.ok(), "k={k} s={s}");
        }
    }
    println!("PASS criterion 12: full and reduced constraint modes agree on 500 random pairs and on family embeddings");
}

fn random_profile(rng: &mut ChaCha8Rng, max_m: usize, max_n: usize) -> Profile {
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(1..=max_n);
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut row: Vec<usize> = (1..=m).collect();
            row.shuffle(rng);
            row
        })
        .collect();
    Profile::new(m, rows).unwrap()
}

fn random_system(rng: &mut ChaCha8Rng) -> HomogeneousSystem {
    let num_vars = rng.gen_range(1..=4);
    let num_rows = rng.gen_range(1..=6);
    let mut system = HomogeneousSystem::new(num_vars);
    for r in 0..num_rows {
        let coeffs: Vec<Rat> = (0..num_vars).map(|_| rat(rng.gen_range(-3..=3))).collect();
        system.push_row(format!("r{r}"), coeffs);
    }
    system
}

/// Ground truth by exhaustion: feasibility of the full constraint system
/// over every one of the m! candidate axes.
fn euclidean_oracle(p: &Profile) -> bool {
    let mut axis: Vec<usize> = (1..=p.m()).collect();
    let mut feasible = false;
    permute(&mut axis, 0, &mut |axis| {
        if !feasible {
            let system = build_constraints(p, axis, ConstraintMode::Full);
            feasible = matches!(system.feasible_strict(), Feasibility::Feasible(_));
        }
    });
    feasible
}

fn permute(items: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}
