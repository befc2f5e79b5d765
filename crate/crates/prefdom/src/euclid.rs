//! One-dimensional Euclidean embeddings: construction, verification, and
//! recognition.
//!
//! An embedding places every alternative and every voter on the rational
//! line; a voter ranks alternatives by distance, closest first. A profile is
//! Euclidean when some embedding induces exactly its rankings.
//!
//! Any embedding orders the alternatives along the line, and every voter is
//! single-peaked on that order, so recognition factors through axes: for each
//! candidate axis, [`build_constraints`] encodes "the alternatives follow the
//! axis" and "each voter sits on the correct side of each relevant midpoint"
//! as a strict homogeneous system, which [`exactlp`](crate::exactlp) decides
//! exactly. [`recognize_euclidean`] tries every single-peaked axis: a
//! feasible system yields an [`Embedding`], and infeasibility on all axes
//! yields per-axis Farkas certificates ([`AxisRefutation`]) that refute the
//! profile without reference to the solver.
//!
//! Embeddings round-trip through a small text format (see
//! [`Embedding::parse`]) and can carry a deleted-voter tag: the position of
//! the tagged voter is kept but exempt from verification, which is how
//! embeddings for voter-deleted profiles keep the original voter ids.

use std::fmt::Write as _;

use num_traits::Signed;
use thiserror::Error;

use crate::axes::{enumerate_axes, Axis};
use crate::exactlp::{check_witness, rat, Feasibility, HomogeneousSystem, Rat};
use crate::profile::{AltId, Profile, Ranking, VoterId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EuclidError {
    #[error("missing EMBED header line")]
    MissingHeader,
    #[error(
        "line {line}: malformed header, expected \"EMBED <alternatives> <voters> [s=<voter>]\""
    )]
    MalformedHeader { line: usize },
    #[error("line {line}: expected \"A <id> <value>\" or \"V <id> <value>\"")]
    MalformedEntry { line: usize },
    #[error("line {line}: invalid rational value {token:?}")]
    InvalidValue { line: usize, token: String },
    #[error("line {line}: alternative {id} out of range 1..={m}")]
    AltOutOfRange { line: usize, id: AltId, m: usize },
    #[error("line {line}: voter {id} out of range 1..={n}")]
    VoterOutOfRange { line: usize, id: VoterId, n: usize },
    #[error("line {line}: alternative {id} positioned twice")]
    DuplicateAlt { line: usize, id: AltId },
    #[error("line {line}: voter {id} positioned twice")]
    DuplicateVoter { line: usize, id: VoterId },
    #[error("no position given for alternative {id}")]
    MissingAlt { id: AltId },
    #[error("no position given for voter {id}")]
    MissingVoter { id: VoterId },
    #[error("embedding has {embedding} alternatives, profile has {profile}")]
    AltCountMismatch { embedding: usize, profile: usize },
    #[error("embedding has {embedding} voters, profile has {profile}")]
    VoterCountMismatch { embedding: usize, profile: usize },
    #[error("embedding deletes voter {voter}, but the profile still contains it")]
    DeletedVoterPresent { voter: VoterId },
    #[error("voter {voter} is equidistant from alternatives {a} and {b}")]
    DistanceTie { voter: VoterId, a: AltId, b: AltId },
}

/// Positions for all alternatives and voters of a profile on the rational
/// line. Positions are unconstrained at construction; coincidences surface as
/// verification violations or distance ties where they matter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    alt_pos: Vec<Rat>,
    voter_pos: Vec<Rat>,
    deleted_voter: Option<VoterId>,
}

impl Embedding {
    /// Builds an embedding; `deleted_voter` tags one voter position as exempt
    /// from verification.
    ///
    /// Panics when a position list is empty or the tag is out of range.
    pub fn new(alt_pos: Vec<Rat>, voter_pos: Vec<Rat>, deleted_voter: Option<VoterId>) -> Self {
        assert!(
            !alt_pos.is_empty(),
            "embedding needs at least one alternative"
        );
        assert!(!voter_pos.is_empty(), "embedding needs at least one voter");
        if let Some(s) = deleted_voter {
            assert!(
                s >= 1 && s <= voter_pos.len(),
                "deleted voter {s} out of range"
            );
        }
        Embedding {
            alt_pos,
            voter_pos,
            deleted_voter,
        }
    }

    pub fn num_alts(&self) -> usize {
        self.alt_pos.len()
    }

    pub fn num_voters(&self) -> usize {
        self.voter_pos.len()
    }

    /// Position of alternative `a` (1-based).
    pub fn alt(&self, a: AltId) -> &Rat {
        assert!(
            a >= 1 && a <= self.num_alts(),
            "alternative {a} out of range"
        );
        &self.alt_pos[a - 1]
    }

    /// Position of voter `v` (1-based).
    pub fn voter(&self, v: VoterId) -> &Rat {
        assert!(v >= 1 && v <= self.num_voters(), "voter {v} out of range");
        &self.voter_pos[v - 1]
    }

    /// The voter whose position is exempt from verification, if any.
    pub fn deleted_voter(&self) -> Option<VoterId> {
        self.deleted_voter
    }

    /// Parses the text format: an `EMBED <m> <n> [s=<voter>]` header, then
    /// one `A <id> <value>` line per alternative and one `V <id> <value>`
    /// line per voter, in any order, each id exactly once. Values are
    /// rationals like `7` or `-3/4`. Blank lines and `#` comments are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self, EuclidError> {
        let mut header: Option<(usize, usize, Option<VoterId>)> = None;
        let mut alts: Vec<Option<Rat>> = Vec::new();
        let mut voters: Vec<Option<Rat>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((m, n, _)) = header else {
                if tokens.len() < 3 || tokens.len() > 4 || tokens[0] != "EMBED" {
                    return Err(EuclidError::MalformedHeader { line });
                }
                let m: usize = tokens[1]
                    .parse()
                    .map_err(|_| EuclidError::MalformedHeader { line })?;
                let n: usize = tokens[2]
                    .parse()
                    .map_err(|_| EuclidError::MalformedHeader { line })?;
                if m == 0 || n == 0 {
                    return Err(EuclidError::MalformedHeader { line });
                }
                let s = match tokens.get(3) {
                    None => None,
                    Some(t) => {
                        let id: usize = t
                            .strip_prefix("s=")
                            .and_then(|v| v.parse().ok())
                            .ok_or(EuclidError::MalformedHeader { line })?;
                        if id == 0 || id > n {
                            return Err(EuclidError::VoterOutOfRange { line, id, n });
                        }
                        Some(id)
                    }
                };
                header = Some((m, n, s));
                alts = vec![None; m];
                voters = vec![None; n];
                continue;
            };
            if tokens.len() != 3 || (tokens[0] != "A" && tokens[0] != "V") {
                return Err(EuclidError::MalformedEntry { line });
            }
            let id: usize = tokens[1]
                .parse()
                .map_err(|_| EuclidError::MalformedEntry { line })?;
            let value: Rat = tokens[2].parse().map_err(|_| EuclidError::InvalidValue {
                line,
                token: tokens[2].to_string(),
            })?;
            if tokens[0] == "A" {
                if id == 0 || id > m {
                    return Err(EuclidError::AltOutOfRange { line, id, m });
                }
                if alts[id - 1].is_some() {
                    return Err(EuclidError::DuplicateAlt { line, id });
                }
                alts[id - 1] = Some(value);
            } else {
                if id == 0 || id > n {
                    return Err(EuclidError::VoterOutOfRange { line, id, n });
                }
                if voters[id - 1].is_some() {
                    return Err(EuclidError::DuplicateVoter { line, id });
                }
                voters[id - 1] = Some(value);
            }
        }
        let Some((_, _, s)) = header else {
            return Err(EuclidError::MissingHeader);
        };
        let mut alt_pos = Vec::with_capacity(alts.len());
        for (i, a) in alts.into_iter().enumerate() {
            alt_pos.push(a.ok_or(EuclidError::MissingAlt { id: i + 1 })?);
        }
        let mut voter_pos = Vec::with_capacity(voters.len());
        for (i, v) in voters.into_iter().enumerate() {
            voter_pos.push(v.ok_or(EuclidError::MissingVoter { id: i + 1 })?);
        }
        Ok(Embedding {
            alt_pos,
            voter_pos,
            deleted_voter: s,
        })
    }

    /// Serializes to the text format; `parse(to_text(e)) == e` bit-exactly.
    pub fn to_text(&self) -> String {
        let mut out = match self.deleted_voter {
            Some(s) => format!("EMBED {} {} s={}\n", self.num_alts(), self.num_voters(), s),
            None => format!("EMBED {} {}\n", self.num_alts(), self.num_voters()),
        };
        for (i, p) in self.alt_pos.iter().enumerate() {
            writeln!(out, "A {} {}", i + 1, p).unwrap();
        }
        for (i, p) in self.voter_pos.iter().enumerate() {
            writeln!(out, "V {} {}", i + 1, p).unwrap();
        }
        out
    }
}

/// Which preference comparisons [`build_constraints`] and
/// [`verify_embedding`] cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintMode {
    /// Every ordered pair of alternatives, for every voter.
    Full,
    /// Only pairs consecutive in each voter's ranking. Transitivity of
    /// "strictly closer" makes this equivalent to [`ConstraintMode::Full`]
    /// for feasibility, at a fraction of the rows.
    Reduced,
}

/// Encodes "profile `p` is Euclidean with alternatives ordered by `axis`" as
/// a strict homogeneous system over the variables `E[1..=m]` followed by
/// `F[1..=n]`.
///
/// Axis rows `E{a}<E{b}` force consecutive axis alternatives apart; voter
/// rows `v{i}:{p}>{q}` put voter `i` strictly on the preferred side of the
/// midpoint of `p` and `q`, oriented by the axis.
///
/// Panics when `axis` is not a permutation of `1..=p.m()`.
pub fn build_constraints(p: &Profile, axis: &[AltId], mode: ConstraintMode) -> HomogeneousSystem {
    let m = p.m();
    let n = p.n();
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
    let mut sys = HomogeneousSystem::new(m + n);
    for w in axis.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mut coeffs = vec![rat(0); m + n];
        coeffs[a - 1] = rat(1);
        coeffs[b - 1] = rat(-1);
        sys.push_row(format!("E{a}<E{b}"), coeffs);
    }
    let mut push_pref = |voter: VoterId, pref: AltId, other: AltId| {
        let mut coeffs = vec![rat(0); m + n];
        if pos[pref - 1] < pos[other - 1] {
            // Preferred alternative lies left: the voter sits left of the
            // midpoint, 2F - E_pref - E_other < 0.
            coeffs[pref - 1] = rat(-1);
            coeffs[other - 1] = rat(-1);
            coeffs[m + voter - 1] = rat(2);
        } else {
            coeffs[pref - 1] = rat(1);
            coeffs[other - 1] = rat(1);
            coeffs[m + voter - 1] = rat(-2);
        }
        sys.push_row(format!("v{voter}:{pref}>{other}"), coeffs);
    };
    match mode {
        ConstraintMode::Full => {
            for v in 1..=n {
                let rank = p.ranking(v).positions();
                for a in 1..=m {
                    for b in a + 1..=m {
                        if rank[a - 1] < rank[b - 1] {
                            push_pref(v, a, b);
                        } else {
                            push_pref(v, b, a);
                        }
                    }
                }
            }
        }
        ConstraintMode::Reduced => {
            for v in 1..=n {
                for w in p.ranking(v).order().windows(2) {
                    push_pref(v, w[0], w[1]);
                }
            }
        }
    }
    sys
}

/// One preference an embedding fails to reproduce: the voter is not strictly
/// closer to their preferred alternative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub voter: VoterId,
    pub preferred: AltId,
    pub other: AltId,
}

/// Outcome of [`verify_embedding`]: the list of failed comparisons, empty
/// when the embedding reproduces the profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

/// Checks that `e` reproduces every ranking of `p` by comparing distances
/// directly, with no reference to axes or constraint systems.
///
/// When `e` carries a deleted-voter tag `s`, the profile must have one voter
/// fewer than the embedding; profile voters `s, s+1, ...` map to embedding
/// voters `s+1, s+2, ...`, and the tagged position is skipped.
pub fn verify_embedding(
    p: &Profile,
    e: &Embedding,
    mode: ConstraintMode,
) -> Result<VerificationReport, EuclidError> {
    if p.m() != e.num_alts() {
        return Err(EuclidError::AltCountMismatch {
            embedding: e.num_alts(),
            profile: p.m(),
        });
    }
    let deleted = match e.deleted_voter() {
        None => {
            if p.n() != e.num_voters() {
                return Err(EuclidError::VoterCountMismatch {
                    embedding: e.num_voters(),
                    profile: p.n(),
                });
            }
            None
        }
        Some(s) => {
            if p.n() == e.num_voters() {
                return Err(EuclidError::DeletedVoterPresent { voter: s });
            }
            if p.n() + 1 != e.num_voters() {
                return Err(EuclidError::VoterCountMismatch {
                    embedding: e.num_voters(),
                    profile: p.n(),
                });
            }
            Some(s)
        }
    };
    let dist = |ev: usize, a: AltId| -> Rat { (e.voter(ev) - e.alt(a)).abs() };
    let mut violations = Vec::new();
    for v in 1..=p.n() {
        let ev = match deleted {
            Some(s) if v >= s => v + 1,
            _ => v,
        };
        let mut check = |pref: AltId, other: AltId| {
            if dist(ev, pref) >= dist(ev, other) {
                violations.push(Violation {
                    voter: v,
                    preferred: pref,
                    other,
                });
            }
        };
        match mode {
            ConstraintMode::Full => {
                let rank = p.ranking(v).positions();
                for a in 1..=p.m() {
                    for b in a + 1..=p.m() {
                        if rank[a - 1] < rank[b - 1] {
                            check(a, b);
                        } else {
                            check(b, a);
                        }
                    }
                }
            }
            ConstraintMode::Reduced => {
                for w in p.ranking(v).order().windows(2) {
                    check(w[0], w[1]);
                }
            }
        }
    }
    Ok(VerificationReport { violations })
}

/// The ranking embedding `e` induces for voter `v`: alternatives by
/// increasing distance. Equidistant alternatives make the ranking undefined
/// and return [`EuclidError::DistanceTie`]. The voter id counts all stored
/// positions, including a tagged deleted voter.
pub fn induced_ranking(e: &Embedding, v: VoterId) -> Result<Ranking, EuclidError> {
    assert!(v >= 1 && v <= e.num_voters(), "voter {v} out of range");
    let mut with_dist: Vec<(Rat, AltId)> = (1..=e.num_alts())
        .map(|a| ((e.voter(v) - e.alt(a)).abs(), a))
        .collect();
    with_dist.sort();
    for w in with_dist.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(EuclidError::DistanceTie {
                voter: v,
                a: w[0].1,
                b: w[1].1,
            });
        }
    }
    Ok(Ranking::from_order(
        with_dist.into_iter().map(|(_, a)| a).collect(),
    ))
}

/// Infeasibility evidence for one axis: the constraint system and a
/// nonnegative row combination summing to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisRefutation {
    axis: Axis,
    system: HomogeneousSystem,
    certificate: Vec<Rat>,
}

impl AxisRefutation {
    pub fn axis(&self) -> &Axis {
        &self.axis
    }

    pub fn system(&self) -> &HomogeneousSystem {
        &self.system
    }

    pub fn certificate(&self) -> &[Rat] {
        &self.certificate
    }
}

/// Answer of [`recognize_euclidean`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EuclideanStatus {
    /// An embedding exists; `axis` orders its alternative positions.
    Euclidean { axis: Axis, embedding: Embedding },
    /// No embedding exists: one refutation per single-peaked axis. A profile
    /// that is not even single-peaked has no axes and no refutations.
    NotEuclidean { refutations: Vec<AxisRefutation> },
    /// The axis cap cut enumeration short before any axis succeeded.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclideanResult {
    status: EuclideanStatus,
    axes_tried: usize,
}

impl EuclideanResult {
    pub fn status(&self) -> &EuclideanStatus {
        &self.status
    }

    pub fn axes_tried(&self) -> usize {
        self.axes_tried
    }
}

/// Decides whether `p` is Euclidean by solving the [`ConstraintMode::Reduced`]
/// system on every single-peaked axis, in lexicographic axis order, stopping
/// at the first feasible one.
///
/// `axis_cap` bounds the number of axes enumerated; if the cap truncates the
/// enumeration and no tried axis is feasible, the status is
/// [`EuclideanStatus::Unknown`].
pub fn recognize_euclidean(p: &Profile, axis_cap: usize) -> EuclideanResult {
    let enumeration = enumerate_axes(p, axis_cap);
    let mut refutations = Vec::new();
    for (idx, axis) in enumeration.axes().iter().enumerate() {
        let system = build_constraints(p, axis, ConstraintMode::Reduced);
        match system.feasible_strict() {
            Feasibility::Feasible(x) => {
                debug_assert!(check_witness(&system, &x));
                let alt_pos = x[..p.m()].to_vec();
                let voter_pos = x[p.m()..].to_vec();
                let embedding = Embedding::new(alt_pos, voter_pos, None);
                debug_assert!(
                    verify_embedding(p, &embedding, ConstraintMode::Full).is_ok_and(|r| r.ok())
                );
                return EuclideanResult {
                    status: EuclideanStatus::Euclidean {
                        axis: axis.clone(),
                        embedding,
                    },
                    axes_tried: idx + 1,
                };
            }
            Feasibility::Infeasible(certificate) => {
                refutations.push(AxisRefutation {
                    axis: axis.clone(),
                    system,
                    certificate,
                });
            }
        }
    }
    let axes_tried = enumeration.axes().len();
    let status = if enumeration.truncated() {
        EuclideanStatus::Unknown
    } else {
        EuclideanStatus::NotEuclidean { refutations }
    };
    EuclideanResult { status, axes_tried }
}
