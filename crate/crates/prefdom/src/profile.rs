//! Preference profiles: a set of voters, each holding a strict ranking of a
//! common set of alternatives.
//!
//! Alternatives are dense 1-based ids `1..=m`, voters are dense 1-based ids
//! `1..=n`. A [`Ranking`] lists alternative ids from most preferred to least
//! preferred and is always a full permutation; ties and partial ballots are
//! rejected. The text format is line-oriented: a header `<m> <n>`, then one
//! ranking row per voter. Lines whose first non-blank character is `#` are
//! ignored anywhere, as are blank lines; trailing whitespace is tolerated.

use thiserror::Error;

/// 1-based voter index.
pub type VoterId = usize;
/// 1-based alternative index.
pub type AltId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("missing header line")]
    MissingHeader,
    #[error(
        "line {line}: malformed header, expected two positive integers \"<alternatives> <voters>\""
    )]
    MalformedHeader { line: usize },
    #[error("line {line}: invalid token {token:?}, expected an integer")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: voter {voter} lists {got} alternatives, expected {expected}")]
    WrongRowLength {
        line: usize,
        voter: VoterId,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: voter {voter} ranks alternative {alt} more than once")]
    DuplicateAlternative {
        line: usize,
        voter: VoterId,
        alt: AltId,
    },
    #[error("line {line}: voter {voter} ranks alternative {alt}, outside 1..={m}")]
    AlternativeOutOfRange {
        line: usize,
        voter: VoterId,
        alt: AltId,
        m: usize,
    },
    #[error("line {line}: found only {got} of {expected} ranking rows")]
    TooFewRows {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: unexpected content after {expected} ranking rows")]
    ExtraRows { line: usize, expected: usize },
    #[error("profile needs at least one alternative")]
    NoAlternatives,
    #[error("profile needs at least one voter")]
    NoVoters,
    #[error("voter {voter} out of range 1..={n}")]
    VoterOutOfRange { voter: VoterId, n: usize },
    #[error("cannot delete the only voter")]
    LastVoter,
}

/// A strict total order over alternatives, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    order: Vec<AltId>,
}

impl Ranking {
    /// Wraps an order known to be a permutation of `1..=order.len()`.
    pub(crate) fn from_order(order: Vec<AltId>) -> Ranking {
        debug_assert!(validate_row(order.len(), &order).is_ok());
        Ranking { order }
    }

    /// Alternative ids, most preferred first.
    pub fn order(&self) -> &[AltId] {
        &self.order
    }

    /// Most preferred alternative.
    pub fn top(&self) -> AltId {
        self.order[0]
    }

    /// Least preferred alternative.
    pub fn bottom(&self) -> AltId {
        *self.order.last().unwrap()
    }

    /// `positions()[a-1]` is the rank of alternative `a` (0 = most preferred).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (rank, &a) in self.order.iter().enumerate() {
            pos[a - 1] = rank;
        }
        pos
    }
}

/// What is wrong with one candidate ranking row, before line/voter context is
/// attached.
enum RowIssue {
    WrongLength { got: usize },
    Duplicate { alt: AltId },
    OutOfRange { alt: AltId },
}

fn validate_row(m: usize, row: &[AltId]) -> Result<(), RowIssue> {
    if row.len() != m {
        return Err(RowIssue::WrongLength { got: row.len() });
    }
    let mut seen = vec![false; m];
    for &alt in row {
        if alt == 0 || alt > m {
            return Err(RowIssue::OutOfRange { alt });
        }
        if seen[alt - 1] {
            return Err(RowIssue::Duplicate { alt });
        }
        seen[alt - 1] = true;
    }
    Ok(())
}

/// An immutable preference profile: `n` rankings over alternatives `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    m: usize,
    rankings: Vec<Ranking>,
}

impl Profile {
    /// Builds a profile from raw ranking rows, validating every row.
    ///
    /// Error line numbers refer to the canonical text layout, where voter `v`
    /// occupies line `v + 1`.
    pub fn new(m: usize, rows: Vec<Vec<AltId>>) -> Result<Self, ProfileError> {
        if m == 0 {
            return Err(ProfileError::NoAlternatives);
        }
        if rows.is_empty() {
            return Err(ProfileError::NoVoters);
        }
        let mut rankings = Vec::with_capacity(rows.len());
        for (idx, row) in rows.into_iter().enumerate() {
            let voter = idx + 1;
            let line = voter + 1;
            validate_row(m, &row).map_err(|issue| match issue {
                RowIssue::WrongLength { got } => ProfileError::WrongRowLength {
                    line,
                    voter,
                    expected: m,
                    got,
                },
                RowIssue::Duplicate { alt } => {
                    ProfileError::DuplicateAlternative { line, voter, alt }
                }
                RowIssue::OutOfRange { alt } => ProfileError::AlternativeOutOfRange {
                    line,
                    voter,
                    alt,
                    m,
                },
            })?;
            rankings.push(Ranking { order: row });
        }
        Ok(Profile { m, rankings })
    }

    /// Number of alternatives.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of voters.
    pub fn n(&self) -> usize {
        self.rankings.len()
    }

    /// The ranking of voter `v` (1-based).
    ///
    /// Panics when `v` is out of range.
    pub fn ranking(&self, v: VoterId) -> &Ranking {
        assert!(
            v >= 1 && v <= self.n(),
            "voter {v} out of range 1..={}",
            self.n()
        );
        &self.rankings[v - 1]
    }

    /// All rankings in voter order.
    pub fn rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    /// True when voter `v` strictly prefers `a` to `b`.
    pub fn prefers(&self, v: VoterId, a: AltId, b: AltId) -> bool {
        let order = self.ranking(v).order();
        let pa = order
            .iter()
            .position(|&x| x == a)
            .expect("alternative in range");
        let pb = order
            .iter()
            .position(|&x| x == b)
            .expect("alternative in range");
        pa < pb
    }

    /// `matrix[v-1][a-1]` is the rank of alternative `a` for voter `v`.
    /// Precomputed form of [`Ranking::positions`] for hot loops.
    pub fn position_matrix(&self) -> Vec<Vec<usize>> {
        self.rankings.iter().map(Ranking::positions).collect()
    }

    /// Parses the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self, ProfileError> {
        let mut header: Option<(usize, usize)> = None;
        let mut rows: Vec<Ranking> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match header {
                None => {
                    if tokens.len() != 2 {
                        return Err(ProfileError::MalformedHeader { line });
                    }
                    let m: usize = tokens[0]
                        .parse()
                        .map_err(|_| ProfileError::MalformedHeader { line })?;
                    let n: usize = tokens[1]
                        .parse()
                        .map_err(|_| ProfileError::MalformedHeader { line })?;
                    if m == 0 || n == 0 {
                        return Err(ProfileError::MalformedHeader { line });
                    }
                    header = Some((m, n));
                }
                Some((m, n)) => {
                    if rows.len() == n {
                        return Err(ProfileError::ExtraRows { line, expected: n });
                    }
                    let voter = rows.len() + 1;
                    let mut row = Vec::with_capacity(m);
                    for t in &tokens {
                        let alt: usize = t.parse().map_err(|_| ProfileError::InvalidToken {
                            line,
                            token: (*t).to_string(),
                        })?;
                        row.push(alt);
                    }
                    validate_row(m, &row).map_err(|issue| match issue {
                        RowIssue::WrongLength { got } => ProfileError::WrongRowLength {
                            line,
                            voter,
                            expected: m,
                            got,
                        },
                        RowIssue::Duplicate { alt } => {
                            ProfileError::DuplicateAlternative { line, voter, alt }
                        }
                        RowIssue::OutOfRange { alt } => ProfileError::AlternativeOutOfRange {
                            line,
                            voter,
                            alt,
                            m,
                        },
                    })?;
                    rows.push(Ranking { order: row });
                }
            }
        }
        let Some((m, n)) = header else {
            return Err(ProfileError::MissingHeader);
        };
        if rows.len() < n {
            return Err(ProfileError::TooFewRows {
                line: last_line + 1,
                expected: n,
                got: rows.len(),
            });
        }
        Ok(Profile { m, rankings: rows })
    }

    /// Serializes to the text format; `parse(to_text(p)) == p` byte-exactly
    /// modulo comments and blank lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.m, self.n());
        for r in &self.rankings {
            let row: Vec<String> = r.order.iter().map(|a| a.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Removes voter `v`; remaining voters keep their relative order and their
    /// rankings stay bit-identical. Alternative ids are untouched.
    pub fn delete_voter(&self, v: VoterId) -> Result<Self, ProfileError> {
        if v == 0 || v > self.n() {
            return Err(ProfileError::VoterOutOfRange {
                voter: v,
                n: self.n(),
            });
        }
        if self.n() == 1 {
            return Err(ProfileError::LastVoter);
        }
        let mut rankings = self.rankings.clone();
        rankings.remove(v - 1);
        Ok(Profile {
            m: self.m,
            rankings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    use crate::testutil::{example23, EXAMPLE23};

    #[test]
    fn parses_three_by_six() {
        let p = example23();
        assert_eq!(p.m(), 6);
        assert_eq!(p.n(), 3);
        assert_eq!(p.ranking(1).order(), &[3, 2, 1, 4, 5, 6]);
        assert_eq!(p.ranking(3).order(), &[5, 4, 3, 6, 2, 1]);
        assert_eq!(p.ranking(2).top(), 3);
        assert_eq!(p.ranking(2).bottom(), 1);
    }

    #[test]
    fn parses_smallest_profile() {
        let p = Profile::parse("1 1\n1\n").unwrap();
        assert_eq!((p.m(), p.n()), (1, 1));
        assert_eq!(p.ranking(1).order(), &[1]);
        assert_eq!(p.to_text(), "1 1\n1\n");
    }

    #[test]
    fn tolerates_comments_and_whitespace() {
        let text = "# fixture\n  # indented comment\n6 3   \n3 2 1 4 5 6\n\n3 4 2 5 6 1\t\n# between rows\n5 4 3 6 2 1\n";
        assert_eq!(Profile::parse(text).unwrap(), example23());
    }

    #[test]
    fn rejects_duplicate_alternative() {
        let err = Profile::parse("3 1\n1 1 2\n").unwrap_err();
        assert_eq!(
            err,
            ProfileError::DuplicateAlternative {
                line: 2,
                voter: 1,
                alt: 1
            }
        );
    }

    #[test]
    fn rejects_out_of_range_alternative() {
        let err = Profile::parse("3 1\n1 2 4\n").unwrap_err();
        assert_eq!(
            err,
            ProfileError::AlternativeOutOfRange {
                line: 2,
                voter: 1,
                alt: 4,
                m: 3
            }
        );
    }

    #[test]
    fn rejects_wrong_row_length() {
        let err = Profile::parse("3 2\n1 2 3\n1 2\n").unwrap_err();
        assert_eq!(
            err,
            ProfileError::WrongRowLength {
                line: 3,
                voter: 2,
                expected: 3,
                got: 2
            }
        );
    }

    #[test]
    fn rejects_malformed_headers() {
        assert_eq!(
            Profile::parse("x 3\n").unwrap_err(),
            ProfileError::MalformedHeader { line: 1 }
        );
        assert_eq!(
            Profile::parse("3\n").unwrap_err(),
            ProfileError::MalformedHeader { line: 1 }
        );
        assert_eq!(
            Profile::parse("0 2\n").unwrap_err(),
            ProfileError::MalformedHeader { line: 1 }
        );
        assert_eq!(
            Profile::parse("2 0\n").unwrap_err(),
            ProfileError::MalformedHeader { line: 1 }
        );
        assert_eq!(Profile::parse("").unwrap_err(), ProfileError::MissingHeader);
        assert_eq!(
            Profile::parse("# only a comment\n").unwrap_err(),
            ProfileError::MissingHeader
        );
    }

    #[test]
    fn rejects_wrong_row_counts() {
        let err = Profile::parse("3 2\n1 2 3\n").unwrap_err();
        assert_eq!(
            err,
            ProfileError::TooFewRows {
                line: 3,
                expected: 2,
                got: 1
            }
        );
        let err = Profile::parse("3 1\n1 2 3\n2 1 3\n").unwrap_err();
        assert_eq!(
            err,
            ProfileError::ExtraRows {
                line: 3,
                expected: 1
            }
        );
    }

    #[test]
    fn rejects_non_integer_row_token() {
        let err = Profile::parse("2 1\n1 b\n").unwrap_err();
        assert_eq!(
            err,
            ProfileError::InvalidToken {
                line: 2,
                token: "b".to_string()
            }
        );
    }

    #[test]
    fn serializes_example_exactly() {
        assert_eq!(example23().to_text(), EXAMPLE23);
    }

    #[test]
    fn deletes_middle_voter() {
        let p = example23();
        let q = p.delete_voter(2).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.ranking(1), p.ranking(1));
        assert_eq!(q.ranking(2), p.ranking(3));
    }

    #[test]
    fn delete_then_serialize_drops_exactly_one_row() {
        let p = example23();
        let q = p.delete_voter(1).unwrap();
        assert_eq!(q.to_text(), "6 2\n3 4 2 5 6 1\n5 4 3 6 2 1\n");
    }

    #[test]
    fn delete_voter_errors() {
        let p = example23();
        assert_eq!(
            p.delete_voter(0).unwrap_err(),
            ProfileError::VoterOutOfRange { voter: 0, n: 3 }
        );
        assert_eq!(
            p.delete_voter(4).unwrap_err(),
            ProfileError::VoterOutOfRange { voter: 4, n: 3 }
        );
        let single = Profile::parse("1 1\n1\n").unwrap();
        assert_eq!(single.delete_voter(1).unwrap_err(), ProfileError::LastVoter);
    }

    #[test]
    fn prefers_matches_rank_order() {
        let p = example23();
        assert!(p.prefers(1, 3, 2));
        assert!(p.prefers(1, 2, 6));
        assert!(!p.prefers(3, 1, 2));
    }

    #[test]
    fn new_validates_like_parse() {
        assert!(Profile::new(3, vec![vec![1, 2, 3]]).is_ok());
        assert_eq!(
            Profile::new(3, vec![vec![1, 2, 2]]).unwrap_err(),
            ProfileError::DuplicateAlternative {
                line: 2,
                voter: 1,
                alt: 2
            }
        );
        assert_eq!(
            Profile::new(0, vec![]).unwrap_err(),
            ProfileError::NoAlternatives
        );
        assert_eq!(Profile::new(2, vec![]).unwrap_err(), ProfileError::NoVoters);
    }

    proptest! {
        #[test]
        fn parse_serialize_round_trip(p in crate::testutil::arb_profile(5, 7)) {
            let text = p.to_text();
            prop_assert_eq!(Profile::parse(&text).unwrap(), p);
        }

        #[test]
        fn delete_keeps_other_rankings_bit_identical(
            p in crate::testutil::arb_profile(5, 6),
            pick in 0usize..5,
        ) {
            prop_assume!(p.n() >= 2);
            let v = pick % p.n() + 1;
            let q = p.delete_voter(v).unwrap();
            prop_assert_eq!(q.n(), p.n() - 1);
            for j in 1..=q.n() {
                let orig = if j < v { j } else { j + 1 };
                prop_assert_eq!(q.ranking(j), p.ranking(orig));
            }
        }
    }
}
