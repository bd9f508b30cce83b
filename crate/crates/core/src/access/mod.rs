//! Monotone access structures on a set of players.
//!
//! A structure is stored as its minimal authorized sets; the full family of
//! authorized sets is their up-closure within the player set. Player labels
//! are the 1-based bit positions of a [`Subset`].

mod family;
mod minors;
mod relation;

pub use family::Family;
pub use minors::{ForbiddenMinor, MinorWitness, MINOR_SEARCH_LIMIT};
pub use relation::{MatroidRelation, RELATION_LIMIT};

use std::fmt;

use thiserror::Error;

use crate::matroid::MatroidError;
use crate::subset::{minimalize, Subset, MAX_ELEMENTS};

/// Largest player count for operations that walk all `2^|P|` subsets.
pub const FAMILY_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AccessError {
    #[error("access structure has no authorized sets")]
    Empty,
    #[error("the empty set cannot be a minimal authorized set")]
    EmptySetAuthorized,
    #[error("player {0} is not a valid label (labels are 1..=63)")]
    BadLabel(usize),
    #[error("set {set} contains players outside {players}")]
    ForeignPlayers { set: Subset, players: Subset },
    #[error("{what} needs at most {limit} players, structure has {players}")]
    TooManyPlayers {
        what: &'static str,
        limit: usize,
        players: usize,
    },
    #[error("minor is degenerate: {0}")]
    Degenerate(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Matroid(#[from] Box<MatroidError>),
}

/// The verdicts of the three equivalent self-orthogonality tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfOrthogonality {
    /// No two minimal authorized sets are disjoint.
    pub pairwise: bool,
    /// Every authorized set is in the dual structure.
    pub dual_containment: bool,
    /// The dual of the adversary structure lies inside the adversary structure.
    pub adversary: bool,
}

impl SelfOrthogonality {
    pub fn agree(&self) -> bool {
        self.pairwise == self.dual_containment && self.pairwise == self.adversary
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AccessStructure {
    players: Subset,
    minimal: Vec<Subset>,
}

impl fmt::Debug for AccessStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AccessStructure(players {}, minimal ", self.players)?;
        f.debug_list().entries(&self.minimal).finish()?;
        f.write_str(")")
    }
}

impl AccessStructure {
    /// Builds a structure from generating sets; non-minimal members are
    /// dropped. The family must be nonempty and must not contain `{}`.
    pub fn new(players: Subset, sets: &[Subset]) -> Result<Self, AccessError> {
        if players.contains(0) {
            return Err(AccessError::BadLabel(0));
        }
        if sets.is_empty() {
            return Err(AccessError::Empty);
        }
        for &s in sets {
            if s.is_empty() {
                return Err(AccessError::EmptySetAuthorized);
            }
            if !s.is_subset_of(players) {
                return Err(AccessError::ForeignPlayers { set: s, players });
            }
        }
        Ok(AccessStructure {
            players,
            minimal: minimalize(sets),
        })
    }

    /// Players `{1, ..., n}`.
    pub fn on_players(n: usize, sets: &[Subset]) -> Result<Self, AccessError> {
        if n >= MAX_ELEMENTS {
            return Err(AccessError::BadLabel(n));
        }
        AccessStructure::new(Subset::span(1, n), sets)
    }

    /// Convenience constructor from label lists.
    pub fn from_lists(n: usize, sets: &[&[usize]]) -> Result<Self, AccessError> {
        let sets: Vec<Subset> = sets.iter().map(|s| s.iter().copied().collect()).collect();
        AccessStructure::on_players(n, &sets)
    }

    pub fn players(&self) -> Subset {
        self.players
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    /// Minimal authorized sets, sorted by size then lexicographically.
    pub fn minimal_sets(&self) -> &[Subset] {
        &self.minimal
    }

    fn check_within(&self, x: Subset) -> Result<(), AccessError> {
        if x.is_subset_of(self.players) {
            Ok(())
        } else {
            Err(AccessError::ForeignPlayers {
                set: x,
                players: self.players,
            })
        }
    }

    fn guard(&self, what: &'static str, limit: usize) -> Result<(), AccessError> {
        if self.num_players() > limit {
            Err(AccessError::TooManyPlayers {
                what,
                limit,
                players: self.num_players(),
            })
        } else {
            Ok(())
        }
    }

    pub fn is_authorized(&self, x: Subset) -> Result<bool, AccessError> {
        self.check_within(x)?;
        Ok(self.authorizes(x))
    }

    /// Unchecked membership test.
    pub(crate) fn authorizes(&self, x: Subset) -> bool {
        self.minimal.iter().any(|m| m.is_subset_of(x))
    }

    /// A minimal authorized set inside `x`, the first in canonical order.
    pub fn minimal_set_within(&self, x: Subset) -> Option<Subset> {
        self.minimal.iter().copied().find(|m| m.is_subset_of(x))
    }

    /// The family of all authorized sets.
    pub fn family(&self) -> Result<Family, AccessError> {
        self.guard("family enumeration", FAMILY_LIMIT)?;
        Ok(Family::from_predicate(self.players, |x| self.authorizes(x)))
    }

    /// Every authorized set, in increasing order of packed bits.
    pub fn authorized_sets(&self) -> Result<Vec<Subset>, AccessError> {
        Ok(self.family()?.members().collect())
    }

    pub fn count_authorized(&self) -> Result<u64, AccessError> {
        Ok(self.family()?.len())
    }

    /// The dual structure: `X` is authorized iff the complement of `X` is not.
    ///
    /// Its minimal sets are the minimal transversals of this structure's
    /// minimal sets, computed by Berge multiplication.
    pub fn dual(&self) -> AccessStructure {
        let mut transversals = vec![Subset::EMPTY];
        for &s in &self.minimal {
            let mut next = Vec::new();
            for &t in &transversals {
                if !t.is_disjoint(s) {
                    next.push(t);
                } else {
                    next.extend(s.iter().map(|x| t.with(x)));
                }
            }
            transversals = minimalize(&next);
        }
        AccessStructure {
            players: self.players,
            minimal: transversals,
        }
    }

    /// No two minimal authorized sets are disjoint.
    pub fn is_self_orthogonal_pairwise(&self) -> bool {
        self.minimal
            .iter()
            .enumerate()
            .all(|(i, a)| self.minimal[i..].iter().all(|b| !a.is_disjoint(*b)))
    }

    /// `Γ ⊆ Γ*`, comparing explicit families.
    pub fn is_self_orthogonal_by_dual(&self) -> Result<bool, AccessError> {
        let gamma = self.family()?;
        Ok(gamma.is_subfamily_of(&gamma.dual()))
    }

    /// `𝒜* ⊆ 𝒜` for the adversary structure `𝒜 = 2^P \ Γ`.
    pub fn is_self_orthogonal_by_adversary(&self) -> Result<bool, AccessError> {
        let adversary = self.family()?.complement();
        Ok(adversary.dual().is_subfamily_of(&adversary))
    }

    pub fn self_orthogonality(&self) -> Result<SelfOrthogonality, AccessError> {
        Ok(SelfOrthogonality {
            pairwise: self.is_self_orthogonal_pairwise(),
            dual_containment: self.is_self_orthogonal_by_dual()?,
            adversary: self.is_self_orthogonal_by_adversary()?,
        })
    }

    /// Self-orthogonality with all three tests required to agree.
    pub fn is_self_orthogonal(&self) -> Result<bool, AccessError> {
        let s = self.self_orthogonality()?;
        assert!(s.agree(), "self-orthogonality tests disagree: {s:?}");
        Ok(s.pairwise)
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    /// Every player lies in some minimal authorized set.
    pub fn is_connected(&self) -> bool {
        self.minimal
            .iter()
            .fold(Subset::EMPTY, |acc, &s| acc.union(s))
            == self.players
    }

    /// Union of all minimal authorized sets.
    pub fn covered_players(&self) -> Subset {
        self.minimal
            .iter()
            .fold(Subset::EMPTY, |acc, &s| acc.union(s))
    }

    /// `Γ \ Z`: authorized sets avoiding `Z`, on players `P \ Z`.
    pub fn delete(&self, z: Subset) -> Result<AccessStructure, AccessError> {
        self.check_within(z)?;
        let (players, sets) = minors::delete_raw(self.players, &self.minimal, z);
        AccessStructure::from_minor(players, sets)
    }

    /// `Γ / Z`: sets `X ⊆ P \ Z` with `X ∪ Z` authorized.
    pub fn contract(&self, z: Subset) -> Result<AccessStructure, AccessError> {
        self.check_within(z)?;
        let (players, sets) = minors::contract_raw(self.players, &self.minimal, z);
        AccessStructure::from_minor(players, sets)
    }

    fn from_minor(players: Subset, sets: Vec<Subset>) -> Result<Self, AccessError> {
        if sets.is_empty() {
            return Err(AccessError::Degenerate("no authorized sets remain"));
        }
        if sets.contains(&Subset::EMPTY) {
            return Err(AccessError::Degenerate("the empty set is authorized"));
        }
        Ok(AccessStructure {
            players,
            minimal: sets,
        })
    }

    /// Searches for a minor isomorphic to one of the forbidden minors of
    /// matroid ports. Smaller `|Z_del| + |Z_con|` is tried first, and at
    /// equal size more deletion is tried before more contraction.
    pub fn forbidden_minor(&self) -> Result<Option<MinorWitness>, AccessError> {
        self.guard("forbidden-minor search", MINOR_SEARCH_LIMIT)?;
        Ok(minors::find_forbidden_minor(self.players, &self.minimal))
    }

    /// Builds the candidate matroid on `P ∪ {D}` and reports whether it
    /// satisfies the circuit axioms and has this structure as its port.
    pub fn matroid_relation(&self) -> Result<MatroidRelation, AccessError> {
        self.guard("matroid relatedness", RELATION_LIMIT)?;
        relation::matroid_relation(self)
    }

    pub fn is_matroid_related(&self) -> Result<bool, AccessError> {
        Ok(self.matroid_relation()?.matroid.is_some())
    }

    /// Renames player `p` to `map(p)`. `map` must be injective on the players.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Result<AccessStructure, AccessError> {
        let players: Subset = self.players.iter().map(&map).collect();
        let sets: Vec<Subset> = self
            .minimal
            .iter()
            .map(|s| s.iter().map(&map).collect())
            .collect();
        AccessStructure::new(players, &sets)
    }

    /// Text form: `players <n>`, an optional `absent <labels>` line when the
    /// players are not exactly `1..=n`, then one minimal set per line.
    pub fn to_text(&self) -> String {
        let n = self.players.last().unwrap_or(0);
        let mut s = format!("players {n}\n");
        let absent = Subset::span(1, n).difference(self.players);
        if !absent.is_empty() {
            s.push_str("absent ");
            s.push_str(&labels(absent));
            s.push('\n');
        }
        for m in &self.minimal {
            s.push_str(&labels(*m));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, AccessError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let parsed = AccessStructure::parse_lines(&mut lines)?;
        if let Some(extra) = lines.next() {
            return Err(AccessError::Parse(format!("unexpected line `{extra}`")));
        }
        Ok(parsed)
    }

    /// Parses the text form from the remaining lines of `lines`.
    pub fn parse_lines<'a, I>(lines: &mut I) -> Result<Self, AccessError>
    where
        I: Iterator<Item = &'a str>,
    {
        let head = lines
            .next()
            .ok_or_else(|| AccessError::Parse("missing `players` line".into()))?;
        let mut toks = head.split_whitespace();
        if toks.next() != Some("players") {
            return Err(AccessError::Parse(format!(
                "expected `players <n>`, got `{head}`"
            )));
        }
        let n: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| AccessError::Parse(format!("bad player count in `{head}`")))?;
        if n >= MAX_ELEMENTS {
            return Err(AccessError::BadLabel(n));
        }
        let mut players = Subset::span(1, n);
        let mut sets = Vec::new();
        for line in lines {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("absent") {
                players = players.difference(parse_labels(rest)?);
                continue;
            }
            sets.push(parse_labels(line)?);
        }
        AccessStructure::new(players, &sets)
    }
}

/// Space-separated player labels.
pub fn labels(s: Subset) -> String {
    s.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_labels(line: &str) -> Result<Subset, AccessError> {
    let mut s = Subset::EMPTY;
    for t in line.split(|c: char| c.is_whitespace() || c == ',') {
        if t.is_empty() {
            continue;
        }
        let v: usize = t
            .parse()
            .map_err(|_| AccessError::Parse(format!("not a player label: `{t}`")))?;
        if v == 0 || v >= MAX_ELEMENTS {
            return Err(AccessError::BadLabel(v));
        }
        s = s.with(v);
    }
    Ok(s)
}

/// Every valid access structure on players `1..=n`: all antichains of
/// nonempty subsets, except the empty antichain.
pub fn enumerate_structures(n: usize) -> Vec<AccessStructure> {
    assert!(n <= 5, "enumeration is only practical for n <= 5");
    let players = Subset::span(1, n);
    let mut candidates: Vec<Subset> = players.subsets().filter(|s| !s.is_empty()).collect();
    candidates.sort_by(Subset::cmp_canonical);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn walk(
        cands: &[Subset],
        start: usize,
        chosen: &mut Vec<Subset>,
        players: Subset,
        out: &mut Vec<AccessStructure>,
    ) {
        if !chosen.is_empty() {
            out.push(AccessStructure {
                players,
                minimal: minimalize(chosen),
            });
        }
        for i in start..cands.len() {
            let c = cands[i];
            // candidates come in nondecreasing size, so only c ⊇ chosen can clash
            if chosen.iter().any(|s| s.is_subset_of(c)) {
                continue;
            }
            chosen.push(c);
            walk(cands, i + 1, chosen, players, out);
            chosen.pop();
        }
    }
    walk(&candidates, 0, &mut chosen, players, &mut out);
    out
}

/// Named structures that recur in tests and examples.
pub mod catalog {
    use super::AccessStructure;

    /// The lines of the Fano plane, as realized by the extended Hamming code
    /// with dealer 0.
    pub fn fano() -> AccessStructure {
        AccessStructure::from_lists(
            7,
            &[
                &[2, 3, 4],
                &[1, 3, 5],
                &[1, 2, 7],
                &[3, 6, 7],
                &[2, 5, 6],
                &[1, 4, 6],
                &[4, 5, 7],
            ],
        )
        .unwrap()
    }

    /// The ((k,n)) threshold structure.
    pub fn threshold(k: usize, n: usize) -> AccessStructure {
        let sets = crate::subset::k_subsets(crate::Subset::span(1, n), k);
        AccessStructure::on_players(n, &sets).unwrap()
    }

    pub fn gamma_a() -> AccessStructure {
        AccessStructure::from_lists(4, &[&[1, 2], &[2, 3], &[3, 4]]).unwrap()
    }

    pub fn gamma_b() -> AccessStructure {
        AccessStructure::from_lists(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3]]).unwrap()
    }

    pub fn gamma_c() -> AccessStructure {
        AccessStructure::from_lists(4, &[&[1, 2], &[1, 3], &[2, 3, 4]]).unwrap()
    }

    /// `{{1..s}, {1,s+1}, ..., {s,s+1}}` on `s + 1` players.
    pub fn gamma_d(s: usize) -> AccessStructure {
        let mut sets = vec![crate::Subset::span(1, s)];
        sets.extend((1..=s).map(|i| crate::Subset::from_iter([i, s + 1])));
        AccessStructure::on_players(s + 1, &sets).unwrap()
    }
}
