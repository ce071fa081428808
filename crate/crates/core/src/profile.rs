// Copyright 2026 The minimax-axioms Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Alternatives, voters, ballots and profiles.
//!
//! A ballot is an arbitrary irreflexive binary relation over the profile's
//! alternatives, stored as an explicit set of ordered pairs `(a, b)` meaning
//! "ranks `a` above `b`". Ties are the mutual absence of both pairs.
//! Strict weak orders and linear orders are refinements recognised by
//! [`Ballot::kind`].

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

/// Largest number of alternatives a profile may contain.
pub const MAX_ALTERNATIVES: usize = 8;

/// Largest number of alternatives accepted by [`ballot_space`].
pub const MAX_ENUMERATED_ALTERNATIVES: usize = 5;

const STRIDE: usize = 8;

#[inline]
fn bit(a: usize, b: usize) -> u64 {
    1u64 << (a * STRIDE + b)
}

/// Returns the default label of the alternative with the given index: `a`,
/// `b`, `c`, ...
pub fn default_label(index: usize) -> String {
    if index < 26 {
        ((b'a' + index as u8) as char).to_string()
    } else {
        format!("x{index}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alternative {
    pub index: usize,
    pub label: Option<String>,
}

impl Alternative {
    pub fn new(index: usize) -> Self {
        Alternative { index, label: None }
    }

    /// A label equal to the default label is dropped, so that explicitly
    /// and implicitly labelled alternatives compare equal.
    pub fn labelled(index: usize, label: impl Into<String>) -> Self {
        let label = label.into();
        Alternative {
            index,
            label: (label != default_label(index)).then_some(label),
        }
    }

    /// The label if present, the default label otherwise.
    pub fn display_label(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| default_label(self.index))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Voter(pub u32);

impl fmt::Display for Voter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Ballot classes, ordered from strongest to weakest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BallotKind {
    Linear,
    StrictWeakOrder,
    Relation,
}

impl BallotKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BallotKind::Linear => "linear",
            BallotKind::StrictWeakOrder => "strict-weak-order",
            BallotKind::Relation => "relation",
        }
    }

    /// True when every ballot of kind `self` is also of kind `other`.
    pub fn refines(&self, other: BallotKind) -> bool {
        *self <= other
    }
}

impl fmt::Display for BallotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BallotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(BallotKind::Linear),
            "swo" | "strict-weak-order" => Ok(BallotKind::StrictWeakOrder),
            "relation" => Ok(BallotKind::Relation),
            other => Err(Error::Domain(format!("unknown ballot kind {other:?}"))),
        }
    }
}

/// A binary relation over alternative indices `0..MAX_ALTERNATIVES`.
///
/// Ballots are totally ordered lexicographically on their sorted pair lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Ballot(u64);

impl Ballot {
    /// The empty relation: every alternative tied with every other.
    pub const fn empty() -> Self {
        Ballot(0)
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut ballot = Ballot::empty();
        for (a, b) in pairs {
            if a >= MAX_ALTERNATIVES || b >= MAX_ALTERNATIVES {
                return Err(Error::UnknownAlternative(a.max(b).to_string()));
            }
            ballot.0 |= bit(a, b);
        }
        Ok(ballot)
    }

    /// Builds the strict weak order whose tiers are listed best first.
    /// Alternatives in earlier tiers are ranked above those in later ones.
    pub fn from_tiers<T: AsRef<[usize]>>(tiers: &[T]) -> Result<Self> {
        let mut ballot = Ballot::empty();
        let mut seen = 0u64;
        for (i, upper) in tiers.iter().enumerate() {
            let upper = upper.as_ref();
            if upper.is_empty() {
                return Err(Error::Domain("empty tier".into()));
            }
            for &a in upper {
                if a >= MAX_ALTERNATIVES {
                    return Err(Error::UnknownAlternative(a.to_string()));
                }
                if seen & (1 << a) != 0 {
                    return Err(Error::Domain(format!("alternative {a} appears twice")));
                }
                seen |= 1 << a;
                for lower in &tiers[i + 1..] {
                    for &b in lower.as_ref() {
                        if b < MAX_ALTERNATIVES {
                            ballot.0 |= bit(a, b);
                        }
                    }
                }
            }
        }
        Ok(ballot)
    }

    /// Builds a linear order from alternatives listed best first.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let tiers: Vec<[usize; 1]> = order.iter().map(|&a| [a]).collect();
        Ballot::from_tiers(&tiers)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.0 & bit(a, b) != 0
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.0 |= bit(a, b);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.0 &= !bit(a, b);
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// Pairs in ascending lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some((i / STRIDE, i % STRIDE))
        })
    }

    /// Largest alternative index mentioned by the relation.
    pub fn max_alternative(&self) -> Option<usize> {
        self.pairs().map(|(a, b)| a.max(b)).max()
    }

    pub fn reflexive_alternative(&self) -> Option<usize> {
        (0..MAX_ALTERNATIVES).find(|&a| self.contains(a, a))
    }

    pub fn is_asymmetric(&self, n: usize) -> bool {
        (0..n).all(|a| (a + 1..n).all(|b| !(self.contains(a, b) && self.contains(b, a))))
    }

    /// If `(a, c)` is absent and `(c, b)` is absent then `(a, b)` is absent.
    pub fn is_negatively_transitive(&self, n: usize) -> bool {
        for a in 0..n {
            for b in 0..n {
                if !self.contains(a, b) {
                    continue;
                }
                for c in 0..n {
                    if !self.contains(a, c) && !self.contains(c, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_linear(&self, n: usize) -> bool {
        self.is_strict_weak_order(n)
            && (0..n).all(|a| (a + 1..n).all(|b| self.contains(a, b) || self.contains(b, a)))
    }

    pub fn is_strict_weak_order(&self, n: usize) -> bool {
        self.is_asymmetric(n) && self.is_negatively_transitive(n)
    }

    /// Strongest class this ballot belongs to, over alternatives `0..n`.
    pub fn kind(&self, n: usize) -> BallotKind {
        if !self.is_strict_weak_order(n) {
            BallotKind::Relation
        } else if self.is_linear(n) {
            BallotKind::Linear
        } else {
            BallotKind::StrictWeakOrder
        }
    }

    /// True iff the ballot ranks `a` above every other alternative in `0..n`.
    pub fn ranks_uniquely_first(&self, n: usize, a: usize) -> bool {
        (0..n).filter(|&b| b != a).all(|b| self.contains(a, b))
    }

    /// True iff the ballot ranks every other alternative in `0..n` above `a`.
    pub fn ranks_uniquely_last(&self, n: usize, a: usize) -> bool {
        (0..n).filter(|&b| b != a).all(|b| self.contains(b, a))
    }

    /// Tiers of a strict weak order, best first.
    pub fn tiers(&self, n: usize) -> Option<Vec<Vec<usize>>> {
        if !self.is_strict_weak_order(n) {
            return None;
        }
        let mut by_depth: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for a in 0..n {
            let above = (0..n).filter(|&b| self.contains(b, a)).count();
            by_depth.entry(above).or_default().push(a);
        }
        Some(by_depth.into_values().collect())
    }

    /// Alternatives best first, if the ballot is a linear order.
    pub fn linear_order(&self, n: usize) -> Option<Vec<usize>> {
        if !self.is_linear(n) {
            return None;
        }
        self.tiers(n)
            .map(|tiers| tiers.into_iter().map(|t| t[0]).collect())
    }

    /// Relation restricted to the alternatives in `keep`, re-indexed by
    /// position in `keep` (which must be sorted ascending).
    pub fn restrict(&self, keep: &[usize]) -> Ballot {
        let mut out = Ballot::empty();
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.contains(a, b) {
                    out.insert(i, j);
                }
            }
        }
        out
    }

    /// Applies an alternative permutation: `(a, b)` becomes `(tau[a], tau[b])`.
    pub fn permute(&self, tau: &[usize]) -> Ballot {
        let mut out = Ballot::empty();
        for (a, b) in self.pairs() {
            out.insert(tau[a], tau[b]);
        }
        out
    }

    /// The reverse relation.
    pub fn reversed(&self) -> Ballot {
        let mut out = Ballot::empty();
        for (a, b) in self.pairs() {
            out.insert(b, a);
        }
        out
    }

    /// Formats the ballot with the given labels, as tiers when possible.
    pub fn describe(&self, labels: &[String]) -> String {
        let n = labels.len();
        match self.tiers(n) {
            Some(tiers) => tiers
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|&a| labels[a].as_str())
                        .collect::<Vec<_>>()
                        .join("=")
                })
                .collect::<Vec<_>>()
                .join(">"),
            None => {
                let pairs: Vec<String> = self
                    .pairs()
                    .map(|(a, b)| format!("{}>{}", labels[a], labels[b]))
                    .collect();
                format!("{{{}}}", pairs.join(","))
            }
        }
    }
}

impl fmt::Debug for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl Ord for Ballot {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic order on the ascending pair lists. Pair (a, b) maps to
        // bit a * STRIDE + b, so the lists are the set bits in ascending order.
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let self_has_low = self.0 & low != 0;
        let without = if self_has_low { other.0 } else { self.0 };
        // Both lists agree below `low`. The list holding `low` is smaller
        // unless the other one has already ended.
        let holder_smaller = without & !(low | (low - 1)) != 0;
        if holder_smaller == self_has_low {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

/// Serialized as the sorted list of `[a, b]` pairs.
impl Serialize for Ballot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.pairs().map(|(a, b)| [a, b]))
    }
}

impl<'de> Deserialize<'de> for Ballot {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(usize, usize)> = Vec::deserialize(d)?;
        Ballot::from_pairs(pairs).map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for Ballot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An assignment of one ballot to each voter over a fixed list of
/// alternatives. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    alternatives: Vec<Alternative>,
    ballots: Vec<(Voter, Ballot)>,
    kind: BallotKind,
}

impl Profile {
    /// Validates and builds a profile.
    pub fn new(alternatives: Vec<Alternative>, ballots: Vec<(Voter, Ballot)>) -> Result<Self> {
        check_alternatives(&alternatives)?;
        let kind = validate(alternatives.len(), &ballots)?;
        Ok(Profile {
            alternatives,
            ballots,
            kind,
        })
    }

    /// Profile over `n` unlabelled alternatives with voters numbered from 0.
    pub fn from_ballots(n: usize, ballots: impl IntoIterator<Item = Ballot>) -> Result<Self> {
        let alternatives = (0..n).map(Alternative::new).collect();
        let ballots = ballots
            .into_iter()
            .enumerate()
            .map(|(i, b)| (Voter(i as u32), b))
            .collect();
        Profile::new(alternatives, ballots)
    }

    /// Profile from `(count, ballot)` groups, voters numbered from 0 in order.
    pub fn from_counts(n: usize, groups: &[(usize, Ballot)]) -> Result<Self> {
        Profile::from_ballots(
            n,
            groups
                .iter()
                .flat_map(|&(count, ballot)| std::iter::repeat_n(ballot, count)),
        )
    }

    /// Compact constructor for linear profiles over alternatives `a`, `b`,
    /// `c`, ...: each entry is a count and a ranking string such as `"cab"`.
    pub fn from_rankings(n: usize, groups: &[(usize, &str)]) -> Result<Self> {
        let mut parsed = Vec::with_capacity(groups.len());
        for &(count, ranking) in groups {
            let order = ranking
                .bytes()
                .map(|c| {
                    let i = c.wrapping_sub(b'a') as usize;
                    if i < n {
                        Ok(i)
                    } else {
                        Err(Error::UnknownAlternative((c as char).to_string()))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if order.len() != n {
                return Err(Error::Domain(format!(
                    "ranking {ranking:?} is not a linear order"
                )));
            }
            parsed.push((count, Ballot::from_order(&order)?));
        }
        Profile::from_counts(n, &parsed)
    }

    pub fn alternatives(&self) -> &[Alternative] {
        &self.alternatives
    }

    pub fn num_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn ballots(&self) -> &[(Voter, Ballot)] {
        &self.ballots
    }

    pub fn num_voters(&self) -> usize {
        self.ballots.len()
    }

    pub fn voters(&self) -> impl Iterator<Item = Voter> + '_ {
        self.ballots.iter().map(|&(v, _)| v)
    }

    /// The weakest ballot class occurring in the profile.
    pub fn kind(&self) -> BallotKind {
        self.kind
    }

    pub fn labels(&self) -> Vec<String> {
        self.alternatives
            .iter()
            .map(Alternative::display_label)
            .collect()
    }

    pub fn label(&self, a: usize) -> String {
        self.alternatives[a].display_label()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.alternatives
            .iter()
            .position(|alt| alt.display_label() == label)
    }

    pub fn ballot_of(&self, voter: Voter) -> Result<Ballot> {
        self.ballots
            .iter()
            .find(|&&(v, _)| v == voter)
            .map(|&(_, b)| b)
            .ok_or(Error::UnknownVoter(voter))
    }

    fn check_alternative(&self, a: usize) -> Result<()> {
        if a < self.num_alternatives() {
            Ok(())
        } else {
            Err(Error::UnknownAlternative(a.to_string()))
        }
    }

    /// True iff `voter` ranks `a` above `b`.
    pub fn ranks_above(&self, voter: Voter, a: usize, b: usize) -> Result<bool> {
        self.check_alternative(a)?;
        self.check_alternative(b)?;
        Ok(self.ballot_of(voter)?.contains(a, b))
    }

    pub fn ranks_uniquely_first(&self, voter: Voter, a: usize) -> Result<bool> {
        self.check_alternative(a)?;
        Ok(self
            .ballot_of(voter)?
            .ranks_uniquely_first(self.num_alternatives(), a))
    }

    pub fn ranks_uniquely_last(&self, voter: Voter, a: usize) -> Result<bool> {
        self.check_alternative(a)?;
        Ok(self
            .ballot_of(voter)?
            .ranks_uniquely_last(self.num_alternatives(), a))
    }

    /// Same alternatives, voters and ballots replaced wholesale. Used by the
    /// transformations, which preserve the alternative list.
    pub(crate) fn with_ballots(&self, ballots: Vec<(Voter, Ballot)>) -> Result<Self> {
        Profile::new(self.alternatives.clone(), ballots)
    }

    /// Smallest voter ids not used by this profile, in ascending order.
    pub fn fresh_voters(&self, count: usize) -> Vec<Voter> {
        let used: HashSet<u32> = self.voters().map(|v| v.0).collect();
        (0u32..)
            .filter(|id| !used.contains(id))
            .take(count)
            .map(Voter)
            .collect()
    }

    /// Number of voters submitting each distinct ballot.
    pub fn ballot_counts(&self) -> BTreeMap<Ballot, usize> {
        let mut counts = BTreeMap::new();
        for &(_, b) in &self.ballots {
            *counts.entry(b).or_insert(0) += 1;
        }
        counts
    }

    /// Human-readable one-line summary, e.g. `4:abc 3:c>a=b`.
    pub fn describe(&self) -> String {
        let labels = self.labels();
        let mut groups: Vec<(Ballot, usize)> = Vec::new();
        for &(_, b) in &self.ballots {
            match groups.last_mut() {
                Some((last, count)) if *last == b => *count += 1,
                _ => groups.push((b, 1)),
            }
        }
        groups
            .iter()
            .map(|(b, c)| format!("{c}:{}", b.describe(&labels)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn check_alternatives(alternatives: &[Alternative]) -> Result<()> {
    if alternatives.is_empty() {
        return Err(Error::NoAlternatives);
    }
    if alternatives.len() > MAX_ALTERNATIVES {
        return Err(Error::TooManyAlternatives {
            got: alternatives.len(),
            max: MAX_ALTERNATIVES,
        });
    }
    let mut labels = HashSet::new();
    for (position, alt) in alternatives.iter().enumerate() {
        if alt.index != position {
            return Err(Error::NonContiguousAlternative {
                position,
                found: alt.index,
            });
        }
        if let Some(label) = &alt.label {
            if !labels.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
    }
    Ok(())
}

/// Classifies the ballots of a would-be profile over `n` alternatives and
/// returns the weakest class present.
pub fn validate(n: usize, ballots: &[(Voter, Ballot)]) -> Result<BallotKind> {
    if n == 0 {
        return Err(Error::NoAlternatives);
    }
    if n > MAX_ALTERNATIVES {
        return Err(Error::TooManyAlternatives {
            got: n,
            max: MAX_ALTERNATIVES,
        });
    }
    if ballots.is_empty() {
        return Err(Error::NoBallots);
    }
    let mut seen = HashSet::with_capacity(ballots.len());
    let mut weakest = BallotKind::Linear;
    for &(voter, ballot) in ballots {
        if !seen.insert(voter) {
            return Err(Error::DuplicateVoter(voter));
        }
        if let Some(alternative) = ballot.reflexive_alternative() {
            return Err(Error::ReflexivePair { voter, alternative });
        }
        if let Some(max) = ballot.max_alternative() {
            if max >= n {
                return Err(Error::UnknownAlternative(max.to_string()));
            }
        }
        weakest = weakest.max(ballot.kind(n));
    }
    Ok(weakest)
}

/// Fails unless every ballot of the profile belongs to `required`.
pub fn require_kind(profile: &Profile, required: BallotKind) -> Result<()> {
    if profile.kind().refines(required) {
        return Ok(());
    }
    let n = profile.num_alternatives();
    let (voter, ballot) = profile
        .ballots()
        .iter()
        .find(|(_, b)| !b.kind(n).refines(required))
        .expect("some ballot is weaker than the profile kind allows");
    Err(Error::BallotKind {
        voter: *voter,
        found: ballot.kind(n),
        required,
    })
}

/// Anonymity-respecting normal form: ballots sorted, voters renumbered
/// `0..n`. Two profiles share a canonical form iff one is a voter
/// permutation of the other.
pub fn canonical_form(profile: &Profile) -> Profile {
    let mut ballots: Vec<Ballot> = profile.ballots.iter().map(|&(_, b)| b).collect();
    ballots.sort();
    Profile {
        alternatives: profile.alternatives.clone(),
        ballots: ballots
            .into_iter()
            .enumerate()
            .map(|(i, b)| (Voter(i as u32), b))
            .collect(),
        kind: profile.kind,
    }
}

/// All distinct ballots of the given kind over `n` alternatives, sorted by
/// the ballot order.
pub fn ballot_space(n: usize, kind: BallotKind) -> Result<Vec<Ballot>> {
    if n == 0 || n > MAX_ENUMERATED_ALTERNATIVES {
        return Err(Error::Unsupported(format!(
            "ballot spaces are enumerated for 1 to {MAX_ENUMERATED_ALTERNATIVES} alternatives, got {n}"
        )));
    }
    let mut out: BTreeSet<Ballot> = BTreeSet::new();
    match kind {
        BallotKind::Linear | BallotKind::StrictWeakOrder => {
            // Every weak order is a level assignment using levels 0..k.
            let total = n.pow(n as u32);
            let mut levels = vec![0usize; n];
            for code in 0..total {
                let mut c = code;
                for level in levels.iter_mut() {
                    *level = c % n;
                    c /= n;
                }
                let used: BTreeSet<usize> = levels.iter().copied().collect();
                if used.len() != used.iter().max().unwrap() + 1 {
                    continue;
                }
                if kind == BallotKind::Linear && used.len() != n {
                    continue;
                }
                let mut ballot = Ballot::empty();
                for a in 0..n {
                    for b in 0..n {
                        if levels[a] < levels[b] {
                            ballot.insert(a, b);
                        }
                    }
                }
                out.insert(ballot);
            }
        }
        BallotKind::Relation => {
            let slots: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
                .collect();
            for mask in 0u64..(1 << slots.len()) {
                let mut ballot = Ballot::empty();
                for (i, &(a, b)) in slots.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        ballot.insert(a, b);
                    }
                }
                out.insert(ballot);
            }
        }
    }
    Ok(out.into_iter().collect())
}
