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

//! Voting methods behind a uniform registry.
//!
//! Every method maps a profile in its declared [`Domain`] to a nonempty
//! [`WinnerSet`]. Margin-based methods accept arbitrary relation ballots;
//! the positional and order-based ones (Bucklin, Coombs, Kemeny) require
//! linear ballots.

use crate::error::{Error, Result};
use crate::margin::{support_table, MarginGraph};
use crate::profile::{require_kind, BallotKind, Profile, Voter, MAX_ALTERNATIVES};
use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Nonempty set of alternative indices, stored as a bit set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WinnerSet(u32);

impl WinnerSet {
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        WinnerSet(indices.into_iter().fold(0, |acc, a| acc | (1 << a)))
    }

    pub fn singleton(a: usize) -> Self {
        WinnerSet(1 << a)
    }

    /// Every alternative of an `n`-alternative profile.
    pub fn all(n: usize) -> Self {
        WinnerSet(((1u64 << n) - 1) as u32)
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn contains(&self, a: usize) -> bool {
        self.0 & (1 << a) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_singleton_of(&self, a: usize) -> bool {
        self.0 == 1 << a
    }

    pub fn is_subset(&self, other: &WinnerSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(&self, other: &WinnerSet) -> WinnerSet {
        WinnerSet(self.0 & other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(move |&a| self.contains(a))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the set under an index map.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> WinnerSet {
        WinnerSet::from_indices(self.iter().map(f))
    }

    /// Labels sorted alphabetically, e.g. `{a, c}`.
    pub fn describe(&self, labels: &[String]) -> String {
        let names: Vec<&str> = self.iter().map(|a| labels[a].as_str()).sorted().collect();
        format!("{{{}}}", names.join(", "))
    }
}

impl fmt::Debug for WinnerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for WinnerSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WinnerSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if v.iter().any(|&a| a >= MAX_ALTERNATIVES) {
            return Err(serde::de::Error::custom("alternative index out of range"));
        }
        Ok(WinnerSet::from_indices(v))
    }
}

/// Profiles a method is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Domain {
    pub min_alternatives: usize,
    pub max_alternatives: usize,
    /// Weakest ballot class accepted.
    pub ballots: BallotKind,
    /// Whether the method ignores voter names, so that one profile per
    /// anonymous class suffices in searches.
    pub anonymous: bool,
}

impl Domain {
    const fn margins(max_alternatives: usize) -> Self {
        Domain {
            min_alternatives: 1,
            max_alternatives,
            ballots: BallotKind::Relation,
            anonymous: true,
        }
    }

    pub fn admits(&self, num_alternatives: usize, kind: BallotKind) -> bool {
        (self.min_alternatives..=self.max_alternatives).contains(&num_alternatives)
            && kind.refines(self.ballots)
    }

    pub fn check(&self, profile: &Profile, method: &str) -> Result<()> {
        let n = profile.num_alternatives();
        if !(self.min_alternatives..=self.max_alternatives).contains(&n) {
            return Err(Error::Domain(format!(
                "{method} is defined for {} to {} alternatives, got {n}",
                self.min_alternatives, self.max_alternatives
            )));
        }
        require_kind(profile, self.ballots)
    }
}

/// Anything that maps profiles to winner sets.
pub trait VotingMethod: Sync {
    fn name(&self) -> String;

    fn domain(&self) -> Domain;

    fn winners(&self, profile: &Profile) -> Result<WinnerSet>;

    /// Registry id, for methods that can be replayed from a witness file.
    fn id(&self) -> Option<MethodId> {
        None
    }
}

/// Stable identifiers of the built-in methods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodId {
    Majority,
    Minimax,
    MinimaxSupport,
    MinimaxMb,
    BordaMarginal,
    CondorcetPlurality,
    Bucklin,
    Coombs,
    Kemeny,
    Trivial,
    FixedOrder,
    DictatorPair,
    HomogeneityViolator,
    BlockViolator,
}

/// Voters designated by the registry's dictator-pair method.
pub const DICTATOR_PAIR: (Voter, Voter) = (Voter(0), Voter(1));

impl MethodId {
    pub const ALL: [MethodId; 14] = [
        MethodId::Majority,
        MethodId::Minimax,
        MethodId::MinimaxSupport,
        MethodId::MinimaxMb,
        MethodId::BordaMarginal,
        MethodId::CondorcetPlurality,
        MethodId::Bucklin,
        MethodId::Coombs,
        MethodId::Kemeny,
        MethodId::Trivial,
        MethodId::FixedOrder,
        MethodId::DictatorPair,
        MethodId::HomogeneityViolator,
        MethodId::BlockViolator,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MethodId::Majority => "majority",
            MethodId::Minimax => "minimax",
            MethodId::MinimaxSupport => "minimax-support",
            MethodId::MinimaxMb => "minimax-mb",
            MethodId::BordaMarginal => "borda-marginal",
            MethodId::CondorcetPlurality => "condorcet-plurality",
            MethodId::Bucklin => "bucklin",
            MethodId::Coombs => "coombs",
            MethodId::Kemeny => "kemeny",
            MethodId::Trivial => "trivial",
            MethodId::FixedOrder => "fixed-order",
            MethodId::DictatorPair => "dictator-pair",
            MethodId::HomogeneityViolator => "homogeneity-violator",
            MethodId::BlockViolator => "block-violator",
        }
    }

    /// Per-alternative scores reported alongside the winners, when the
    /// method is score based: the score name and one value per alternative.
    pub fn scores(&self, profile: &Profile) -> Option<(&'static str, Vec<i64>)> {
        let n = profile.num_alternatives();
        let graph = MarginGraph::from_profile(profile);
        match self {
            MethodId::Minimax
            | MethodId::HomogeneityViolator
            | MethodId::BlockViolator
            | MethodId::DictatorPair => {
                Some(("minimax", (0..n).map(|a| graph.minimax_score(a)).collect()))
            }
            MethodId::MinimaxSupport => Some(("support-minimax", support_scores(profile))),
            MethodId::MinimaxMb | MethodId::BordaMarginal => Some((
                "marginal-borda",
                (0..n).map(|a| graph.marginal_borda_score(a)).collect(),
            )),
            MethodId::CondorcetPlurality => Some(("plurality", plurality_scores(profile))),
            _ => None,
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MethodId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown method {s:?}")))
    }
}

impl Serialize for MethodId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for MethodId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl VotingMethod for MethodId {
    fn name(&self) -> String {
        self.as_str().to_string()
    }

    fn id(&self) -> Option<MethodId> {
        Some(*self)
    }

    fn domain(&self) -> Domain {
        match self {
            MethodId::Majority => Domain {
                min_alternatives: 2,
                max_alternatives: 2,
                ..Domain::margins(2)
            },
            MethodId::Bucklin | MethodId::Coombs => Domain {
                ballots: BallotKind::Linear,
                ..Domain::margins(MAX_ALTERNATIVES)
            },
            MethodId::Kemeny => Domain {
                ballots: BallotKind::Linear,
                ..Domain::margins(KEMENY_MAX_ALTERNATIVES)
            },
            MethodId::DictatorPair => Domain {
                anonymous: false,
                ..Domain::margins(MAX_ALTERNATIVES)
            },
            MethodId::HomogeneityViolator | MethodId::BlockViolator => Domain::margins(3),
            _ => Domain::margins(MAX_ALTERNATIVES),
        }
    }

    fn winners(&self, profile: &Profile) -> Result<WinnerSet> {
        self.domain().check(profile, self.as_str())?;
        let winners = match self {
            MethodId::Majority => majority(profile)?,
            MethodId::Minimax => minimax(profile),
            MethodId::MinimaxSupport => minimax_support(profile),
            MethodId::MinimaxMb => minimax_mb(profile),
            MethodId::BordaMarginal => borda_marginal(profile),
            MethodId::CondorcetPlurality => condorcet_plurality(profile),
            MethodId::Bucklin => bucklin(profile)?,
            MethodId::Coombs => coombs(profile)?,
            MethodId::Kemeny => kemeny(profile)?,
            MethodId::Trivial => trivial(profile),
            MethodId::FixedOrder => fixed_order(profile),
            MethodId::DictatorPair => dictator_pair(profile, DICTATOR_PAIR.0, DICTATOR_PAIR.1),
            MethodId::HomogeneityViolator => homogeneity_violator(profile)?,
            MethodId::BlockViolator => block_violator(profile)?,
        };
        debug_assert!(
            !winners.is_empty() && winners.is_subset(&WinnerSet::all(profile.num_alternatives()))
        );
        Ok(winners)
    }
}

/// Wraps a closure as a [`VotingMethod`].
pub struct FnMethod<F> {
    name: String,
    domain: Domain,
    f: F,
}

impl<F> FnMethod<F>
where
    F: Fn(&Profile) -> Result<WinnerSet> + Sync,
{
    pub fn new(name: impl Into<String>, domain: Domain, f: F) -> Self {
        FnMethod {
            name: name.into(),
            domain,
            f,
        }
    }
}

impl<F> VotingMethod for FnMethod<F>
where
    F: Fn(&Profile) -> Result<WinnerSet> + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn domain(&self) -> Domain {
        self.domain
    }

    fn winners(&self, profile: &Profile) -> Result<WinnerSet> {
        self.domain.check(profile, &self.name)?;
        (self.f)(profile)
    }
}

pub const KEMENY_MAX_ALTERNATIVES: usize = 5;

fn argmin(scores: &[i64]) -> WinnerSet {
    let best = scores
        .iter()
        .copied()
        .min()
        .expect("at least one alternative");
    WinnerSet::from_indices((0..scores.len()).filter(|&a| scores[a] == best))
}

fn argmax_within(scores: &[i64], within: WinnerSet) -> WinnerSet {
    let best = within
        .iter()
        .map(|a| scores[a])
        .max()
        .expect("nonempty candidate set");
    WinnerSet::from_indices(within.iter().filter(|&a| scores[a] == best))
}

/// Majority rule on two alternatives.
pub fn majority(profile: &Profile) -> Result<WinnerSet> {
    if profile.num_alternatives() != 2 {
        return Err(Error::Domain(format!(
            "majority needs exactly 2 alternatives, got {}",
            profile.num_alternatives()
        )));
    }
    let m = MarginGraph::from_profile(profile).margin(0, 1);
    Ok(match m.signum() {
        1 => WinnerSet::singleton(0),
        0 => WinnerSet::all(2),
        _ => WinnerSet::singleton(1),
    })
}

pub fn minimax_score(profile: &Profile, a: usize) -> Result<i64> {
    if a >= profile.num_alternatives() {
        return Err(Error::UnknownAlternative(a.to_string()));
    }
    Ok(MarginGraph::from_profile(profile).minimax_score(a))
}

pub fn minimax_scores(graph: &MarginGraph) -> Vec<i64> {
    (0..graph.num_alternatives())
        .map(|a| graph.minimax_score(a))
        .collect()
}

/// Alternatives whose largest loss is smallest.
pub fn minimax(profile: &Profile) -> WinnerSet {
    minimax_from_graph(&MarginGraph::from_profile(profile))
}

pub fn minimax_from_graph(graph: &MarginGraph) -> WinnerSet {
    argmin(&minimax_scores(graph))
}

fn support_scores(profile: &Profile) -> Vec<i64> {
    let support = support_table(profile);
    let n = profile.num_alternatives();
    (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| support[b][a] > support[a][b])
                .map(|b| support[b][a] as i64)
                .max()
                .unwrap_or(0)
        })
        .collect()
}

/// Minimax measuring a loss to an opponent with a positive margin by the
/// number of voters ranking that opponent above, rather than by the margin.
pub fn minimax_support(profile: &Profile) -> WinnerSet {
    argmin(&support_scores(profile))
}

pub fn marginal_borda_score(profile: &Profile, a: usize) -> Result<i64> {
    if a >= profile.num_alternatives() {
        return Err(Error::UnknownAlternative(a.to_string()));
    }
    Ok(MarginGraph::from_profile(profile).marginal_borda_score(a))
}

fn marginal_borda_scores(graph: &MarginGraph) -> Vec<i64> {
    (0..graph.num_alternatives())
        .map(|a| graph.marginal_borda_score(a))
        .collect()
}

pub fn borda_marginal(profile: &Profile) -> WinnerSet {
    let graph = MarginGraph::from_profile(profile);
    argmax_within(
        &marginal_borda_scores(&graph),
        WinnerSet::all(graph.num_alternatives()),
    )
}

/// Minimax winners with the greatest marginal Borda score.
pub fn minimax_mb(profile: &Profile) -> WinnerSet {
    let graph = MarginGraph::from_profile(profile);
    argmax_within(&marginal_borda_scores(&graph), minimax_from_graph(&graph))
}

/// Number of voters ranking each alternative uniquely first.
pub fn plurality_scores(profile: &Profile) -> Vec<i64> {
    let n = profile.num_alternatives();
    (0..n)
        .map(|a| {
            profile
                .ballots()
                .iter()
                .filter(|(_, b)| b.ranks_uniquely_first(n, a))
                .count() as i64
        })
        .collect()
}

/// Weak Condorcet winners if any, otherwise the plurality winners.
pub fn condorcet_plurality(profile: &Profile) -> WinnerSet {
    let weak = MarginGraph::from_profile(profile).weak_condorcet_winners();
    if !weak.is_empty() {
        return WinnerSet::from_indices(weak);
    }
    let scores = plurality_scores(profile);
    argmax_within(&scores, WinnerSet::all(profile.num_alternatives()))
}

fn linear_orders(profile: &Profile) -> Result<Vec<Vec<usize>>> {
    require_kind(profile, BallotKind::Linear)?;
    let n = profile.num_alternatives();
    Ok(profile
        .ballots()
        .iter()
        .map(|(_, b)| b.linear_order(n).expect("linear ballot"))
        .collect())
}

/// First round `r` in which some alternative appears in the top `r`
/// positions of more than half the ballots; the alternatives with the most
/// such appearances win.
pub fn bucklin(profile: &Profile) -> Result<WinnerSet> {
    let orders = linear_orders(profile)?;
    let n = profile.num_alternatives();
    let voters = orders.len() as i64;
    for round in 1..=n {
        let mut counts = vec![0i64; n];
        for order in &orders {
            for &a in &order[..round] {
                counts[a] += 1;
            }
        }
        if counts.iter().any(|&c| 2 * c > voters) {
            return Ok(argmax_within(&counts, WinnerSet::all(n)));
        }
    }
    unreachable!("every alternative is in the top n of every ballot")
}

/// Eliminates the alternatives with the most last-place votes until one has
/// a strict majority of first-place votes among those remaining.
pub fn coombs(profile: &Profile) -> Result<WinnerSet> {
    let orders = linear_orders(profile)?;
    let n = profile.num_alternatives();
    let voters = orders.len() as i64;
    let mut remaining = WinnerSet::all(n);
    loop {
        if remaining.len() == 1 {
            return Ok(remaining);
        }
        let mut firsts = vec![0i64; n];
        let mut lasts = vec![0i64; n];
        for order in &orders {
            let mut alive = order.iter().copied().filter(|&a| remaining.contains(a));
            let first = alive.next().expect("nonempty field");
            let last = alive.next_back().unwrap_or(first);
            firsts[first] += 1;
            lasts[last] += 1;
        }
        if let Some(w) = remaining.iter().find(|&a| 2 * firsts[a] > voters) {
            return Ok(WinnerSet::singleton(w));
        }
        let eliminated = argmax_within(&lasts, remaining);
        let next = WinnerSet(remaining.0 & !eliminated.0);
        if next.is_empty() {
            return Ok(eliminated);
        }
        remaining = next;
    }
}

/// Tops of the linear orders minimising the Kemeny score, the sum over
/// ordered pairs `(x, y)` of the order of the number of voters ranking `y`
/// above `x`.
pub fn kemeny(profile: &Profile) -> Result<WinnerSet> {
    let n = profile.num_alternatives();
    if n > KEMENY_MAX_ALTERNATIVES {
        return Err(Error::Unsupported(format!(
            "kemeny enumerates orders of at most {KEMENY_MAX_ALTERNATIVES} alternatives, got {n}"
        )));
    }
    require_kind(profile, BallotKind::Linear)?;
    let support = support_table(profile);
    let mut best = u64::MAX;
    let mut winners = WinnerSet::default();
    for order in (0..n).permutations(n) {
        let mut score = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                score += support[order[j]][order[i]];
            }
        }
        if score < best {
            best = score;
            winners = WinnerSet::singleton(order[0]);
        } else if score == best {
            winners = WinnerSet(winners.0 | (1 << order[0]));
        }
    }
    Ok(winners)
}

pub fn trivial(profile: &Profile) -> WinnerSet {
    WinnerSet::all(profile.num_alternatives())
}

/// The alternative with the least index.
pub fn fixed_order(_profile: &Profile) -> WinnerSet {
    WinnerSet::singleton(0)
}

/// `first`'s favourite when the profile consists of exactly the voters
/// `first` and `second` holding reversed linear orders; Minimax otherwise.
pub fn dictator_pair(profile: &Profile, first: Voter, second: Voter) -> WinnerSet {
    let n = profile.num_alternatives();
    if let [(v0, b0), (v1, b1)] = profile.ballots() {
        let (mine, theirs) = match (*v0, *v1) {
            (x, y) if x == first && y == second => (b0, b1),
            (x, y) if x == second && y == first => (b1, b0),
            _ => return minimax(profile),
        };
        if mine.is_linear(n) && *theirs == mine.reversed() {
            let top = mine.linear_order(n).expect("linear")[0];
            return WinnerSet::singleton(top);
        }
    }
    minimax(profile)
}

fn at_most_three(profile: &Profile, name: &str) -> Result<()> {
    if profile.num_alternatives() > 3 {
        return Err(Error::Domain(format!(
            "{name} is defined for at most 3 alternatives, got {}",
            profile.num_alternatives()
        )));
    }
    Ok(())
}

/// Minimax, except that when (I) all Minimax scores are distinct, (II) the
/// runner-up's score is at most one worse than the winner's and (III) the
/// runner-up beats the winner head to head, both are selected.
pub fn homogeneity_violator(profile: &Profile) -> Result<WinnerSet> {
    at_most_three(profile, "homogeneity-violator")?;
    let graph = MarginGraph::from_profile(profile);
    let scores = minimax_scores(&graph);
    let base = argmin(&scores);
    let n = scores.len();
    if n < 2 || scores.iter().sorted().dedup().count() != n {
        return Ok(base);
    }
    let ranked: Vec<usize> = (0..n).sorted_by_key(|&a| scores[a]).collect();
    let (winner, runner_up) = (ranked[0], ranked[1]);
    if scores[runner_up] - scores[winner] <= 1 && graph.beats(runner_up, winner) {
        return Ok(WinnerSet::from_indices([winner, runner_up]));
    }
    Ok(base)
}

/// Roles `(x, y, z)` under which the margin graph is the cycle
/// `x -> y` (n), `y -> z` (k), `z -> x` (m) with `0 < n` and
/// `0 <= m - n < k - m`.
pub fn block_violator_roles(graph: &MarginGraph) -> Vec<[usize; 3]> {
    if graph.num_alternatives() != 3 {
        return Vec::new();
    }
    (0..3)
        .permutations(3)
        .map(|p| [p[0], p[1], p[2]])
        .filter(|&[x, y, z]| {
            let n = graph.margin(x, y);
            let k = graph.margin(y, z);
            let m = graph.margin(z, x);
            n > 0 && 0 <= m - n && m - n < k - m
        })
        .collect()
}

/// Minimax, except that `{x}` is selected when the margin graph is a cycle
/// matching [`block_violator_roles`] and no voter submits the linear order
/// `y > x > z`.
pub fn block_violator(profile: &Profile) -> Result<WinnerSet> {
    at_most_three(profile, "block-violator")?;
    let graph = MarginGraph::from_profile(profile);
    let roles = block_violator_roles(&graph);
    debug_assert!(
        roles.len() <= 1,
        "the heaviest edge of the cycle fixes the roles"
    );
    if let Some(&[x, y, z]) = roles.first() {
        let yxz = crate::profile::Ballot::from_order(&[y, x, z])?;
        if profile.ballots().iter().all(|&(_, b)| b != yxz) {
            return Ok(WinnerSet::singleton(x));
        }
    }
    Ok(minimax_from_graph(&graph))
}
