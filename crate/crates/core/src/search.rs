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

//! Exhaustive and randomized searches for axiom violations.
//!
//! Exhaustive searches walk anonymous classes of profiles: for each voter
//! count in increasing order, every multiset of ballots in lexicographic
//! order of sorted ballot indices. Methods that read voter names get every
//! sequence of ballots instead. Random searches draw profile `i` from its
//! own ChaCha stream, so any split of the index range into worker ranges
//! sees exactly the profiles the serial search sees.

use crate::axioms::{check_axiom, check_immunity, AxiomId, AxiomWitness, CheckOptions};
use crate::error::{Error, Result};
use crate::margin::{MarginGraph, OrdinalMarginGraph};
use crate::methods::{MethodId, VotingMethod, WinnerSet};
use crate::profile::{ballot_space, Ballot, BallotKind, Profile};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Largest alternative count for exhaustive enumeration.
pub const MAX_EXHAUSTIVE_ALTERNATIVES: usize = 4;

/// Default number of random profiles when no budget is given.
pub const DEFAULT_RANDOM_BUDGET: u64 = 10_000;

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| {
        // acc * (n - i) / (i + 1) is always an integer.
        let num = acc as u128 * (n - i) as u128 / (i + 1) as u128;
        u64::try_from(num).unwrap_or(u64::MAX)
    })
}

/// Number of anonymous classes with `voters` voters over `t` ballots.
pub fn multisets(t: u64, voters: u64) -> u64 {
    binomial(voters + t - 1, t - 1)
}

/// Number of anonymous classes with between 1 and `max_voters` voters.
pub fn enumeration_size(t: u64, max_voters: u64) -> u64 {
    (1..=max_voters)
        .map(|v| multisets(t, v))
        .fold(0, u64::saturating_add)
}

fn check_enumerable(n: usize, kind: BallotKind) -> Result<()> {
    if n == 0 || n > MAX_EXHAUSTIVE_ALTERNATIVES {
        return Err(Error::Unsupported(format!(
            "exhaustive enumeration covers 1 to {MAX_EXHAUSTIVE_ALTERNATIVES} alternatives, got {n}"
        )));
    }
    if n == MAX_EXHAUSTIVE_ALTERNATIVES && kind != BallotKind::Linear {
        return Err(Error::Unsupported(format!(
            "exhaustive enumeration of {n} alternatives requires linear ballots"
        )));
    }
    Ok(())
}

/// The profiles an exhaustive search visits, addressable by index.
#[derive(Clone, Debug)]
pub struct Enumeration {
    n: usize,
    space: Vec<Ballot>,
    min_voters: usize,
    max_voters: usize,
    anonymous: bool,
}

impl Enumeration {
    pub fn new(
        n: usize,
        kind: BallotKind,
        min_voters: usize,
        max_voters: usize,
        anonymous: bool,
    ) -> Result<Self> {
        check_enumerable(n, kind)?;
        if min_voters == 0 || min_voters > max_voters {
            return Err(Error::Domain(format!(
                "voter range {min_voters}..={max_voters} is empty or starts at 0"
            )));
        }
        Ok(Enumeration {
            n,
            space: ballot_space(n, kind)?,
            min_voters,
            max_voters,
            anonymous,
        })
    }

    fn count_with(&self, voters: usize) -> u64 {
        let t = self.space.len() as u64;
        if self.anonymous {
            multisets(t, voters as u64)
        } else {
            t.saturating_pow(voters as u32)
        }
    }

    pub fn len(&self) -> u64 {
        (self.min_voters..=self.max_voters)
            .map(|v| self.count_with(v))
            .fold(0, u64::saturating_add)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Profiles with indices in `start..end`, in order.
    pub fn range(&self, start: u64, end: u64) -> impl Iterator<Item = (u64, Profile)> + '_ {
        let mut offset = 0u64;
        let mut blocks = Vec::new();
        for v in self.min_voters..=self.max_voters {
            let size = self.count_with(v);
            let lo = start.max(offset);
            let hi = end.min(offset + size);
            if lo < hi {
                blocks.push((v, lo - offset, hi - lo, offset));
            }
            offset += size;
        }
        blocks.into_iter().flat_map(move |(v, skip, take, base)| {
            let boxed: Box<dyn Iterator<Item = Vec<usize>> + '_> = if self.anonymous {
                Box::new(
                    (0..self.space.len())
                        .combinations_with_replacement(v)
                        .skip(skip as usize)
                        .take(take as usize),
                )
            } else {
                let t = self.space.len() as u64;
                Box::new((skip..skip + take).map(move |code| {
                    let mut digits = vec![0usize; v];
                    let mut c = code;
                    for d in digits.iter_mut().rev() {
                        *d = (c % t) as usize;
                        c /= t;
                    }
                    digits
                }))
            };
            boxed.enumerate().map(move |(i, picks)| {
                let profile = Profile::from_ballots(self.n, picks.iter().map(|&k| self.space[k]))
                    .expect("enumerated ballots are valid");
                (base + skip + i as u64, profile)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Profile> + '_ {
        self.range(0, self.len()).map(|(_, p)| p)
    }
}

/// One representative per anonymous class with 1 to `max_voters` voters.
pub fn enumerate_profiles(
    alternatives: usize,
    max_voters: usize,
    kind: BallotKind,
) -> Result<Enumeration> {
    Enumeration::new(alternatives, kind, 1, max_voters, true)
}

/// Every voter-labelled profile with 1 to `max_voters` voters numbered from 0.
pub fn enumerate_sequences(
    alternatives: usize,
    max_voters: usize,
    kind: BallotKind,
) -> Result<Enumeration> {
    Enumeration::new(alternatives, kind, 1, max_voters, false)
}

fn draw_profile(rng: &mut ChaCha8Rng, n: usize, space: &[Ballot], voters: usize) -> Profile {
    let ballots: Vec<Ballot> = (0..voters)
        .map(|_| space[rng.gen_range(0..space.len())])
        .collect();
    Profile::from_ballots(n, ballots).expect("drawn ballots are valid")
}

/// Profile of `voters` i.i.d. uniform ballots of the given kind.
pub fn random_profile(
    seed: u64,
    alternatives: usize,
    voters: usize,
    kind: BallotKind,
) -> Result<Profile> {
    if voters == 0 {
        return Err(Error::NoBallots);
    }
    let space = ballot_space(alternatives, kind)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(draw_profile(&mut rng, alternatives, &space, voters))
}

/// Profile number `index` of the random stream for `seed`: a uniform voter
/// count in `min_voters..=max_voters`, then i.i.d. uniform ballots.
pub fn random_stream_profile(
    seed: u64,
    index: u64,
    alternatives: usize,
    space: &[Ballot],
    min_voters: usize,
    max_voters: usize,
) -> Profile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let voters = rng.gen_range(min_voters..=max_voters);
    draw_profile(&mut rng, alternatives, space, voters)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "random" => Ok(SearchMode::Random),
            other => Err(Error::Domain(format!("unknown search mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub method: MethodId,
    /// The axiom to check, or `refines-minimax`.
    pub target: AxiomId,
    pub alternatives: usize,
    pub min_voters: usize,
    pub max_voters: usize,
    pub ballots: BallotKind,
    pub mode: SearchMode,
    pub seed: u64,
    /// At most this many profiles are examined. Required in random mode.
    pub budget: Option<u64>,
    /// Stop once this many witnesses are known.
    pub max_witnesses: Option<usize>,
    /// Kind of the ballots added by the positive involvement check.
    pub involvement_kind: BallotKind,
    /// Sub-range `[start, end)` of profile indices, set by [`partition`].
    pub range: Option<(u64, u64)>,
}

impl SearchSpec {
    pub fn exhaustive(
        method: MethodId,
        target: AxiomId,
        alternatives: usize,
        max_voters: usize,
    ) -> Self {
        SearchSpec {
            method,
            target,
            alternatives,
            min_voters: 1,
            max_voters,
            ballots: BallotKind::Linear,
            mode: SearchMode::Exhaustive,
            seed: 0,
            budget: None,
            max_witnesses: None,
            involvement_kind: BallotKind::Linear,
            range: None,
        }
    }

    pub fn random(
        method: MethodId,
        target: AxiomId,
        alternatives: usize,
        max_voters: usize,
        seed: u64,
        budget: u64,
    ) -> Self {
        SearchSpec {
            mode: SearchMode::Random,
            seed,
            budget: Some(budget),
            ..SearchSpec::exhaustive(method, target, alternatives, max_voters)
        }
    }

    pub fn with_ballots(mut self, kind: BallotKind) -> Self {
        self.ballots = kind;
        self
    }

    pub fn with_max_witnesses(mut self, cap: usize) -> Self {
        self.max_witnesses = Some(cap);
        self
    }

    pub fn with_involvement_kind(mut self, kind: BallotKind) -> Self {
        self.involvement_kind = kind;
        self
    }

    pub fn with_min_voters(mut self, min: usize) -> Self {
        self.min_voters = min;
        self
    }

    fn enumeration(&self, anonymous: bool) -> Result<Enumeration> {
        Enumeration::new(
            self.alternatives,
            self.ballots,
            self.min_voters,
            self.max_voters,
            anonymous,
        )
    }

    /// Number of profiles the full (unpartitioned) search covers.
    pub fn total(&self, method: &dyn VotingMethod) -> Result<u64> {
        Ok(match self.mode {
            SearchMode::Exhaustive => {
                let size = self.enumeration(method.domain().anonymous)?.len();
                self.budget.map_or(size, |b| b.min(size))
            }
            SearchMode::Random => self.budget.unwrap_or(DEFAULT_RANDOM_BUDGET),
        })
    }

    fn index_range(&self, method: &dyn VotingMethod) -> Result<(u64, u64)> {
        let total = self.total(method)?;
        Ok(match self.range {
            Some((s, e)) => (s.min(total), e.min(total)),
            None => (0, total),
        })
    }

    pub fn validate(&self, method: &dyn VotingMethod) -> Result<()> {
        let domain = method.domain();
        if !domain.admits(self.alternatives, self.ballots) {
            return Err(Error::Domain(format!(
                "{} is not defined on {} alternatives with {} ballots",
                method.name(),
                self.alternatives,
                self.ballots
            )));
        }
        if self.min_voters == 0 || self.min_voters > self.max_voters {
            return Err(Error::Domain(
                "voter bounds must satisfy 1 <= min <= max".into(),
            ));
        }
        if matches!(
            self.target,
            AxiomId::ImmunityToSpoilers | AxiomId::NearImmunityToSpoilers
        ) && self.alternatives < 3
        {
            return Err(Error::Domain(
                "spoiler checks need at least 3 alternatives".into(),
            ));
        }
        match self.mode {
            SearchMode::Exhaustive => {
                self.enumeration(domain.anonymous)?;
            }
            SearchMode::Random => {
                ballot_space(self.alternatives, self.ballots)?;
            }
        }
        Ok(())
    }
}

/// Outcome of a search. The elapsed time is reported but not serialized, so
/// that identical specs give byte-identical reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub spec: SearchSpec,
    pub profiles_examined: u64,
    pub witnesses: Vec<AxiomWitness>,
    /// Enumeration index of the profile behind each witness.
    pub witness_indices: Vec<u64>,
    pub exhausted: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn is_clean(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {}: {} profiles examined, {} witnesses, exhausted={}",
            self.spec.method,
            self.spec.target,
            self.profiles_examined,
            self.witnesses.len(),
            self.exhausted
        )
    }
}

/// Splits a spec into `workers` specs over disjoint contiguous index
/// ranges covering the original one.
pub fn partition(spec: &SearchSpec, workers: usize) -> Result<Vec<SearchSpec>> {
    partition_for(spec, &spec.method, workers)
}

fn partition_for(
    spec: &SearchSpec,
    method: &dyn VotingMethod,
    workers: usize,
) -> Result<Vec<SearchSpec>> {
    if workers == 0 {
        return Err(Error::Domain("at least one worker is needed".into()));
    }
    if workers == 1 {
        return Ok(vec![spec.clone()]);
    }
    let (start, end) = spec.index_range(method)?;
    let len = end - start;
    let w = workers as u64;
    Ok((0..w)
        .map(|i| {
            let lo = start + len * i / w;
            let hi = start + len * (i + 1) / w;
            SearchSpec {
                range: Some((lo, hi)),
                ..spec.clone()
            }
        })
        .collect())
}

/// Hits found by one worker, before merging.
struct Partial {
    start: u64,
    end: u64,
    hits: Vec<(u64, AxiomWitness)>,
    classes: BTreeMap<OrdinalMarginGraph, Class>,
}

/// Profiles sharing one ordinal margin graph: the first profile seen and
/// the first profile seen with each winner set.
#[derive(Clone)]
struct Class {
    first: (u64, Profile, WinnerSet),
    by_winners: BTreeMap<WinnerSet, (u64, Profile)>,
}

impl Class {
    fn merge(&mut self, other: Class) {
        if other.first.0 < self.first.0 {
            self.first = other.first;
        }
        for (w, (i, p)) in other.by_winners {
            match self.by_winners.get(&w) {
                Some((j, _)) if *j <= i => {}
                _ => {
                    self.by_winners.insert(w, (i, p));
                }
            }
        }
    }
}

fn profiles_for<'a>(
    spec: &'a SearchSpec,
    enumeration: Option<&'a Enumeration>,
    start: u64,
    end: u64,
) -> Result<Box<dyn Iterator<Item = (u64, Profile)> + 'a>> {
    Ok(match spec.mode {
        SearchMode::Exhaustive => Box::new(
            enumeration
                .expect("exhaustive enumeration")
                .range(start, end),
        ),
        SearchMode::Random => {
            let space = ballot_space(spec.alternatives, spec.ballots)?;
            Box::new((start..end).map(move |i| {
                (
                    i,
                    random_stream_profile(
                        spec.seed,
                        i,
                        spec.alternatives,
                        &space,
                        spec.min_voters,
                        spec.max_voters,
                    ),
                )
            }))
        }
    })
}

fn run_partial(method: &dyn VotingMethod, spec: &SearchSpec) -> Result<Partial> {
    let (start, end) = spec.index_range(method)?;
    let enumeration = match spec.mode {
        SearchMode::Exhaustive => Some(spec.enumeration(method.domain().anonymous)?),
        SearchMode::Random => None,
    };
    let options = CheckOptions {
        involvement_kind: spec.involvement_kind,
        seed: spec.seed,
        ..CheckOptions::default()
    };
    let mut partial = Partial {
        start,
        end,
        hits: Vec::new(),
        classes: BTreeMap::new(),
    };
    let ordinal = spec.target == AxiomId::OrdinalMarginInvariance;
    for (index, profile) in profiles_for(spec, enumeration.as_ref(), start, end)? {
        if ordinal {
            let key = MarginGraph::from_profile(&profile).ordinal();
            let winners = method.winners(&profile)?;
            let class = partial.classes.entry(key).or_insert_with(|| Class {
                first: (index, profile.clone(), winners),
                by_winners: BTreeMap::new(),
            });
            class.by_winners.entry(winners).or_insert((index, profile));
            continue;
        }
        let verdict = check_axiom(method, &profile, spec.target, &options)?;
        if let Some(w) = verdict.witness() {
            partial.hits.push((index, w));
            if spec
                .max_witnesses
                .is_some_and(|cap| partial.hits.len() >= cap)
            {
                break;
            }
        }
    }
    Ok(partial)
}

fn ordinal_witnesses(
    method: &dyn VotingMethod,
    classes: BTreeMap<OrdinalMarginGraph, Class>,
) -> Vec<(u64, AxiomWitness)> {
    let mut hits = Vec::new();
    for class in classes.into_values() {
        let (_, base, before) = &class.first;
        for (w, (i, other)) in &class.by_winners {
            if w == before {
                continue;
            }
            hits.push((
                *i,
                AxiomWitness {
                    axiom: AxiomId::OrdinalMarginInvariance,
                    method: method.name(),
                    base_profile: base.clone(),
                    transform: None,
                    other_profile: Some(other.clone()),
                    winners_before: *before,
                    winners_after: *w,
                    alternative: None,
                    opponent: None,
                    note: "same ordinal margin graph, different winners".into(),
                },
            ));
        }
    }
    hits
}

fn merge(
    method: &dyn VotingMethod,
    spec: &SearchSpec,
    parts: Vec<Partial>,
    elapsed: Duration,
) -> SearchReport {
    let start = parts.iter().map(|p| p.start).min().unwrap_or(0);
    let end = parts.iter().map(|p| p.end).max().unwrap_or(0);
    let mut hits = Vec::new();
    let mut classes: BTreeMap<OrdinalMarginGraph, Class> = BTreeMap::new();
    for part in parts {
        hits.extend(part.hits);
        for (key, class) in part.classes {
            match classes.get_mut(&key) {
                Some(existing) => existing.merge(class),
                None => {
                    classes.insert(key, class);
                }
            }
        }
    }
    hits.extend(ordinal_witnesses(method, classes));
    hits.sort_by(|(i, x), (j, y)| i.cmp(j).then_with(|| x.sort_key().cmp(&y.sort_key())));
    let mut examined = end - start;
    let mut capped = false;
    if let Some(cap) = spec.max_witnesses {
        if hits.len() >= cap {
            hits.truncate(cap);
            // Ordinal classes are only complete once every profile is seen.
            if spec.target != AxiomId::OrdinalMarginInvariance {
                let last = hits.last().map_or(start, |(i, _)| *i);
                examined = last + 1 - start;
                capped = examined < end - start;
            }
        }
    }
    let full = spec.range.is_none()
        && spec.budget.is_none_or(|b| {
            spec.enumeration(method.domain().anonymous)
                .is_ok_and(|e| b >= e.len())
        });
    SearchReport {
        spec: spec.clone(),
        profiles_examined: examined,
        witness_indices: hits.iter().map(|(i, _)| *i).collect(),
        witnesses: hits.into_iter().map(|(_, w)| w).collect(),
        exhausted: spec.mode == SearchMode::Exhaustive && full && !capped,
        elapsed,
    }
}

/// Runs the spec's target check over its profiles with an arbitrary method.
/// `workers` threads split the index range.
pub fn search_with(
    method: &dyn VotingMethod,
    spec: &SearchSpec,
    workers: usize,
) -> Result<SearchReport> {
    spec.validate(method)?;
    let started = Instant::now();
    let specs = partition_for(spec, method, workers)?;
    let parts: Vec<Partial> = if specs.len() == 1 {
        vec![run_partial(method, &specs[0])?]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = specs
                .iter()
                .map(|s| scope.spawn(move || run_partial(method, s)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect::<Result<Vec<_>>>()
        })?
    };
    Ok(merge(method, spec, parts, started.elapsed()))
}

/// Serial search with the spec's registry method.
pub fn find_violation(spec: &SearchSpec) -> Result<SearchReport> {
    search_with(&spec.method, spec, 1)
}

pub fn find_violation_parallel(spec: &SearchSpec, workers: usize) -> Result<SearchReport> {
    search_with(&spec.method, spec, workers)
}

/// Every enumerated profile with `alternatives` alternatives and at most
/// `max_voters` voters on which the method picks a non-Minimax winner.
pub fn verify_refines_minimax(
    method: MethodId,
    alternatives: usize,
    max_voters: usize,
    kind: BallotKind,
) -> Result<SearchReport> {
    let spec = SearchSpec::exhaustive(method, AxiomId::RefinesMinimax, alternatives, max_voters)
        .with_ballots(kind);
    find_violation(&spec)
}

/// Checks near or full immunity on every profile of a search space and
/// returns the first witness, if any. Used by acceptance checks that need
/// to filter the space, e.g. to profiles without zero margins.
pub fn first_immunity_witness<'a>(
    method: &dyn VotingMethod,
    profiles: impl IntoIterator<Item = &'a Profile>,
    near: bool,
) -> Result<Option<AxiomWitness>> {
    for p in profiles {
        if let Some(w) = check_immunity(method, p, near)?.witness() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
