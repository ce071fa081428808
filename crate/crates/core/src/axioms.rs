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

//! Per-profile axiom checkers.
//!
//! Each checker evaluates one method on one profile and the profiles derived
//! from it, and either passes or returns an [`AxiomWitness`] recording the
//! profiles and winner sets that break the axiom's implication. Witnesses
//! replay through [`confirm_witness`]. Vacuous preconditions pass.

use crate::error::{Error, Result};
use crate::margin::MarginGraph;
use crate::methods::{minimax, VotingMethod, WinnerSet};
use crate::profile::{ballot_space, BallotKind, Profile, Voter};
use crate::transform::{
    add_block, add_voter, improve_with_records, move_last_to_first, permute_alternatives,
    permute_voters, remove_alternative, restrict_with_map, scale, ImproveStep, TransformRecord,
};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomId {
    Anonymity,
    Neutrality,
    WeakPositiveResponsiveness,
    PositiveResponsivenessFull,
    PositiveInvolvement,
    ImmunityToSpoilers,
    NearImmunityToSpoilers,
    Homogeneity,
    BlockPreservation,
    CondorcetConsistency,
    CondorcetLoserCriterion,
    SmithCriterion,
    ResolvabilityUw,
    OrdinalMarginInvariance,
    /// Not an axiom: `F(P)` must be a subset of the Minimax winners.
    RefinesMinimax,
}

impl AxiomId {
    pub const ALL: [AxiomId; 15] = [
        AxiomId::Anonymity,
        AxiomId::Neutrality,
        AxiomId::WeakPositiveResponsiveness,
        AxiomId::PositiveResponsivenessFull,
        AxiomId::PositiveInvolvement,
        AxiomId::ImmunityToSpoilers,
        AxiomId::NearImmunityToSpoilers,
        AxiomId::Homogeneity,
        AxiomId::BlockPreservation,
        AxiomId::CondorcetConsistency,
        AxiomId::CondorcetLoserCriterion,
        AxiomId::SmithCriterion,
        AxiomId::ResolvabilityUw,
        AxiomId::OrdinalMarginInvariance,
        AxiomId::RefinesMinimax,
    ];

    /// The axioms that together force a refinement of Minimax on two or
    /// three alternatives.
    pub const CHARACTERIZING: [AxiomId; 7] = [
        AxiomId::Anonymity,
        AxiomId::Neutrality,
        AxiomId::WeakPositiveResponsiveness,
        AxiomId::PositiveInvolvement,
        AxiomId::NearImmunityToSpoilers,
        AxiomId::Homogeneity,
        AxiomId::BlockPreservation,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AxiomId::Anonymity => "anonymity",
            AxiomId::Neutrality => "neutrality",
            AxiomId::WeakPositiveResponsiveness => "weak-positive-responsiveness",
            AxiomId::PositiveResponsivenessFull => "positive-responsiveness-full",
            AxiomId::PositiveInvolvement => "positive-involvement",
            AxiomId::ImmunityToSpoilers => "immunity-to-spoilers",
            AxiomId::NearImmunityToSpoilers => "near-immunity-to-spoilers",
            AxiomId::Homogeneity => "homogeneity",
            AxiomId::BlockPreservation => "block-preservation",
            AxiomId::CondorcetConsistency => "condorcet-consistency",
            AxiomId::CondorcetLoserCriterion => "condorcet-loser-criterion",
            AxiomId::SmithCriterion => "smith-criterion",
            AxiomId::ResolvabilityUw => "resolvability-uw",
            AxiomId::OrdinalMarginInvariance => "ordinal-margin-invariance",
            AxiomId::RefinesMinimax => "refines-minimax",
        }
    }

    /// Whether the axiom is decided by the profile alone, without derived
    /// profiles.
    pub fn is_criterion(&self) -> bool {
        matches!(
            self,
            AxiomId::CondorcetConsistency
                | AxiomId::CondorcetLoserCriterion
                | AxiomId::SmithCriterion
                | AxiomId::ResolvabilityUw
                | AxiomId::RefinesMinimax
        )
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown axiom {s:?}")))
    }
}

/// A certified violation: replaying `transform` on `base_profile` (or
/// comparing with `other_profile`) and re-evaluating `method` reproduces
/// both winner sets, which contradict the axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomWitness {
    pub axiom: AxiomId,
    pub method: String,
    pub base_profile: Profile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_profile: Option<Profile>,
    /// The method's winners on the base profile.
    pub winners_before: WinnerSet,
    /// The winners on the derived or compared profile, in the base
    /// profile's alternative indices; for criteria, the set the winners
    /// had to lie in or equal.
    pub winners_after: WinnerSet,
    /// The alternative the axiom protects, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative: Option<usize>,
    /// For spoiler axioms, the removed alternative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opponent: Option<usize>,
    pub note: String,
}

impl AxiomWitness {
    /// Multi-line human-readable account of the violation.
    pub fn describe(&self) -> String {
        let labels = self.base_profile.labels();
        let mut out = format!(
            "{} violates {}\n  profile: {}\n  winners: {}\n",
            self.method,
            self.axiom,
            self.base_profile.describe(),
            self.winners_before.describe(&labels)
        );
        if let Some(t) = &self.transform {
            out += &format!("  transform: {}\n", t.describe(&labels));
        }
        if let Some(p) = &self.other_profile {
            out += &format!("  compared with: {}\n", p.describe());
        }
        out += &format!(
            "  after: {}\n  {}\n",
            self.winners_after.describe(&labels),
            self.note
        );
        out
    }

    /// Deterministic sort key used when merging witnesses from several
    /// workers.
    pub fn sort_key(&self) -> String {
        serde_json::to_string(self).expect("witnesses serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Box<AxiomWitness>),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(self) -> Option<AxiomWitness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(*w),
        }
    }
}

impl From<AxiomWitness> for Verdict {
    fn from(w: AxiomWitness) -> Self {
        Verdict::Fail(Box::new(w))
    }
}

/// Knobs shared by the checkers that sample or enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Kind of the ballots added by the positive involvement check.
    pub involvement_kind: BallotKind,
    /// Voter permutations tried by the anonymity check when not all of
    /// them can be.
    pub anonymity_samples: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            involvement_kind: BallotKind::Linear,
            anonymity_samples: 24,
            seed: 0,
        }
    }
}

struct WitnessBuilder<'a> {
    axiom: AxiomId,
    method: &'a dyn VotingMethod,
    profile: &'a Profile,
}

impl WitnessBuilder<'_> {
    fn build(
        &self,
        transform: Option<TransformRecord>,
        before: WinnerSet,
        after: WinnerSet,
        alternative: Option<usize>,
        note: String,
    ) -> AxiomWitness {
        AxiomWitness {
            axiom: self.axiom,
            method: self.method.name(),
            base_profile: self.profile.clone(),
            transform,
            other_profile: None,
            winners_before: before,
            winners_after: after,
            alternative,
            opponent: None,
            note,
        }
    }
}

fn admits(method: &dyn VotingMethod, profile: &Profile) -> bool {
    method
        .domain()
        .admits(profile.num_alternatives(), profile.kind())
}

fn fmt_set(set: WinnerSet, profile: &Profile) -> String {
    set.describe(&profile.labels())
}

/// Weak positive responsiveness: a winner lifted from uniquely last to
/// uniquely first on one ballot becomes the unique winner.
pub fn check_wpr(method: &dyn VotingMethod, profile: &Profile) -> Result<Verdict> {
    let n = profile.num_alternatives();
    let before = method.winners(profile)?;
    let wb = WitnessBuilder {
        axiom: AxiomId::WeakPositiveResponsiveness,
        method,
        profile,
    };
    for a in before.iter() {
        for &(voter, ballot) in profile.ballots() {
            if !ballot.ranks_uniquely_last(n, a) {
                continue;
            }
            let lifted = move_last_to_first(profile, voter, a)?;
            if !admits(method, &lifted) {
                continue;
            }
            let after = method.winners(&lifted)?;
            if !after.is_singleton_of(a) {
                let note = format!(
                    "{} should be the unique winner after the move, got {}",
                    profile.label(a),
                    fmt_set(after, profile)
                );
                return Ok(wb
                    .build(
                        Some(TransformRecord::MoveLastToFirst {
                            voter,
                            alternative: a,
                        }),
                        before,
                        after,
                        Some(a),
                        note,
                    )
                    .into());
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Full positive responsiveness: any single-step improvement of a winner
/// on one ballot makes it the unique winner. Improved profiles outside the
/// method's domain are skipped.
pub fn check_positive_responsiveness_full(
    method: &dyn VotingMethod,
    profile: &Profile,
) -> Result<Verdict> {
    let before = method.winners(profile)?;
    let wb = WitnessBuilder {
        axiom: AxiomId::PositiveResponsivenessFull,
        method,
        profile,
    };
    for a in before.iter() {
        for voter in profile.voters() {
            for (record, improved) in improve_with_records(profile, voter, a)? {
                if !admits(method, &improved) {
                    continue;
                }
                let after = method.winners(&improved)?;
                if !after.is_singleton_of(a) {
                    let note = format!(
                        "{} should be the unique winner after the improvement, got {}",
                        profile.label(a),
                        fmt_set(after, profile)
                    );
                    return Ok(wb.build(Some(record), before, after, Some(a), note).into());
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Positive involvement: adding a voter (with a ballot of `kind`) who ranks
/// a winner uniquely first keeps it a winner.
pub fn check_positive_involvement(
    method: &dyn VotingMethod,
    profile: &Profile,
    kind: BallotKind,
) -> Result<Verdict> {
    let n = profile.num_alternatives();
    let before = method.winners(profile)?;
    let wb = WitnessBuilder {
        axiom: AxiomId::PositiveInvolvement,
        method,
        profile,
    };
    let space = ballot_space(n, kind)?;
    for a in before.iter() {
        for &ballot in space.iter().filter(|b| b.ranks_uniquely_first(n, a)) {
            let extended = add_voter(profile, ballot)?;
            if !admits(method, &extended) {
                continue;
            }
            let after = method.winners(&extended)?;
            if !after.contains(a) {
                let note = format!(
                    "{} lost after a voter ranking it uniquely first joined",
                    profile.label(a)
                );
                return Ok(wb
                    .build(
                        Some(TransformRecord::AddVoter { ballot }),
                        before,
                        after,
                        Some(a),
                        note,
                    )
                    .into());
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Winners of the profile without `b`, in the original indices.
fn winners_without(method: &dyn VotingMethod, profile: &Profile, b: usize) -> Result<WinnerSet> {
    let reduced = remove_alternative(profile, b)?;
    let w = method.winners(&reduced)?;
    Ok(w.map(|i| if i >= b { i + 1 } else { i }))
}

/// Winners of the two-alternative restriction to `{a, b}`, in the original
/// indices.
fn head_to_head(
    method: &dyn VotingMethod,
    profile: &Profile,
    a: usize,
    b: usize,
) -> Result<WinnerSet> {
    let (pair, map) = restrict_with_map(profile, &[a, b])?;
    Ok(method.winners(&pair)?.map(|i| map[i]))
}

/// Immunity to spoilers over every ordered pair `(a, b)`: if `a` wins
/// without `b` (uniquely, for the near variant), `a` beats `b` head to
/// head, and `b` loses, then `a` wins. Needs at least three alternatives.
pub fn check_immunity(method: &dyn VotingMethod, profile: &Profile, near: bool) -> Result<Verdict> {
    let n = profile.num_alternatives();
    if n < 3 {
        return Err(Error::Domain(format!(
            "spoiler checks need at least 3 alternatives, got {n}"
        )));
    }
    let axiom = if near {
        AxiomId::NearImmunityToSpoilers
    } else {
        AxiomId::ImmunityToSpoilers
    };
    let before = method.winners(profile)?;
    let without: Vec<WinnerSet> = (0..n)
        .map(|b| winners_without(method, profile, b))
        .collect::<Result<_>>()?;
    for a in 0..n {
        if before.contains(a) {
            continue;
        }
        for b in (0..n).filter(|&b| b != a && !before.contains(b)) {
            let reduced = without[b];
            let wins_reduced = if near {
                reduced.is_singleton_of(a)
            } else {
                reduced.contains(a)
            };
            if !wins_reduced || !head_to_head(method, profile, a, b)?.is_singleton_of(a) {
                continue;
            }
            let note = format!(
                "{a_} wins without {b_} and beats {b_} head to head, {b_} loses, yet {a_} loses",
                a_ = profile.label(a),
                b_ = profile.label(b)
            );
            return Ok(AxiomWitness {
                axiom,
                method: method.name(),
                base_profile: profile.clone(),
                transform: Some(TransformRecord::RemoveAlt { alternative: b }),
                other_profile: None,
                winners_before: before,
                winners_after: reduced,
                alternative: Some(a),
                opponent: Some(b),
                note,
            }
            .into());
        }
    }
    Ok(Verdict::Pass)
}

fn check_inclusion(
    method: &dyn VotingMethod,
    profile: &Profile,
    axiom: AxiomId,
    record: TransformRecord,
    derived: &Profile,
) -> Result<Verdict> {
    let before = method.winners(profile)?;
    if !admits(method, derived) {
        return Ok(Verdict::Pass);
    }
    let after = method.winners(derived)?;
    if before.is_subset(&after) {
        return Ok(Verdict::Pass);
    }
    let lost = WinnerSet::from_indices(before.iter().filter(|&a| !after.contains(a)));
    let note = format!("{} lost", fmt_set(lost, profile));
    let first_lost = lost.iter().next();
    Ok(AxiomWitness {
        axiom,
        method: method.name(),
        base_profile: profile.clone(),
        transform: Some(record),
        other_profile: None,
        winners_before: before,
        winners_after: after,
        alternative: first_lost,
        opponent: None,
        note,
    }
    .into())
}

/// Homogeneity: winners of `P` remain winners of `2P`.
pub fn check_homogeneity(method: &dyn VotingMethod, profile: &Profile) -> Result<Verdict> {
    let doubled = scale(profile, 2)?;
    check_inclusion(
        method,
        profile,
        AxiomId::Homogeneity,
        TransformRecord::Scale { factor: 2 },
        &doubled,
    )
}

/// Block preservation: winners survive adding one voter per linear order.
pub fn check_block_preservation(method: &dyn VotingMethod, profile: &Profile) -> Result<Verdict> {
    let extended = add_block(profile)?;
    check_inclusion(
        method,
        profile,
        AxiomId::BlockPreservation,
        TransformRecord::AddBlock,
        &extended,
    )
}

/// Voter renaming that turns the profile into its canonical form.
pub fn canonical_renaming(profile: &Profile) -> Vec<(Voter, Voter)> {
    profile
        .ballots()
        .iter()
        .enumerate()
        .sorted_by(|(i, x), (j, y)| x.1.cmp(&y.1).then(i.cmp(j)))
        .enumerate()
        .map(|(k, (_, &(voter, _)))| (voter, Voter(k as u32)))
        .collect()
}

/// Anonymity: the winners are unchanged by renaming voters. Tries the
/// canonical renaming, then every permutation of the voter ids when there
/// are at most `options.anonymity_samples` of them, otherwise that many
/// seeded random ones.
pub fn check_anonymity(
    method: &dyn VotingMethod,
    profile: &Profile,
    options: &CheckOptions,
) -> Result<Verdict> {
    let before = method.winners(profile)?;
    let ids: Vec<Voter> = profile.voters().collect();
    let mut renamings = vec![canonical_renaming(profile)];
    let count = ids.len();
    let total: Option<usize> = (1..=count).try_fold(1usize, |acc, k| acc.checked_mul(k));
    if total.is_some_and(|t| t <= options.anonymity_samples.max(1)) {
        for perm in (0..count).permutations(count) {
            renamings.push(ids.iter().zip(&perm).map(|(&v, &p)| (v, ids[p])).collect());
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for _ in 0..options.anonymity_samples {
            let mut perm = ids.clone();
            perm.shuffle(&mut rng);
            renamings.push(ids.iter().copied().zip(perm).collect());
        }
    }
    for mapping in renamings {
        let renamed = permute_voters(profile, &mapping)?;
        let after = method.winners(&renamed)?;
        if after != before {
            return Ok(AxiomWitness {
                axiom: AxiomId::Anonymity,
                method: method.name(),
                base_profile: profile.clone(),
                transform: Some(TransformRecord::PermuteVoters { mapping }),
                other_profile: None,
                winners_before: before,
                winners_after: after,
                alternative: None,
                opponent: None,
                note: "renaming voters changed the winners".into(),
            }
            .into());
        }
    }
    Ok(Verdict::Pass)
}

/// Largest alternative count for which neutrality is checked exhaustively.
pub const NEUTRALITY_MAX_ALTERNATIVES: usize = 6;

/// Neutrality: renaming alternatives by `tau` renames the winners by `tau`.
/// Every permutation is tried.
pub fn check_neutrality(method: &dyn VotingMethod, profile: &Profile) -> Result<Verdict> {
    let n = profile.num_alternatives();
    if n > NEUTRALITY_MAX_ALTERNATIVES {
        return Err(Error::Unsupported(format!(
            "neutrality is checked for at most {NEUTRALITY_MAX_ALTERNATIVES} alternatives"
        )));
    }
    let before = method.winners(profile)?;
    for tau in (0..n).permutations(n).skip(1) {
        let renamed = permute_alternatives(profile, &tau)?;
        let after = method.winners(&renamed)?;
        let expected = before.map(|a| tau[a]);
        if after != expected {
            // Report the renamed winners in base indices.
            let mut inverse = vec![0; n];
            for (a, &t) in tau.iter().enumerate() {
                inverse[t] = a;
            }
            return Ok(AxiomWitness {
                axiom: AxiomId::Neutrality,
                method: method.name(),
                base_profile: profile.clone(),
                transform: Some(TransformRecord::PermuteAlts { tau }),
                other_profile: None,
                winners_before: before,
                winners_after: after.map(|a| inverse[a]),
                alternative: None,
                opponent: None,
                note: "renaming alternatives did not rename the winners accordingly".into(),
            }
            .into());
        }
    }
    Ok(Verdict::Pass)
}

/// Reference set a criterion compares the winners against, if the
/// criterion applies to the profile, and whether the winners violate it.
fn criterion_target(
    criterion: AxiomId,
    profile: &Profile,
    winners: WinnerSet,
) -> Result<Option<(WinnerSet, bool, String)>> {
    let graph = MarginGraph::from_profile(profile);
    let label = |a: usize| profile.label(a);
    Ok(match criterion {
        AxiomId::CondorcetConsistency => graph.condorcet_winner().map(|w| {
            let target = WinnerSet::singleton(w);
            (
                target,
                winners != target,
                format!("{} is the Condorcet winner", label(w)),
            )
        }),
        AxiomId::CondorcetLoserCriterion => graph.condorcet_loser().map(|l| {
            let target = WinnerSet::singleton(l);
            (
                target,
                winners.contains(l),
                format!("{} is the Condorcet loser", label(l)),
            )
        }),
        AxiomId::SmithCriterion => {
            let smith = WinnerSet::from_indices(graph.smith_set());
            Some((
                smith,
                !winners.is_subset(&smith),
                "winners must lie in the Smith set".into(),
            ))
        }
        AxiomId::ResolvabilityUw => graph.is_uniquely_weighted().then(|| {
            (
                winners,
                winners.len() != 1,
                "the profile is uniquely weighted, so the winner must be unique".into(),
            )
        }),
        AxiomId::RefinesMinimax => {
            let mm = minimax(profile);
            Some((
                mm,
                !winners.is_subset(&mm),
                "winners must be Minimax winners".into(),
            ))
        }
        other => {
            return Err(Error::Domain(format!(
                "{other} is not a single-profile criterion"
            )));
        }
    })
}

/// Single-profile criteria: Condorcet consistency, the Condorcet loser
/// criterion, the Smith criterion, resolvability on uniquely-weighted
/// profiles and refinement of Minimax.
pub fn check_criterion(
    method: &dyn VotingMethod,
    profile: &Profile,
    criterion: AxiomId,
) -> Result<Verdict> {
    let winners = method.winners(profile)?;
    match criterion_target(criterion, profile, winners)? {
        Some((target, true, note)) => Ok(AxiomWitness {
            axiom: criterion,
            method: method.name(),
            base_profile: profile.clone(),
            transform: None,
            other_profile: None,
            winners_before: winners,
            winners_after: target,
            alternative: None,
            opponent: None,
            note,
        }
        .into()),
        _ => Ok(Verdict::Pass),
    }
}

/// Profiles with the same ordinal margin graph get the same winners.
/// Passes vacuously when the ordinal graphs or alternative lists differ.
pub fn check_ordinal_margin_invariance(
    method: &dyn VotingMethod,
    first: &Profile,
    second: &Profile,
) -> Result<Verdict> {
    if first.labels() != second.labels() {
        return Ok(Verdict::Pass);
    }
    if MarginGraph::from_profile(first).ordinal() != MarginGraph::from_profile(second).ordinal() {
        return Ok(Verdict::Pass);
    }
    let before = method.winners(first)?;
    let after = method.winners(second)?;
    if before == after {
        return Ok(Verdict::Pass);
    }
    Ok(AxiomWitness {
        axiom: AxiomId::OrdinalMarginInvariance,
        method: method.name(),
        base_profile: first.clone(),
        transform: None,
        other_profile: Some(second.clone()),
        winners_before: before,
        winners_after: after,
        alternative: None,
        opponent: None,
        note: "same ordinal margin graph, different winners".into(),
    }
    .into())
}

/// Runs the checker for `axiom` on one profile. Ordinal margin invariance
/// compares the profile with its double and with the profile plus a block,
/// which share its ordinal margin graph.
pub fn check_axiom(
    method: &dyn VotingMethod,
    profile: &Profile,
    axiom: AxiomId,
    options: &CheckOptions,
) -> Result<Verdict> {
    match axiom {
        AxiomId::Anonymity => check_anonymity(method, profile, options),
        AxiomId::Neutrality => check_neutrality(method, profile),
        AxiomId::WeakPositiveResponsiveness => check_wpr(method, profile),
        AxiomId::PositiveResponsivenessFull => check_positive_responsiveness_full(method, profile),
        AxiomId::PositiveInvolvement => {
            check_positive_involvement(method, profile, options.involvement_kind)
        }
        AxiomId::ImmunityToSpoilers => check_immunity(method, profile, false),
        AxiomId::NearImmunityToSpoilers => check_immunity(method, profile, true),
        AxiomId::Homogeneity => check_homogeneity(method, profile),
        AxiomId::BlockPreservation => check_block_preservation(method, profile),
        AxiomId::OrdinalMarginInvariance => {
            for other in [scale(profile, 2)?, add_block(profile)?] {
                if !admits(method, &other) {
                    continue;
                }
                let verdict = check_ordinal_margin_invariance(method, profile, &other)?;
                if !verdict.is_pass() {
                    return Ok(verdict);
                }
            }
            Ok(Verdict::Pass)
        }
        criterion => check_criterion(method, profile, criterion),
    }
}

/// Re-derives a witness from scratch: the recorded winner sets must be
/// reproduced and must contradict the axiom.
pub fn confirm_witness(method: &dyn VotingMethod, w: &AxiomWitness) -> Result<bool> {
    let p = &w.base_profile;
    let n = p.num_alternatives();
    let before = method.winners(p)?;
    if before != w.winners_before {
        return Ok(false);
    }
    let derived = |w: &AxiomWitness| -> Result<Profile> {
        w.transform
            .as_ref()
            .ok_or_else(|| Error::Domain("witness lacks a transform".into()))?
            .apply(p)
    };
    let a = w.alternative;
    Ok(match w.axiom {
        AxiomId::WeakPositiveResponsiveness | AxiomId::PositiveResponsivenessFull => {
            let expected_kind = match (&w.transform, w.axiom) {
                (
                    Some(TransformRecord::MoveLastToFirst { alternative, .. }),
                    AxiomId::WeakPositiveResponsiveness,
                ) => Some(*alternative),
                (
                    Some(TransformRecord::Improve { alternative, .. }),
                    AxiomId::PositiveResponsivenessFull,
                ) => Some(*alternative),
                _ => None,
            };
            let after = method.winners(&derived(w)?)?;
            expected_kind.is_some()
                && expected_kind == a
                && before.contains(a.unwrap())
                && after == w.winners_after
                && !after.is_singleton_of(a.unwrap())
        }
        AxiomId::PositiveInvolvement => match (&w.transform, a) {
            (Some(TransformRecord::AddVoter { ballot }), Some(a)) => {
                let after = method.winners(&derived(w)?)?;
                ballot.ranks_uniquely_first(n, a)
                    && before.contains(a)
                    && after == w.winners_after
                    && !after.contains(a)
            }
            _ => false,
        },
        AxiomId::ImmunityToSpoilers | AxiomId::NearImmunityToSpoilers => {
            match (&w.transform, a, w.opponent) {
                (Some(TransformRecord::RemoveAlt { alternative }), Some(a), Some(b))
                    if *alternative == b && a != b =>
                {
                    let reduced = winners_without(method, p, b)?;
                    let near = w.axiom == AxiomId::NearImmunityToSpoilers;
                    let wins_reduced = if near {
                        reduced.is_singleton_of(a)
                    } else {
                        reduced.contains(a)
                    };
                    reduced == w.winners_after
                        && wins_reduced
                        && head_to_head(method, p, a, b)?.is_singleton_of(a)
                        && !before.contains(b)
                        && !before.contains(a)
                }
                _ => false,
            }
        }
        AxiomId::Homogeneity | AxiomId::BlockPreservation => {
            let expected = match w.axiom {
                AxiomId::Homogeneity => TransformRecord::Scale { factor: 2 },
                _ => TransformRecord::AddBlock,
            };
            let after = method.winners(&derived(w)?)?;
            w.transform.as_ref() == Some(&expected)
                && after == w.winners_after
                && !before.is_subset(&after)
        }
        AxiomId::Anonymity => {
            let after = method.winners(&derived(w)?)?;
            matches!(w.transform, Some(TransformRecord::PermuteVoters { .. }))
                && after == w.winners_after
                && after != before
        }
        AxiomId::Neutrality => match &w.transform {
            Some(TransformRecord::PermuteAlts { tau }) => {
                let after = method.winners(&derived(w)?)?;
                let mut inverse = vec![0; n];
                for (x, &t) in tau.iter().enumerate() {
                    inverse[t] = x;
                }
                after.map(|x| inverse[x]) == w.winners_after && after != before.map(|x| tau[x])
            }
            _ => false,
        },
        AxiomId::OrdinalMarginInvariance => match &w.other_profile {
            Some(q) => {
                let after = method.winners(q)?;
                p.labels() == q.labels()
                    && MarginGraph::from_profile(p).ordinal()
                        == MarginGraph::from_profile(q).ordinal()
                    && after == w.winners_after
                    && after != before
            }
            None => false,
        },
        criterion => matches!(
            criterion_target(criterion, p, before)?,
            Some((target, true, _)) if target == w.winners_after
        ),
    })
}

/// Outcome of running a method through the eight-voter construction showing
/// that anonymity, neutrality, full positive responsiveness and immunity to
/// spoilers cannot all hold on three alternatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TradeoffReport {
    pub method: String,
    /// Six voters, one per linear order, plus `cba` and `bca`.
    pub profile: Profile,
    /// The `bac` voter with `a` and `c` tied instead.
    pub intermediate: Profile,
    /// The `bac` voter switched to `bca`.
    pub switched: Profile,
    pub winners: WinnerSet,
    pub winners_intermediate: WinnerSet,
    pub winners_switched: WinnerSet,
    /// What positive responsiveness forces on the switched profile when `c`
    /// wins the original one.
    pub forced_by_responsiveness: Option<WinnerSet>,
    /// The alternative immunity to spoilers keeps among the winners of the
    /// switched profile.
    pub required_by_immunity: usize,
    pub witnesses: Vec<AxiomWitness>,
}

impl TradeoffReport {
    pub fn violated(&self) -> Vec<AxiomId> {
        self.witnesses
            .iter()
            .map(|w| w.axiom)
            .sorted()
            .dedup()
            .collect()
    }
}

/// The voter whose `bac` ballot is switched to `bca`, and the two
/// improvement steps of `c` that get there.
pub const TRADEOFF_STEPS: [(usize, ImproveStep); 2] =
    [(0, ImproveStep::Delete), (0, ImproveStep::Add)];

/// Profiles of the construction: the original, after deleting `(a, c)` from
/// the `bac` ballot, and after also adding `(c, a)`.
pub fn tradeoff_profiles() -> Result<(Profile, Voter, [Profile; 3])> {
    let p = Profile::from_rankings(
        3,
        &[
            (1, "abc"),
            (1, "acb"),
            (1, "bac"),
            (1, "bca"),
            (1, "cab"),
            (1, "cba"),
            (1, "cba"),
            (1, "bca"),
        ],
    )?;
    let bac = crate::profile::Ballot::from_order(&[1, 0, 2])?;
    let voter = p
        .ballots()
        .iter()
        .find(|(_, b)| *b == bac)
        .map(|&(v, _)| v)
        .expect("the block contains bac");
    let first = TransformRecord::Improve {
        voter,
        alternative: 2,
        opponent: TRADEOFF_STEPS[0].0,
        step: TRADEOFF_STEPS[0].1,
    };
    let second = TransformRecord::Improve {
        voter,
        alternative: 2,
        opponent: TRADEOFF_STEPS[1].0,
        step: TRADEOFF_STEPS[1].1,
    };
    let mid = first.apply(&p)?;
    let end = second.apply(&mid)?;
    Ok((p.clone(), voter, [p, mid, end]))
}

/// Evaluates `method` on the construction and collects a witness for each
/// axiom it breaks there. For every method the list is nonempty.
pub fn eight_voter_tradeoff(method: &dyn VotingMethod) -> Result<TradeoffReport> {
    let (_, voter, [p, mid, end]) = tradeoff_profiles()?;
    let options = CheckOptions::default();
    let winners = method.winners(&p)?;
    let winners_mid = method.winners(&mid)?;
    let winners_end = method.winners(&end)?;
    let mut witnesses = Vec::new();
    for profile in [&p, &mid, &end] {
        for verdict in [
            check_anonymity(method, profile, &options)?,
            check_neutrality(method, profile)?,
        ] {
            witnesses.extend(verdict.witness());
        }
    }
    // Positive responsiveness along the two steps.
    let steps = [
        (&p, winners, &mid, winners_mid, 0),
        (&mid, winners_mid, &end, winners_end, 1),
    ];
    for (from, won, _to, after, i) in steps {
        if won.contains(2) && !after.is_singleton_of(2) {
            let record = TransformRecord::Improve {
                voter,
                alternative: 2,
                opponent: TRADEOFF_STEPS[i].0,
                step: TRADEOFF_STEPS[i].1,
            };
            witnesses.push(AxiomWitness {
                axiom: AxiomId::PositiveResponsivenessFull,
                method: method.name(),
                base_profile: from.clone(),
                transform: Some(record),
                other_profile: None,
                winners_before: won,
                winners_after: after,
                alternative: Some(2),
                opponent: None,
                note: format!(
                    "c should be the unique winner after the improvement, got {}",
                    fmt_set(after, from)
                ),
            });
        }
    }
    for profile in [&p, &mid, &end] {
        witnesses.extend(check_immunity(method, profile, false)?.witness());
    }
    let forced = (winners.contains(2)).then(|| WinnerSet::singleton(2));
    Ok(TradeoffReport {
        method: method.name(),
        profile: p,
        intermediate: mid,
        switched: end,
        winners,
        winners_intermediate: winners_mid,
        winners_switched: winners_end,
        forced_by_responsiveness: forced,
        required_by_immunity: 1,
        witnesses,
    })
}
