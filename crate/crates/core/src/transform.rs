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

//! The profile algebra: restriction, concatenation, scaling, blocks, added
//! voters, ballot lifts and permutations.
//!
//! Every operation returns a new profile. Operations that need fresh voter
//! ids take the smallest ids not already in use, in ascending order, so that
//! `scale(p, n)` is reproducible exactly.

use crate::error::{Error, Result};
use crate::profile::{Alternative, Ballot, Profile, Voter};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Restriction to the alternatives in `keep`, together with the map from new
/// indices to old ones. Restricted alternatives keep their old labels.
pub fn restrict_with_map(profile: &Profile, keep: &[usize]) -> Result<(Profile, Vec<usize>)> {
    let n = profile.num_alternatives();
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::Domain("cannot restrict to an empty set".into()));
    }
    if let Some(&bad) = keep.iter().find(|&&a| a >= n) {
        return Err(Error::UnknownAlternative(bad.to_string()));
    }
    if keep.len() == n {
        return Err(Error::Domain(
            "restriction must drop at least one alternative".into(),
        ));
    }
    let alternatives = keep
        .iter()
        .enumerate()
        .map(|(i, &a)| Alternative::labelled(i, profile.label(a)))
        .collect();
    let ballots = profile
        .ballots()
        .iter()
        .map(|&(v, b)| (v, b.restrict(&keep)))
        .collect();
    Ok((Profile::new(alternatives, ballots)?, keep))
}

pub fn restrict(profile: &Profile, keep: &[usize]) -> Result<Profile> {
    restrict_with_map(profile, keep).map(|(p, _)| p)
}

/// The profile without alternative `b`; later alternatives shift down by one.
pub fn remove_alternative(profile: &Profile, b: usize) -> Result<Profile> {
    let keep: Vec<usize> = (0..profile.num_alternatives())
        .filter(|&a| a != b)
        .collect();
    if b >= profile.num_alternatives() {
        return Err(Error::UnknownAlternative(b.to_string()));
    }
    restrict(profile, &keep)
}

fn same_alternatives(a: &Profile, b: &Profile) -> Result<()> {
    if a.num_alternatives() != b.num_alternatives() || a.labels() != b.labels() {
        return Err(Error::AlternativeMismatch);
    }
    Ok(())
}

/// `first + second`: the voters of `second`, taken in increasing id order,
/// are renamed to the smallest ids not used by `first`.
pub fn concat(first: &Profile, second: &Profile) -> Result<Profile> {
    same_alternatives(first, second)?;
    let mut incoming: Vec<(Voter, Ballot)> = second.ballots().to_vec();
    incoming.sort_by_key(|&(v, _)| v);
    let fresh = first.fresh_voters(incoming.len());
    let mut ballots = first.ballots().to_vec();
    ballots.extend(fresh.into_iter().zip(incoming).map(|(v, (_, b))| (v, b)));
    first.with_ballots(ballots)
}

/// `factor` copies of the profile, built as `(factor - 1) P + P`.
pub fn scale(profile: &Profile, factor: usize) -> Result<Profile> {
    if factor == 0 {
        return Err(Error::Domain("scale factor must be at least 1".into()));
    }
    let mut out = profile.clone();
    for _ in 1..factor {
        out = concat(&out, profile)?;
    }
    Ok(out)
}

/// Every linear order of `n` alternatives, lexicographic by ranking.
pub fn linear_orders(n: usize) -> Vec<Ballot> {
    (0..n)
        .permutations(n)
        .map(|order| Ballot::from_order(&order).expect("a permutation is a linear order"))
        .collect()
}

/// Adds one fresh voter per linear order of the alternatives.
pub fn add_block(profile: &Profile) -> Result<Profile> {
    let block = linear_orders(profile.num_alternatives());
    let fresh = profile.fresh_voters(block.len());
    let mut ballots = profile.ballots().to_vec();
    ballots.extend(fresh.into_iter().zip(block));
    profile.with_ballots(ballots)
}

pub fn add_voter(profile: &Profile, ballot: Ballot) -> Result<Profile> {
    if ballot
        .max_alternative()
        .is_some_and(|a| a >= profile.num_alternatives())
    {
        return Err(Error::AlternativeMismatch);
    }
    let voter = profile.fresh_voters(1)[0];
    let mut ballots = profile.ballots().to_vec();
    ballots.push((voter, ballot));
    profile.with_ballots(ballots)
}

fn replace_ballot(profile: &Profile, voter: Voter, ballot: Ballot) -> Result<Profile> {
    let ballots = profile
        .ballots()
        .iter()
        .map(|&(v, b)| if v == voter { (v, ballot) } else { (v, b) })
        .collect();
    profile.with_ballots(ballots)
}

/// The ballot with `a` lifted from uniquely last to uniquely first; the
/// relation among the other alternatives is kept verbatim.
pub fn lift_last_to_first(ballot: Ballot, n: usize, a: usize) -> Result<Ballot> {
    if !ballot.ranks_uniquely_last(n, a) {
        return Err(Error::Domain(format!(
            "alternative {a} is not ranked uniquely last"
        )));
    }
    let mut out = ballot;
    for x in (0..n).filter(|&x| x != a) {
        out.remove(x, a);
        out.insert(a, x);
    }
    Ok(out)
}

pub fn move_last_to_first(profile: &Profile, voter: Voter, a: usize) -> Result<Profile> {
    let ballot = profile.ballot_of(voter)?;
    if a >= profile.num_alternatives() {
        return Err(Error::UnknownAlternative(a.to_string()));
    }
    let lifted = lift_last_to_first(ballot, profile.num_alternatives(), a)?;
    replace_ballot(profile, voter, lifted)
}

/// A primitive improvement of one alternative against one opponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImproveStep {
    /// `(a, b)` is absent and gets added.
    Add,
    /// `(b, a)` is present and gets deleted.
    Delete,
}

/// Single-step improvements of `a` on one ballot, as `(opponent, step)`
/// pairs in increasing opponent order, additions first.
pub fn improvement_steps(ballot: Ballot, n: usize, a: usize) -> Vec<(usize, ImproveStep)> {
    let mut steps = Vec::new();
    for b in (0..n).filter(|&b| b != a) {
        if !ballot.contains(a, b) {
            steps.push((b, ImproveStep::Add));
        }
        if ballot.contains(b, a) {
            steps.push((b, ImproveStep::Delete));
        }
    }
    steps
}

pub fn apply_improvement(
    ballot: Ballot,
    a: usize,
    opponent: usize,
    step: ImproveStep,
) -> Result<Ballot> {
    let mut out = ballot;
    match step {
        ImproveStep::Add if !ballot.contains(a, opponent) => out.insert(a, opponent),
        ImproveStep::Delete if ballot.contains(opponent, a) => out.remove(opponent, a),
        _ => {
            return Err(Error::Domain(format!(
                "{step:?} of {a} over {opponent} is not an improvement of this ballot"
            )))
        }
    }
    Ok(out)
}

/// Every single-step improvement of `a` on `voter`'s ballot, paired with the
/// record that reproduces it. Empty when no step is possible.
pub fn improve_with_records(
    profile: &Profile,
    voter: Voter,
    a: usize,
) -> Result<Vec<(TransformRecord, Profile)>> {
    let n = profile.num_alternatives();
    if a >= n {
        return Err(Error::UnknownAlternative(a.to_string()));
    }
    let ballot = profile.ballot_of(voter)?;
    improvement_steps(ballot, n, a)
        .into_iter()
        .map(|(opponent, step)| {
            let improved = apply_improvement(ballot, a, opponent, step)?;
            let record = TransformRecord::Improve {
                voter,
                alternative: a,
                opponent,
                step,
            };
            Ok((record, replace_ballot(profile, voter, improved)?))
        })
        .collect()
}

pub fn improve(profile: &Profile, voter: Voter, a: usize) -> Result<Vec<Profile>> {
    Ok(improve_with_records(profile, voter, a)?
        .into_iter()
        .map(|(_, p)| p)
        .collect())
}

/// Renames voters: each listed `(from, to)` gives `to` the ballot of `from`.
/// The map must cover every voter of the profile and be injective.
pub fn permute_voters(profile: &Profile, mapping: &[(Voter, Voter)]) -> Result<Profile> {
    let sources: HashSet<Voter> = mapping.iter().map(|&(from, _)| from).collect();
    let targets: HashSet<Voter> = mapping.iter().map(|&(_, to)| to).collect();
    if sources.len() != mapping.len() || targets.len() != mapping.len() {
        return Err(Error::Domain("voter map is not a bijection".into()));
    }
    let mut ballots = Vec::with_capacity(mapping.len());
    for &(voter, ballot) in profile.ballots() {
        let to = mapping
            .iter()
            .find(|&&(from, _)| from == voter)
            .map(|&(_, to)| to)
            .ok_or(Error::UnknownVoter(voter))?;
        ballots.push((to, ballot));
    }
    if sources.len() != profile.num_voters() {
        let extra = sources
            .into_iter()
            .find(|v| profile.ballot_of(*v).is_err())
            .expect("a mapped voter outside the profile");
        return Err(Error::UnknownVoter(extra));
    }
    profile.with_ballots(ballots)
}

/// Renames alternatives: `(a, b)` on any ballot becomes `(tau[a], tau[b])`.
pub fn permute_alternatives(profile: &Profile, tau: &[usize]) -> Result<Profile> {
    let n = profile.num_alternatives();
    let mut seen = vec![false; n];
    if tau.len() != n
        || tau
            .iter()
            .any(|&t| t >= n || std::mem::replace(&mut seen[t], true))
    {
        return Err(Error::Domain("alternative map is not a permutation".into()));
    }
    let ballots = profile
        .ballots()
        .iter()
        .map(|&(v, b)| (v, b.permute(tau)))
        .collect();
    profile.with_ballots(ballots)
}

/// A replayable description of one transformation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TransformRecord {
    Restrict {
        keep: Vec<usize>,
    },
    RemoveAlt {
        alternative: usize,
    },
    Concat {
        other: Profile,
    },
    Scale {
        factor: usize,
    },
    AddBlock,
    AddVoter {
        ballot: Ballot,
    },
    MoveLastToFirst {
        voter: Voter,
        alternative: usize,
    },
    Improve {
        voter: Voter,
        alternative: usize,
        opponent: usize,
        step: ImproveStep,
    },
    PermuteVoters {
        mapping: Vec<(Voter, Voter)>,
    },
    PermuteAlts {
        tau: Vec<usize>,
    },
}

impl TransformRecord {
    pub fn apply(&self, profile: &Profile) -> Result<Profile> {
        match self {
            TransformRecord::Restrict { keep } => restrict(profile, keep),
            TransformRecord::RemoveAlt { alternative } => remove_alternative(profile, *alternative),
            TransformRecord::Concat { other } => concat(profile, other),
            TransformRecord::Scale { factor } => scale(profile, *factor),
            TransformRecord::AddBlock => add_block(profile),
            TransformRecord::AddVoter { ballot } => add_voter(profile, *ballot),
            TransformRecord::MoveLastToFirst { voter, alternative } => {
                move_last_to_first(profile, *voter, *alternative)
            }
            TransformRecord::Improve {
                voter,
                alternative,
                opponent,
                step,
            } => {
                let ballot = profile.ballot_of(*voter)?;
                let improved = apply_improvement(ballot, *alternative, *opponent, *step)?;
                replace_ballot(profile, *voter, improved)
            }
            TransformRecord::PermuteVoters { mapping } => permute_voters(profile, mapping),
            TransformRecord::PermuteAlts { tau } => permute_alternatives(profile, tau),
        }
    }

    /// Short human-readable description using the profile's labels.
    pub fn describe(&self, labels: &[String]) -> String {
        let name = |a: usize| labels.get(a).cloned().unwrap_or_else(|| a.to_string());
        match self {
            TransformRecord::Restrict { keep } => {
                format!(
                    "restrict to {{{}}}",
                    keep.iter().map(|&a| name(a)).join(", ")
                )
            }
            TransformRecord::RemoveAlt { alternative } => format!("remove {}", name(*alternative)),
            TransformRecord::Concat { other } => format!("append {}", other.describe()),
            TransformRecord::Scale { factor } => format!("scale by {factor}"),
            TransformRecord::AddBlock => "add a block of all linear orders".into(),
            TransformRecord::AddVoter { ballot } => {
                format!("add a voter with ballot {}", ballot.describe(labels))
            }
            TransformRecord::MoveLastToFirst { voter, alternative } => format!(
                "voter {} moves {} from uniquely last to uniquely first",
                voter.0,
                name(*alternative)
            ),
            TransformRecord::Improve {
                voter,
                alternative,
                opponent,
                step,
            } => match step {
                ImproveStep::Add => format!(
                    "voter {} now ranks {} above {}",
                    voter.0,
                    name(*alternative),
                    name(*opponent)
                ),
                ImproveStep::Delete => format!(
                    "voter {} no longer ranks {} above {}",
                    voter.0,
                    name(*opponent),
                    name(*alternative)
                ),
            },
            TransformRecord::PermuteVoters { mapping } => format!(
                "rename voters {}",
                mapping
                    .iter()
                    .map(|(f, t)| format!("{}->{}", f.0, t.0))
                    .join(" ")
            ),
            TransformRecord::PermuteAlts { tau } => format!(
                "rename alternatives {}",
                tau.iter()
                    .enumerate()
                    .map(|(a, &t)| format!("{}->{}", name(a), name(t)))
                    .join(" ")
            ),
        }
    }
}
