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

//! Profile files.
//!
//! The structured format is versioned JSON:
//!
//! ```json
//! {"version": 1, "alternatives": ["a", "b", "c"],
//!  "ballots": [{"count": 6, "ranking": [["a"], ["b", "c"]]},
//!              {"count": 1, "relation": [["a", "b"], ["b", "c"], ["c", "a"]]}]}
//! ```
//!
//! A group may list explicit `"voters"` ids; otherwise voters get the
//! smallest unused ids in file order. The line format is for hand-written
//! fixtures: one group per line, `count: a>b=c`, with `#` comments and an
//! optional `alternatives: a b c` header fixing the alternative order.
//!
//! Witness files wrap an [`AxiomWitness`] with the engine version and, for
//! search hits, the spec that found it.

use crate::axioms::{confirm_witness, AxiomWitness};
use crate::error::{Error, Result};
use crate::methods::MethodId;
use crate::profile::{Alternative, Ballot, Profile, Voter};
use crate::search::SearchSpec;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeSet, HashSet};
use std::path::Path;

pub const PROFILE_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub version: u32,
    pub alternatives: Vec<String>,
    pub ballots: Vec<BallotGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallotGroup {
    pub count: usize,
    /// Tiers, best first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranking: Option<Vec<Vec<String>>>,
    /// Explicit `[above, below]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub voters: Option<Vec<u32>>,
}

impl ProfileFile {
    pub fn from_profile(profile: &Profile) -> Self {
        let labels = profile.labels();
        let n = labels.len();
        let sequential = profile.voters().enumerate().all(|(i, v)| v.0 == i as u32);
        let mut groups: Vec<(Ballot, Vec<u32>)> = Vec::new();
        for &(voter, ballot) in profile.ballots() {
            match groups.last_mut() {
                Some((last, ids)) if *last == ballot => ids.push(voter.0),
                _ => groups.push((ballot, vec![voter.0])),
            }
        }
        let name = |a: usize| labels[a].clone();
        let ballots = groups
            .into_iter()
            .map(|(ballot, ids)| {
                let (ranking, relation) = match ballot.tiers(n) {
                    Some(tiers) => (
                        Some(
                            tiers
                                .iter()
                                .map(|t| t.iter().map(|&a| name(a)).collect())
                                .collect(),
                        ),
                        None,
                    ),
                    None => (
                        None,
                        Some(ballot.pairs().map(|(a, b)| (name(a), name(b))).collect()),
                    ),
                };
                BallotGroup {
                    count: ids.len(),
                    ranking,
                    relation,
                    voters: (!sequential).then_some(ids),
                }
            })
            .collect();
        ProfileFile {
            version: PROFILE_FORMAT_VERSION,
            alternatives: labels,
            ballots,
        }
    }

    pub fn to_profile(&self) -> Result<Profile> {
        if self.version != PROFILE_FORMAT_VERSION {
            return Err(Error::Unsupported(format!(
                "profile format version {} (expected {PROFILE_FORMAT_VERSION})",
                self.version
            )));
        }
        let alternatives: Vec<Alternative> = self
            .alternatives
            .iter()
            .enumerate()
            .map(|(i, l)| Alternative::labelled(i, l.as_str()))
            .collect();
        let index = |label: &str| {
            self.alternatives
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::UnknownAlternative(label.to_string()))
        };
        let explicit: HashSet<u32> = self
            .ballots
            .iter()
            .flat_map(|g| g.voters.iter().flatten().copied())
            .collect();
        let mut next_free = (0u32..).filter(|id| !explicit.contains(id));
        let mut ballots = Vec::new();
        for group in &self.ballots {
            if group.count == 0 {
                return Err(Error::Domain("ballot counts must be at least 1".into()));
            }
            let ballot = match (&group.ranking, &group.relation) {
                (Some(tiers), None) => {
                    let tiers = tiers
                        .iter()
                        .map(|t| t.iter().map(|l| index(l)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    Ballot::from_tiers(&tiers)?
                }
                (None, Some(pairs)) => {
                    let pairs = pairs
                        .iter()
                        .map(|(a, b)| Ok((index(a)?, index(b)?)))
                        .collect::<Result<Vec<_>>>()?;
                    Ballot::from_pairs(pairs)?
                }
                _ => {
                    return Err(Error::Domain(
                        "each ballot group needs exactly one of ranking or relation".into(),
                    ))
                }
            };
            match &group.voters {
                Some(ids) if ids.len() != group.count => {
                    return Err(Error::Domain(format!(
                        "group lists {} voters but has count {}",
                        ids.len(),
                        group.count
                    )))
                }
                Some(ids) => ballots.extend(ids.iter().map(|&id| (Voter(id), ballot))),
                None => ballots.extend(
                    next_free
                        .by_ref()
                        .take(group.count)
                        .map(|id| (Voter(id), ballot)),
                ),
            }
        }
        Profile::new(alternatives, ballots)
    }
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileFile::from_profile(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ProfileFile::deserialize(d)?
            .to_profile()
            .map_err(serde::de::Error::custom)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        message: e.to_string(),
    }
}

pub fn parse_profile(text: &str) -> Result<Profile> {
    let file: ProfileFile = serde_json::from_str(text).map_err(json_error)?;
    file.to_profile()
}

pub fn serialize_profile(profile: &Profile) -> String {
    serde_json::to_string_pretty(&ProfileFile::from_profile(profile)).expect("profiles serialize")
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the line format. Without a header the alternatives are the
/// labels that occur, sorted.
pub fn parse_lines(text: &str) -> Result<Profile> {
    let mut header: Option<Vec<String>> = None;
    let mut groups: Vec<(usize, usize, Vec<Vec<String>>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, body) = line
            .split_once(':')
            .ok_or_else(|| parse_error(line_no, "expected `count: ranking`"))?;
        let head = head.trim();
        if head == "alternatives" {
            if header.is_some() || !groups.is_empty() {
                return Err(parse_error(
                    line_no,
                    "the alternatives header must come first",
                ));
            }
            let labels: Vec<String> = body.split_whitespace().map(String::from).collect();
            if labels.is_empty() {
                return Err(parse_error(line_no, "empty alternatives header"));
            }
            header = Some(labels);
            continue;
        }
        let count: usize = head
            .parse()
            .map_err(|_| parse_error(line_no, format!("malformed count {head:?}")))?;
        if count == 0 {
            return Err(parse_error(line_no, "count must be at least 1"));
        }
        let mut tiers = Vec::new();
        for tier in body.split('>') {
            let members: Vec<String> = tier.split('=').map(|l| l.trim().to_string()).collect();
            if members.iter().any(|l| l.is_empty()) {
                return Err(parse_error(line_no, "empty tier"));
            }
            tiers.push(members);
        }
        let mut seen = HashSet::new();
        if let Some(dup) = tiers.iter().flatten().find(|l| !seen.insert(l.as_str())) {
            return Err(parse_error(line_no, format!("{dup:?} appears twice")));
        }
        groups.push((line_no, count, tiers));
    }
    if groups.is_empty() {
        return Err(Error::NoBallots);
    }
    let labels = match header {
        Some(labels) => labels,
        None => groups
            .iter()
            .flat_map(|(_, _, t)| t.iter().flatten().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    };
    let mut ballots = Vec::new();
    for (line_no, count, tiers) in &groups {
        for label in tiers.iter().flatten() {
            if !labels.contains(label) {
                return Err(parse_error(
                    *line_no,
                    format!("unknown alternative {label:?}"),
                ));
            }
        }
        ballots.push(BallotGroup {
            count: *count,
            ranking: Some(tiers.clone()),
            relation: None,
            voters: None,
        });
    }
    ProfileFile {
        version: PROFILE_FORMAT_VERSION,
        alternatives: labels,
        ballots,
    }
    .to_profile()
}

/// Reads a profile file, choosing the format by its first non-blank
/// character: `{` for JSON, anything else for the line format.
pub fn parse_any(text: &str) -> Result<Profile> {
    if text.trim_start().starts_with('{') {
        parse_profile(text)
    } else {
        parse_lines(text)
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn import_external(path: &Path) -> Result<Profile> {
    parse_lines(&read_text(path)?)
}

pub fn read_profile(path: &Path) -> Result<Profile> {
    parse_any(&read_text(path)?)
}

/// A witness as written to disk, with enough context to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub engine_version: String,
    pub witness: AxiomWitness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<SearchSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl WitnessFile {
    pub fn new(witness: AxiomWitness, spec: Option<SearchSpec>) -> Self {
        WitnessFile {
            engine_version: ENGINE_VERSION.to_string(),
            seed: spec.as_ref().map(|s| s.seed),
            witness,
            spec,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness files serialize")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?)
    }

    /// Re-evaluates the recorded method and confirms the violation. The
    /// method is looked up in the registry by name.
    pub fn replay(&self) -> Result<bool> {
        let method: MethodId = self.witness.method.parse()?;
        confirm_witness(&method, &self.witness)
    }
}

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::canonical_form;

    #[test]
    fn support_example_line_format() {
        let p = parse_lines("8: b>c>a\n6: a>b=c\n4: c>a>b").unwrap();
        assert_eq!(p.labels(), vec!["a", "b", "c"]);
        assert_eq!(p.num_voters(), 18);
        let expected = Profile::from_counts(
            3,
            &[
                (8, Ballot::from_order(&[1, 2, 0]).unwrap()),
                (6, Ballot::from_tiers(&[vec![0], vec![1, 2]]).unwrap()),
                (4, Ballot::from_order(&[2, 0, 1]).unwrap()),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn single_tied_ballot() {
        let p = parse_lines("1: a=b").unwrap();
        assert_eq!(p.num_alternatives(), 2);
        assert_eq!(p.ballots()[0].1, Ballot::empty());
    }

    #[test]
    fn line_format_errors() {
        assert!(matches!(
            parse_lines("x: a>b"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_lines("1: a>>b"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_lines("alternatives: a b\n1: a>c"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_lines("1: a>a"), Err(Error::Parse { .. })));
        assert!(matches!(parse_lines("0: a>b"), Err(Error::Parse { .. })));
        assert_eq!(parse_lines("# nothing\n"), Err(Error::NoBallots));
    }

    #[test]
    fn header_fixes_order() {
        let p = parse_lines("alternatives: c b a\n2: a>b>c # comment").unwrap();
        assert_eq!(p.labels(), vec!["c", "b", "a"]);
        assert!(p.ranks_above(Voter(0), 2, 0).unwrap());
    }

    #[test]
    fn json_round_trip_keeps_relations_and_voters() {
        let cyclic = Ballot::from_pairs([(0, 1), (1, 2), (2, 0)]).unwrap();
        let p = Profile::new(
            (0..3).map(Alternative::new).collect(),
            vec![
                (Voter(4), cyclic),
                (Voter(1), Ballot::from_order(&[2, 1, 0]).unwrap()),
            ],
        )
        .unwrap();
        let text = serialize_profile(&p);
        let q = parse_profile(&text).unwrap();
        assert_eq!(q, p);
        assert_eq!(canonical_form(&q), canonical_form(&p));
    }

    #[test]
    fn json_errors() {
        assert!(matches!(parse_profile("{"), Err(Error::Parse { .. })));
        let bad_version = r#"{"version": 2, "alternatives": ["a"], "ballots": [{"count": 1, "ranking": [["a"]]}]}"#;
        assert!(matches!(
            parse_profile(bad_version),
            Err(Error::Unsupported(_))
        ));
        let both = r#"{"version": 1, "alternatives": ["a", "b"], "ballots": [{"count": 1}]}"#;
        assert!(parse_profile(both).is_err());
        let unknown = r#"{"version": 1, "alternatives": ["a", "b"], "ballots": [{"count": 1, "ranking": [["z"]]}]}"#;
        assert_eq!(
            parse_profile(unknown),
            Err(Error::UnknownAlternative("z".into()))
        );
    }

    #[test]
    fn parse_any_dispatches() {
        let p = parse_lines("3: a>b").unwrap();
        assert_eq!(parse_any(&serialize_profile(&p)).unwrap(), p);
        assert_eq!(parse_any("3: a>b").unwrap(), p);
    }

    #[test]
    fn witness_files_round_trip_and_replay() {
        use crate::axioms::check_positive_involvement;
        use crate::profile::BallotKind;
        let p = parse_lines("4: a>b>c\n4: b>c>a\n3: c>a>b\n2: c>b>a").unwrap();
        let w = check_positive_involvement(&MethodId::CondorcetPlurality, &p, BallotKind::Linear)
            .unwrap()
            .witness()
            .expect("condorcet-plurality fails here");
        let file = WitnessFile::new(w, None);
        let back = WitnessFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.engine_version, ENGINE_VERSION);
        assert!(back.replay().unwrap());

        let mut forged = back.clone();
        forged.witness.method = "minimax".into();
        assert!(!forged.replay().unwrap());
        assert!(WitnessFile::parse("{\"engine_version\": \"0\"}").is_err());
    }

    #[test]
    fn missing_files_are_io_errors() {
        let err = read_profile(Path::new("/nonexistent/profile.json")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
