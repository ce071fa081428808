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

//! Worked examples with known outcomes, run as a pass/fail table.
//!
//! Each fixture recomputes a value from scratch and compares its rendering
//! with the expected string, so a mismatch prints as a readable diff.

use crate::axioms::eight_voter_tradeoff;
use crate::error::Result;
use crate::io::parse_lines;
use crate::margin::{support, MarginGraph};
use crate::methods::{minimax_from_graph, MethodId, VotingMethod};
use crate::profile::{Ballot, Profile};
use crate::transform::{add_block, add_voter, scale};

/// One example: a name, the expected rendering and the computation.
#[derive(Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub expected: String,
    pub compute: fn() -> Result<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

fn profile(text: &str) -> Result<Profile> {
    parse_lines(text)
}

fn winners(method: MethodId, p: &Profile) -> Result<String> {
    Ok(method.winners(p)?.describe(&p.labels()))
}

fn edges(p: &Profile, g: &MarginGraph) -> String {
    let labels = p.labels();
    g.positive_edges()
        .iter()
        .map(|&(a, b, w)| format!("{}>{} {w}", labels[a], labels[b]))
        .collect::<Vec<_>>()
        .join(", ")
}

const SUPPORT_EXAMPLE: &str = "8: b>c>a\n6: a>b=c\n4: c>a>b";
const PLURALITY_EXAMPLE: &str = "4: a>b>c\n4: b>c>a\n3: c>a>b\n2: c>b>a";
const HOMOGENEITY_EXAMPLE: &str = "6: a>b=c\n1: b>a=c\n4: b>c>a\n3: c>a>b";
const BLOCK_EXAMPLE: &str = "4: x>y>z\n5: y>z>x\n2: z>x>y";
const BUCKLIN_EXAMPLE: &str = "1: a>b>c\n3: c>a>b";
const COOMBS_EXAMPLE: &str = "2: a>b>c\n2: c>b>a\n2: c>a>b\n1: b>a>c";

fn three_cycle_minimax() -> Result<String> {
    let g = MarginGraph::three_cycle(10, 6, 8);
    let labels: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
    Ok(minimax_from_graph(&g).describe(&labels))
}

fn support_margins() -> Result<String> {
    let p = profile(SUPPORT_EXAMPLE)?;
    Ok(edges(&p, &MarginGraph::from_profile(&p)))
}

fn support_counts() -> Result<String> {
    let p = profile(SUPPORT_EXAMPLE)?;
    let labels = p.labels();
    let g = MarginGraph::from_profile(&p);
    let mut parts = Vec::new();
    for (a, b, _) in g.positive_edges() {
        parts.push(format!(
            "{}>{} {}",
            labels[a],
            labels[b],
            support(&p, a, b)?
        ));
    }
    Ok(parts.join(", "))
}

fn support_winners() -> Result<String> {
    let p = profile(SUPPORT_EXAMPLE)?;
    let (_, scores) = MethodId::Minimax.scores(&p).expect("minimax has scores");
    let labels = p.labels();
    let scores = scores
        .iter()
        .enumerate()
        .map(|(a, s)| format!("{}:{s}", labels[a]))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(format!(
        "margin {} ({scores}), support {}",
        winners(MethodId::Minimax, &p)?,
        winners(MethodId::MinimaxSupport, &p)?
    ))
}

fn support_after_three_cba() -> Result<String> {
    let mut p = profile(SUPPORT_EXAMPLE)?;
    for _ in 0..3 {
        p = add_voter(&p, Ballot::from_order(&[2, 1, 0])?)?;
    }
    let g = MarginGraph::from_profile(&p);
    Ok(match g.condorcet_winner() {
        Some(w) => format!("condorcet winner {}", p.label(w)),
        None => "no condorcet winner".into(),
    })
}

fn plurality_before_after() -> Result<String> {
    let p = profile(PLURALITY_EXAMPLE)?;
    let q = add_voter(&p, Ballot::from_order(&[2, 1, 0])?)?;
    Ok(format!(
        "{} then {}",
        winners(MethodId::CondorcetPlurality, &p)?,
        winners(MethodId::CondorcetPlurality, &q)?
    ))
}

fn homogeneity_before_after() -> Result<String> {
    let p = profile(HOMOGENEITY_EXAMPLE)?;
    Ok(format!(
        "{} then {}",
        winners(MethodId::HomogeneityViolator, &p)?,
        winners(MethodId::HomogeneityViolator, &scale(&p, 2)?)?
    ))
}

fn block_before_after() -> Result<String> {
    let p = profile(BLOCK_EXAMPLE)?;
    Ok(format!(
        "{} vs minimax {}, with block {}",
        winners(MethodId::BlockViolator, &p)?,
        winners(MethodId::Minimax, &p)?,
        winners(MethodId::BlockViolator, &add_block(&p)?)?
    ))
}

/// Voters placing each alternative in their top `depth` positions.
fn top_counts(p: &Profile, depth: usize) -> Vec<usize> {
    let n = p.num_alternatives();
    let mut counts = vec![0; n];
    for (_, ballot) in p.ballots() {
        if let Some(order) = ballot.linear_order(n) {
            for &a in order.iter().take(depth) {
                counts[a] += 1;
            }
        }
    }
    counts
}

fn bucklin_before_after() -> Result<String> {
    let p = profile(BUCKLIN_EXAMPLE)?;
    let q = add_block(&p)?;
    let top2 = top_counts(&q, 2);
    Ok(format!(
        "{} then {} (top-two a:{} c:{})",
        winners(MethodId::Bucklin, &p)?,
        winners(MethodId::Bucklin, &q)?,
        top2[0],
        top2[2]
    ))
}

fn coombs_before_after() -> Result<String> {
    let p = profile(COOMBS_EXAMPLE)?;
    let q = add_block(&p)?;
    let n = q.num_alternatives();
    let mut last = vec![0usize; n];
    for (_, ballot) in q.ballots() {
        if let Some(order) = ballot.linear_order(n) {
            last[order[n - 1]] += 1;
        }
    }
    let most_last = (0..n)
        .max_by_key(|&a| (last[a], std::cmp::Reverse(a)))
        .expect("alternatives");
    Ok(format!(
        "{} then {} (first eliminated {})",
        winners(MethodId::Coombs, &p)?,
        winners(MethodId::Coombs, &q)?,
        q.label(most_last)
    ))
}

fn eight_voter_margins() -> Result<String> {
    let (_, _, [p, _, _]) = crate::axioms::tradeoff_profiles()?;
    let g = MarginGraph::from_profile(&p);
    Ok(format!(
        "c-b {}, b-a {}, c-a {}",
        g.margin(2, 1),
        g.margin(1, 0),
        g.margin(2, 0)
    ))
}

fn minimax_mb_tradeoff() -> Result<String> {
    let report = eight_voter_tradeoff(&MethodId::MinimaxMb)?;
    let labels = report.profile.labels();
    Ok(format!(
        "{} then {}",
        report.winners.describe(&labels),
        report.winners_switched.describe(&labels)
    ))
}

/// Every built-in fixture, in a fixed order.
pub fn builtin_fixtures() -> Vec<Fixture> {
    let f = |name, expected: &str, compute| Fixture {
        name,
        expected: expected.to_string(),
        compute,
    };
    vec![
        f(
            "minimax-three-cycle",
            "{c}",
            three_cycle_minimax as fn() -> Result<String>,
        ),
        f(
            "support-example-margins",
            "a>b 2, b>c 4, c>a 6",
            support_margins,
        ),
        f(
            "support-example-support",
            "a>b 10, b>c 8, c>a 12",
            support_counts,
        ),
        f(
            "support-example-winners",
            "margin {b} (a:6 b:2 c:4), support {c}",
            support_winners,
        ),
        f(
            "support-example-plus-three-cba",
            "condorcet winner b",
            support_after_three_cba,
        ),
        f(
            "condorcet-plurality-involvement",
            "{c} then {b}",
            plurality_before_after,
        ),
        f(
            "homogeneity-violator-doubling",
            "{a, c} then {a}",
            homogeneity_before_after,
        ),
        f(
            "block-violator-block",
            "{x} vs minimax {y}, with block {y}",
            block_before_after,
        ),
        f(
            "bucklin-block",
            "{c} then {a} (top-two a:8 c:7)",
            bucklin_before_after,
        ),
        f(
            "coombs-block",
            "{c} then {a} (first eliminated c)",
            coombs_before_after,
        ),
        f(
            "eight-voter-margins",
            "c-b 0, b-a 2, c-a 2",
            eight_voter_margins,
        ),
        f(
            "eight-voter-minimax-mb",
            "{b, c} then {c}",
            minimax_mb_tradeoff,
        ),
    ]
}

/// Runs the fixtures in order. A computation error is reported as the
/// actual value, so it always counts as a mismatch.
pub fn run_fixtures(fixtures: &[Fixture]) -> Vec<FixtureOutcome> {
    fixtures
        .iter()
        .map(|f| FixtureOutcome {
            name: f.name,
            expected: f.expected.clone(),
            actual: (f.compute)().unwrap_or_else(|e| format!("error: {e}")),
        })
        .collect()
}

/// Fixed-width table with one row per fixture and a final tally.
pub fn render_table(outcomes: &[FixtureOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for o in outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        out += &format!("{status}  {:width$}  {}\n", o.name, o.actual);
        if !o.passed() {
            out += &format!("      {:width$}  expected: {}\n", "", o.expected);
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    out += &format!("{passed}/{} fixtures match\n", outcomes.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_pass() {
        let outcomes = run_fixtures(&builtin_fixtures());
        for o in &outcomes {
            assert!(
                o.passed(),
                "{}: expected {:?}, got {:?}",
                o.name,
                o.expected,
                o.actual
            );
        }
    }

    #[test]
    fn corrupted_expectation_fails() {
        let mut fixtures = builtin_fixtures();
        fixtures[5].expected = "{a} then {b}".into();
        let outcomes = run_fixtures(&fixtures);
        assert!(!outcomes[5].passed());
        assert!(render_table(&outcomes).contains("expected: {a} then {b}"));
    }

    #[test]
    fn table_is_deterministic() {
        let a = render_table(&run_fixtures(&builtin_fixtures()));
        let b = render_table(&run_fixtures(&builtin_fixtures()));
        assert_eq!(a, b);
    }
}
