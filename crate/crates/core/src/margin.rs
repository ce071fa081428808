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

//! Margins, supports and the structures derived from them: margin graphs,
//! ordinal margin graphs, Condorcet notions, Smith and defensible sets, and
//! the classification of three-alternative margin graphs.

use crate::error::{Error, Result};
use crate::profile::Profile;
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Complete antisymmetric margin matrix. The usual "margin graph" keeps only
/// the positive entries; see [`MarginGraph::positive_edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarginGraph {
    n: usize,
    margins: Vec<i64>,
}

impl MarginGraph {
    pub fn from_profile(profile: &Profile) -> Self {
        let support = support_matrix(profile);
        let n = profile.num_alternatives();
        let mut margins = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                margins[a * n + b] = support[a * n + b] as i64 - support[b * n + a] as i64;
            }
        }
        MarginGraph { n, margins }
    }

    /// Builds a graph from a row-major `n x n` matrix, which must be
    /// antisymmetric.
    pub fn from_matrix(n: usize, margins: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoAlternatives);
        }
        if margins.len() != n * n {
            return Err(Error::Domain(format!(
                "expected {} matrix entries, got {}",
                n * n,
                margins.len()
            )));
        }
        for a in 0..n {
            for b in 0..n {
                if margins[a * n + b] != -margins[b * n + a] {
                    return Err(Error::Domain(format!(
                        "margin matrix is not antisymmetric at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(MarginGraph { n, margins })
    }

    /// Three-alternative graph from the margins of `a` over `b`, `b` over
    /// `c` and `c` over `a` (indices 0, 1, 2).
    pub fn three_cycle(ab: i64, bc: i64, ca: i64) -> Self {
        let margins = vec![0, ab, -ca, -ab, 0, bc, ca, -bc, 0];
        MarginGraph { n: 3, margins }
    }

    pub fn num_alternatives(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn margin(&self, a: usize, b: usize) -> i64 {
        self.margins[a * self.n + b]
    }

    /// Edges with positive margin, as `(from, to, weight)`.
    pub fn positive_edges(&self) -> Vec<(usize, usize, i64)> {
        let mut edges = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let m = self.margin(a, b);
                if m > 0 {
                    edges.push((a, b, m));
                }
            }
        }
        edges
    }

    pub fn ordinal(&self) -> OrdinalMarginGraph {
        let edges = self.positive_edges();
        let weights: Vec<i64> = edges.iter().map(|e| e.2).sorted().dedup().collect();
        let edges = edges
            .into_iter()
            .map(|(a, b, w)| (a, b, weights.binary_search(&w).unwrap() as u32))
            .collect();
        OrdinalMarginGraph { n: self.n, edges }
    }

    /// The largest margin any other alternative has over `a`; 0 when `a` is
    /// the only alternative.
    pub fn minimax_score(&self, a: usize) -> i64 {
        (0..self.n)
            .filter(|&b| b != a)
            .map(|b| self.margin(b, a))
            .max()
            .unwrap_or(0)
    }

    /// Sum of `a`'s margins over every alternative.
    pub fn marginal_borda_score(&self, a: usize) -> i64 {
        (0..self.n).map(|b| self.margin(a, b)).sum()
    }

    pub fn beats(&self, a: usize, b: usize) -> bool {
        self.margin(a, b) > 0
    }

    pub fn condorcet_winner(&self) -> Option<usize> {
        (0..self.n).find(|&a| (0..self.n).all(|b| b == a || self.margin(a, b) > 0))
    }

    pub fn weak_condorcet_winners(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| b == a || self.margin(a, b) >= 0))
            .collect()
    }

    pub fn condorcet_loser(&self) -> Option<usize> {
        (0..self.n).find(|&a| (0..self.n).all(|b| b == a || self.margin(a, b) < 0))
    }

    /// Smallest set whose members each have a positive margin over every
    /// outsider.
    pub fn smith_set(&self) -> Vec<usize> {
        // The closure of {x} under "s does not beat y" is the least dominant
        // set containing x; dominant sets form a chain, so take the smallest.
        (0..self.n)
            .map(|x| {
                let mut members = vec![false; self.n];
                members[x] = true;
                let mut changed = true;
                while changed {
                    changed = false;
                    for y in 0..self.n {
                        if members[y] {
                            continue;
                        }
                        if (0..self.n).any(|s| members[s] && self.margin(s, y) <= 0) {
                            members[y] = true;
                            changed = true;
                        }
                    }
                }
                (0..self.n).filter(|&a| members[a]).collect::<Vec<_>>()
            })
            .min_by_key(|set| set.len())
            .unwrap_or_default()
    }

    /// Alternatives `a` such that for every `b` some `c` has
    /// `margin(c, b) >= margin(b, a)`.
    pub fn defensible_set(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| {
                (0..self.n).filter(|&b| b != a).all(|b| {
                    let threat = self.margin(b, a);
                    (0..self.n)
                        .filter(|&c| c != b)
                        .any(|c| self.margin(c, b) >= threat)
                })
            })
            .collect()
    }

    /// Distinct ordered pairs carry distinct margins. Equivalently, all
    /// pairwise contests have nonzero margins of pairwise distinct size.
    pub fn is_uniquely_weighted(&self) -> bool {
        let mut values: Vec<i64> = Vec::with_capacity(self.n * self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b {
                    values.push(self.margin(a, b));
                }
            }
        }
        let len = values.len();
        values.sort_unstable();
        values.dedup();
        values.len() == len
    }

    /// Classifies a three-alternative graph into its cycle case.
    pub fn classify_three_cycle(&self) -> Result<CycleCase> {
        if self.n != 3 {
            return Err(Error::Domain(format!(
                "cycle classification needs exactly 3 alternatives, got {}",
                self.n
            )));
        }
        if let Some(w) = self.condorcet_winner() {
            let mut roles = [w, 0, 0];
            let rest: Vec<usize> = (0..3).filter(|&x| x != w).collect();
            roles[1] = rest[0];
            roles[2] = rest[1];
            return Ok(CycleCase {
                shape: CycleShape::CondorcetWinner,
                n: 0,
                m: 0,
                k: 0,
                roles,
            });
        }
        for perm in (0..3).permutations(3) {
            let (a, b, c) = (perm[0], perm[1], perm[2]);
            let roles = [a, b, c];
            let ab = self.margin(a, b);
            let bc = self.margin(b, c);
            let ca = self.margin(c, a);
            let ba = self.margin(b, a);
            let found = |shape, n: i64, m: i64, k: i64| CycleCase {
                shape,
                n: n as u64,
                m: m as u64,
                k: k as u64,
                roles,
            };
            // symmetric: a->b n, b->c k, c->a m, all equal
            if ab >= 0 && ab == bc && bc == ca {
                return Ok(found(CycleShape::Symmetric, ab, ca, bc));
            }
            // ascending: a->b n, b->c m, c->a k with 0 <= n <= m < k
            if 0 <= ab && ab <= bc && bc < ca {
                return Ok(found(CycleShape::Ascending, ab, bc, ca));
            }
            // descending: a->b n, b->c k, c->a m with 0 <= n < m <= k
            if 0 <= ab && ab < ca && ca <= bc {
                return Ok(found(CycleShape::Descending, ab, ca, bc));
            }
            // Condorcet loser: b->a n, c->a k, b~c, 0 < n <= k
            if bc == 0 && 0 < ba && ba <= ca {
                return Ok(found(CycleShape::CondorcetLoser, ba, 0, ca));
            }
        }
        unreachable!(
            "three-alternative margin graphs without a Condorcet winner fall in one of four cases"
        )
    }
}

/// Per-pair count of voters ranking `a` above `b`, row-major.
fn support_matrix(profile: &Profile) -> Vec<u32> {
    let n = profile.num_alternatives();
    let mut support = vec![0u32; n * n];
    for (_, ballot) in profile.ballots() {
        for (a, b) in ballot.pairs() {
            support[a * n + b] += 1;
        }
    }
    support
}

fn check_pair(profile: &Profile, a: usize, b: usize) -> Result<()> {
    let n = profile.num_alternatives();
    if a >= n || b >= n {
        return Err(Error::UnknownAlternative(a.max(b).to_string()));
    }
    if a == b {
        return Err(Error::SameAlternative);
    }
    Ok(())
}

/// Voters ranking `a` above `b` minus voters ranking `b` above `a`.
pub fn margin(profile: &Profile, a: usize, b: usize) -> Result<i64> {
    check_pair(profile, a, b)?;
    Ok(support(profile, a, b)? as i64 - support(profile, b, a)? as i64)
}

/// Number of voters ranking `a` above `b`.
pub fn support(profile: &Profile, a: usize, b: usize) -> Result<u64> {
    check_pair(profile, a, b)?;
    Ok(profile
        .ballots()
        .iter()
        .filter(|(_, ballot)| ballot.contains(a, b))
        .count() as u64)
}

/// Full support matrix indexed `[a][b]`.
pub fn support_table(profile: &Profile) -> Vec<Vec<u64>> {
    let n = profile.num_alternatives();
    let flat = support_matrix(profile);
    (0..n)
        .map(|a| (0..n).map(|b| flat[a * n + b] as u64).collect())
        .collect()
}

pub fn margin_graph(profile: &Profile) -> MarginGraph {
    MarginGraph::from_profile(profile)
}

pub fn ordinal_margin_graph(profile: &Profile) -> OrdinalMarginGraph {
    MarginGraph::from_profile(profile).ordinal()
}

pub fn condorcet_winner(profile: &Profile) -> Option<usize> {
    margin_graph(profile).condorcet_winner()
}

pub fn weak_condorcet_winners(profile: &Profile) -> Vec<usize> {
    margin_graph(profile).weak_condorcet_winners()
}

pub fn condorcet_loser(profile: &Profile) -> Option<usize> {
    margin_graph(profile).condorcet_loser()
}

pub fn smith_set(profile: &Profile) -> Vec<usize> {
    margin_graph(profile).smith_set()
}

pub fn defensible_set(profile: &Profile) -> Vec<usize> {
    margin_graph(profile).defensible_set()
}

pub fn classify_three_cycle(profile: &Profile) -> Result<CycleCase> {
    margin_graph(profile).classify_three_cycle()
}

pub fn is_uniquely_weighted(profile: &Profile) -> bool {
    margin_graph(profile).is_uniquely_weighted()
}

/// Positive-margin edges annotated with the dense rank of their weight
/// (0 = lightest). Two profiles have the same ordinal margin graph iff these
/// values are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrdinalMarginGraph {
    n: usize,
    edges: Vec<(usize, usize, u32)>,
}

impl OrdinalMarginGraph {
    pub fn num_alternatives(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleShape {
    CondorcetWinner,
    /// `a -> b` (n), `b -> c` (m), `c -> a` (k) with `0 <= n <= m < k`.
    Ascending,
    /// `a -> b` (n), `b -> c` (k), `c -> a` (m) with `0 <= n < m <= k`.
    Descending,
    /// `b -> a` (n), `c -> a` (k), `b ~ c`, with `0 < n <= k`.
    CondorcetLoser,
    /// `a -> b`, `b -> c`, `c -> a` all of equal weight `n = m = k >= 0`.
    Symmetric,
}

impl CycleShape {
    pub fn as_str(&self) -> &'static str {
        match self {
            CycleShape::CondorcetWinner => "condorcet-winner",
            CycleShape::Ascending => "ascending",
            CycleShape::Descending => "descending",
            CycleShape::CondorcetLoser => "condorcet-loser",
            CycleShape::Symmetric => "symmetric",
        }
    }
}

/// A three-alternative margin graph in one of the cycle cases, with the
/// alternatives playing roles `a`, `b`, `c` and the edge weights `n`, `m`,
/// `k` as drawn for that case. For a Condorcet winner, `roles[0]` is the
/// winner and all weights are 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleCase {
    pub shape: CycleShape,
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub roles: [usize; 3],
}

impl CycleCase {
    /// Ascending with `n < m`.
    pub fn is_strictly_ascending(&self) -> bool {
        self.shape == CycleShape::Ascending && self.n < self.m
    }

    /// Case label, distinguishing strictly ascending graphs.
    pub fn label(&self) -> &'static str {
        if self.is_strictly_ascending() {
            "strictly-ascending"
        } else {
            self.shape.as_str()
        }
    }
}

impl fmt::Display for CycleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (n={}, m={}, k={}, roles a={}, b={}, c={})",
            self.label(),
            self.n,
            self.m,
            self.k,
            self.roles[0],
            self.roles[1],
            self.roles[2]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Ballot, Profile};

    fn plurality_profile() -> Profile {
        Profile::from_rankings(3, &[(4, "abc"), (4, "bca"), (3, "cab"), (2, "cba")]).unwrap()
    }

    fn support_profile() -> Profile {
        let bca = Ballot::from_order(&[1, 2, 0]).unwrap();
        let a_bc = Ballot::from_tiers(&[vec![0], vec![1, 2]]).unwrap();
        let cab = Ballot::from_order(&[2, 0, 1]).unwrap();
        Profile::from_counts(3, &[(8, bca), (6, a_bc), (4, cab)]).unwrap()
    }

    #[test]
    fn plurality_margins() {
        let p = plurality_profile();
        assert_eq!(margin(&p, 2, 0).unwrap(), 5);
        assert_eq!(margin(&p, 1, 2).unwrap(), 3);
        assert_eq!(margin(&p, 0, 1).unwrap(), 1);
    }

    #[test]
    fn single_voter_margin_is_antisymmetric() {
        let p = Profile::from_rankings(2, &[(1, "ab")]).unwrap();
        assert_eq!(margin(&p, 0, 1).unwrap(), 1);
        assert_eq!(margin(&p, 1, 0).unwrap(), -1);
        assert_eq!(margin(&p, 0, 0), Err(Error::SameAlternative));
        assert_eq!(support(&p, 1, 1), Err(Error::SameAlternative));
    }

    #[test]
    fn support_profile_margins_and_supports() {
        let p = support_profile();
        assert_eq!(margin(&p, 1, 2).unwrap(), 4);
        assert_eq!(margin(&p, 2, 0).unwrap(), 6);
        assert_eq!(margin(&p, 0, 1).unwrap(), 2);
        assert_eq!(support(&p, 1, 2).unwrap(), 8);
        assert_eq!(support(&p, 2, 0).unwrap(), 12);
        assert_eq!(support(&p, 0, 1).unwrap(), 10);
        let edges = margin_graph(&p).positive_edges();
        assert_eq!(edges, vec![(0, 1, 2), (1, 2, 4), (2, 0, 6)]);
    }

    #[test]
    fn unanimous_support() {
        let p = Profile::from_rankings(2, &[(5, "ab")]).unwrap();
        assert_eq!(support(&p, 0, 1).unwrap(), 5);
        assert_eq!(support(&p, 1, 0).unwrap(), 0);
    }

    #[test]
    fn full_block_cancels() {
        let p = Profile::from_rankings(
            3,
            &[
                (1, "abc"),
                (1, "acb"),
                (1, "bac"),
                (1, "bca"),
                (1, "cab"),
                (1, "cba"),
            ],
        )
        .unwrap();
        let g = margin_graph(&p);
        assert!(g.positive_edges().is_empty());
        assert!(g.ordinal().edges().is_empty());
    }

    #[test]
    fn condorcet_notions() {
        let p = plurality_profile();
        assert_eq!(condorcet_winner(&p), None);
        assert!(weak_condorcet_winners(&p).is_empty());

        let p2 =
            Profile::from_rankings(3, &[(4, "abc"), (4, "bca"), (3, "cab"), (3, "cba")]).unwrap();
        assert_eq!(weak_condorcet_winners(&p2), vec![1]);
        assert_eq!(condorcet_winner(&p2), None);

        let sym = MarginGraph::three_cycle(1, 1, 1);
        assert_eq!(sym.condorcet_winner(), None);
        assert!(sym.weak_condorcet_winners().is_empty());
        assert_eq!(sym.condorcet_loser(), None);
    }

    #[test]
    fn support_profile_plus_three_cba_has_condorcet_winner_b() {
        let p = support_profile();
        let cba = Ballot::from_order(&[2, 1, 0]).unwrap();
        let mut ballots: Vec<Ballot> = p.ballots().iter().map(|&(_, b)| b).collect();
        ballots.extend([cba; 3]);
        let q = Profile::from_ballots(3, ballots).unwrap();
        assert_eq!(condorcet_winner(&q), Some(1));
    }

    fn brute_smith(g: &MarginGraph) -> Vec<usize> {
        let n = g.num_alternatives();
        let mut best: Option<Vec<usize>> = None;
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&a| mask & (1 << a) != 0).collect();
            let dominant = set.iter().all(|&s| {
                (0..n)
                    .filter(|o| !set.contains(o))
                    .all(|o| g.margin(s, o) > 0)
            });
            if dominant && best.as_ref().is_none_or(|b| set.len() < b.len()) {
                best = Some(set);
            }
        }
        best.unwrap()
    }

    #[test]
    fn smith_set_examples() {
        let winner = MarginGraph::three_cycle(2, 4, -1);
        assert_eq!(winner.condorcet_winner(), Some(0));
        assert_eq!(winner.smith_set(), vec![0]);
        let cycle = MarginGraph::three_cycle(1, 3, 5);
        assert_eq!(cycle.smith_set(), brute_smith(&cycle));
        assert_eq!(cycle.smith_set(), vec![0, 1, 2]);
        // b and c beat a, b ~ c
        let loser = MarginGraph::three_cycle(-2, 0, 4);
        assert_eq!(loser.smith_set(), vec![1, 2]);
        assert_eq!(loser.smith_set(), brute_smith(&loser));
    }

    #[test]
    fn smith_set_matches_subset_oracle_on_small_graphs() {
        // Every antisymmetric 4x4 matrix with entries in {-1, 0, 1}.
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .collect();
        for code in 0..3usize.pow(pairs.len() as u32) {
            let mut m = vec![0i64; 16];
            let mut c = code;
            for &(a, b) in &pairs {
                let v = (c % 3) as i64 - 1;
                c /= 3;
                m[a * 4 + b] = v;
                m[b * 4 + a] = -v;
            }
            let g = MarginGraph::from_matrix(4, m).unwrap();
            assert_eq!(g.smith_set(), brute_smith(&g));
        }
    }

    #[test]
    fn defensible_examples() {
        let winner = MarginGraph::three_cycle(2, 4, -1);
        assert!(winner.defensible_set().contains(&0));
        let descending = MarginGraph::three_cycle(1, 5, 3);
        assert_eq!(descending.defensible_set(), vec![0, 1]);
        assert_eq!(
            MarginGraph::three_cycle(2, 2, 2).defensible_set(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn classify_examples() {
        let case = classify_three_cycle(&plurality_profile()).unwrap();
        assert_eq!(case.shape, CycleShape::Ascending);
        assert_eq!((case.n, case.m, case.k), (1, 3, 5));
        assert_eq!(case.roles, [0, 1, 2]);
        assert!(case.is_strictly_ascending());

        let zero = MarginGraph::three_cycle(0, 0, 0)
            .classify_three_cycle()
            .unwrap();
        assert_eq!(zero.shape, CycleShape::Symmetric);
        assert_eq!((zero.n, zero.m, zero.k), (0, 0, 0));
        assert_eq!(zero.roles, [0, 1, 2]);

        let loser = MarginGraph::three_cycle(-2, 0, 4)
            .classify_three_cycle()
            .unwrap();
        assert_eq!(loser.shape, CycleShape::CondorcetLoser);
        assert_eq!((loser.n, loser.k), (2, 4));
        assert_eq!(loser.roles[0], 0);

        let desc = MarginGraph::three_cycle(1, 5, 3)
            .classify_three_cycle()
            .unwrap();
        assert_eq!(desc.shape, CycleShape::Descending);
        assert_eq!((desc.n, desc.m, desc.k), (1, 3, 5));

        let two = Profile::from_rankings(2, &[(1, "ab")]).unwrap();
        assert!(classify_three_cycle(&two).is_err());
    }

    #[test]
    fn classification_is_exhaustive_and_exclusive() {
        // Oracle: test each case's defining inequalities under every role
        // assignment and count how many case labels can apply.
        for ab in -4i64..=4 {
            for bc in -4i64..=4 {
                for ca in -4i64..=4 {
                    let g = MarginGraph::three_cycle(ab, bc, ca);
                    let case = g.classify_three_cycle().unwrap();
                    if g.condorcet_winner().is_some() {
                        assert_eq!(case.shape, CycleShape::CondorcetWinner);
                        continue;
                    }
                    let mut labels = std::collections::BTreeSet::new();
                    for p in (0..3).permutations(3) {
                        let (a, b, c) = (p[0], p[1], p[2]);
                        let (n1, n2, n3) = (g.margin(a, b), g.margin(b, c), g.margin(c, a));
                        if n1 >= 0 && n1 == n2 && n2 == n3 {
                            labels.insert("symmetric");
                        }
                        if 0 <= n1 && n1 <= n2 && n2 < n3 {
                            labels.insert("ascending");
                        }
                        if 0 <= n1 && n1 < n3 && n3 <= n2 {
                            labels.insert("descending");
                        }
                        if g.margin(b, c) == 0
                            && g.margin(b, a) > 0
                            && g.margin(b, a) <= g.margin(c, a)
                        {
                            labels.insert("condorcet-loser");
                        }
                    }
                    assert_eq!(labels.len(), 1, "margins {ab} {bc} {ca}: {labels:?}");
                    assert_eq!(labels.into_iter().next().unwrap(), case.shape.as_str());
                }
            }
        }
    }

    #[test]
    fn uniquely_weighted_examples() {
        assert!(MarginGraph::three_cycle(1, 3, 5).is_uniquely_weighted());
        assert!(!MarginGraph::three_cycle(0, 3, 5).is_uniquely_weighted());
        assert!(!MarginGraph::three_cycle(2, 2, 2).is_uniquely_weighted());
        assert!(!MarginGraph::three_cycle(3, -3, 5).is_uniquely_weighted());
    }

    #[test]
    fn ordinal_graph_ranks_by_weight() {
        let g = MarginGraph::three_cycle(1, 3, 3);
        assert_eq!(g.ordinal().edges(), &[(0, 1, 0), (1, 2, 1), (2, 0, 1)]);
        assert_eq!(g.ordinal(), MarginGraph::three_cycle(2, 7, 7).ordinal());
        assert_ne!(g.ordinal(), MarginGraph::three_cycle(2, 7, 8).ordinal());
    }
}
