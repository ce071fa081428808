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

//! Algebraic invariants of profiles, margins and transformations.

use minimax_axioms::margin::{margin_graph, support};
use minimax_axioms::methods::{minimax, minimax_score};
use minimax_axioms::profile::{ballot_space, canonical_form};
use minimax_axioms::transform::{
    add_block, add_voter, concat, move_last_to_first, permute_alternatives, permute_voters,
    restrict, scale,
};
use minimax_axioms::{Ballot, BallotKind, MarginGraph, Profile, Voter};
use proptest::prelude::*;
use proptest::sample::{select, subsequence};

fn kind() -> impl Strategy<Value = BallotKind> {
    select(vec![
        BallotKind::Linear,
        BallotKind::StrictWeakOrder,
        BallotKind::Relation,
    ])
}

fn profile_over(n: usize, kind: BallotKind, max_voters: usize) -> impl Strategy<Value = Profile> {
    let space = ballot_space(n, kind).unwrap();
    prop::collection::vec(select(space), 1..=max_voters)
        .prop_map(move |ballots| Profile::from_ballots(n, ballots).unwrap())
}

fn profile() -> impl Strategy<Value = Profile> {
    (2usize..=4, kind()).prop_flat_map(|(n, k)| profile_over(n, k, 7))
}

/// Two profiles over the same alternatives.
fn pair() -> impl Strategy<Value = (Profile, Profile)> {
    (2usize..=4, kind()).prop_flat_map(|(n, k)| (profile_over(n, k, 6), profile_over(n, k, 6)))
}

fn margins(p: &Profile) -> Vec<i64> {
    let g = margin_graph(p);
    let n = p.num_alternatives();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| g.margin(a, b))
        .collect()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn margins_are_antisymmetric_and_bounded(p in profile()) {
        let g = margin_graph(&p);
        let n = p.num_alternatives();
        for a in 0..n {
            prop_assert_eq!(g.margin(a, a), 0);
            for b in 0..n {
                prop_assert_eq!(g.margin(a, b), -g.margin(b, a));
                prop_assert!(g.margin(a, b).unsigned_abs() as usize <= p.num_voters());
                if a != b {
                    let s = support(&p, a, b).unwrap() as i64 - support(&p, b, a).unwrap() as i64;
                    prop_assert_eq!(g.margin(a, b), s);
                }
            }
        }
    }

    #[test]
    fn canonical_form_ignores_voter_names(p in profile(), shift in 0u32..50) {
        let mapping: Vec<(Voter, Voter)> = p
            .voters()
            .enumerate()
            .map(|(i, v)| (v, Voter(shift + 2 * (p.num_voters() as u32 - i as u32))))
            .collect();
        let q = permute_voters(&p, &mapping).unwrap();
        prop_assert_eq!(canonical_form(&q), canonical_form(&p));
        prop_assert_eq!(canonical_form(&canonical_form(&p)), canonical_form(&p));
    }

    #[test]
    fn margins_add_over_concatenation((p, q) in pair()) {
        let sum = concat(&p, &q).unwrap();
        prop_assert_eq!(sum.num_voters(), p.num_voters() + q.num_voters());
        let expected: Vec<i64> = margins(&p).iter().zip(margins(&q)).map(|(x, y)| x + y).collect();
        prop_assert_eq!(margins(&sum), expected);
    }

    #[test]
    fn scaling_multiplies_margins(p in profile(), k in 1usize..4) {
        let expected: Vec<i64> = margins(&p).iter().map(|m| m * k as i64).collect();
        prop_assert_eq!(margins(&scale(&p, k).unwrap()), expected);
    }

    #[test]
    fn a_block_leaves_margins_unchanged(p in profile()) {
        prop_assert_eq!(margins(&add_block(&p).unwrap()), margins(&p));
    }

    #[test]
    fn renaming_alternatives_moves_margins(
        (p, tau) in profile().prop_flat_map(|p| { let n = p.num_alternatives(); (Just(p), permutation(n)) })
    ) {
        let q = permute_alternatives(&p, &tau).unwrap();
        let (g, h) = (margin_graph(&p), margin_graph(&q));
        for a in 0..p.num_alternatives() {
            for b in 0..p.num_alternatives() {
                prop_assert_eq!(h.margin(tau[a], tau[b]), g.margin(a, b));
            }
        }
        let mapped = minimax(&p).map(|a| tau[a]);
        prop_assert_eq!(minimax(&q), mapped);
    }

    #[test]
    fn lifting_last_to_first_adds_two(p in (2usize..=4).prop_flat_map(|n| profile_over(n, BallotKind::Linear, 7))) {
        let n = p.num_alternatives();
        let (voter, ballot) = p.ballots()[0];
        let order = ballot.linear_order(n).unwrap();
        let a = order[n - 1];
        let q = move_last_to_first(&p, voter, a).unwrap();
        let (g, h) = (margin_graph(&p), margin_graph(&q));
        for b in 0..n {
            if b == a {
                continue;
            }
            prop_assert_eq!(h.margin(a, b), g.margin(a, b) + 2);
            for c in 0..n {
                if c != a {
                    prop_assert_eq!(h.margin(b, c), g.margin(b, c));
                }
            }
        }
        prop_assert!(q.ranks_uniquely_first(voter, a).unwrap());
    }

    #[test]
    fn restriction_commutes_with_concat_and_scale(
        ((p, q), keep) in pair().prop_flat_map(|(p, q)| {
            let n = p.num_alternatives();
            (Just((p, q)), subsequence((0..n).collect::<Vec<_>>(), 1..n))
        }),
        k in 1usize..4,
    ) {
        let left = restrict(&concat(&p, &q).unwrap(), &keep).unwrap();
        let right = concat(&restrict(&p, &keep).unwrap(), &restrict(&q, &keep).unwrap()).unwrap();
        prop_assert_eq!(canonical_form(&left), canonical_form(&right));
        let left = restrict(&scale(&p, k).unwrap(), &keep).unwrap();
        let right = scale(&restrict(&p, &keep).unwrap(), k).unwrap();
        prop_assert_eq!(canonical_form(&left), canonical_form(&right));
    }

    #[test]
    fn one_new_voter_moves_each_score_by_at_most_one(
        (p, b) in (3usize..=4).prop_flat_map(|n| {
            let space = ballot_space(n, BallotKind::StrictWeakOrder).unwrap();
            (profile_over(n, BallotKind::StrictWeakOrder, 7), select(space))
        })
    ) {
        let q = add_voter(&p, b).unwrap();
        for a in 0..p.num_alternatives() {
            let delta = minimax_score(&q, a).unwrap() - minimax_score(&p, a).unwrap();
            prop_assert!(delta.abs() <= 1);
            if b.ranks_uniquely_first(p.num_alternatives(), a) {
                prop_assert_eq!(delta, -1);
            }
        }
    }

    #[test]
    fn ordinal_graph_is_scale_invariant(p in profile(), k in 1usize..4) {
        let g: MarginGraph = margin_graph(&p);
        prop_assert_eq!(margin_graph(&scale(&p, k).unwrap()).ordinal(), g.ordinal());
        prop_assert_eq!(margin_graph(&add_block(&p).unwrap()).ordinal(), g.ordinal());
    }

    #[test]
    fn line_format_round_trips(p in profile()) {
        let json = minimax_axioms::io::serialize_profile(&p);
        let back = minimax_axioms::io::parse_profile(&json).unwrap();
        prop_assert_eq!(canonical_form(&back), canonical_form(&p));
        prop_assert_eq!(back, p);
    }
}

#[test]
fn empty_ballot_profile_has_zero_margins() {
    let p = Profile::from_ballots(3, [Ballot::empty(); 4]).unwrap();
    assert!(margins(&p).iter().all(|&m| m == 0));
}
