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

//! Each checker against a brute-force restatement of its axiom, over every
//! anonymous three-alternative linear profile with up to five voters. The
//! oracles manipulate plain rankings and never call the library's
//! transformations.

use itertools::Itertools;
use minimax_axioms::axioms::{
    check_block_preservation, check_criterion, check_homogeneity, check_immunity,
    check_positive_involvement, check_wpr,
};
use minimax_axioms::{AxiomId, Ballot, BallotKind, MethodId, Profile, VotingMethod, WinnerSet};

type Order = Vec<usize>;

const METHODS: [MethodId; 11] = [
    MethodId::Minimax,
    MethodId::MinimaxMb,
    MethodId::MinimaxSupport,
    MethodId::BordaMarginal,
    MethodId::CondorcetPlurality,
    MethodId::Trivial,
    MethodId::FixedOrder,
    MethodId::HomogeneityViolator,
    MethodId::BlockViolator,
    MethodId::Bucklin,
    MethodId::Coombs,
];

fn orders(n: usize) -> Vec<Order> {
    (0..n).permutations(n).collect()
}

fn build(n: usize, profile: &[Order]) -> Profile {
    Profile::from_ballots(n, profile.iter().map(|o| Ballot::from_order(o).unwrap())).unwrap()
}

fn eval(m: MethodId, n: usize, profile: &[Order]) -> WinnerSet {
    m.winners(&build(n, profile)).unwrap()
}

/// Keeps the alternatives in `keep`, renumbered by position.
fn restrict(profile: &[Order], keep: &[usize]) -> Vec<Order> {
    profile
        .iter()
        .map(|o| {
            o.iter()
                .filter_map(|a| keep.iter().position(|k| k == a))
                .collect()
        })
        .collect()
}

fn all_profiles(n: usize, max_voters: usize) -> Vec<Vec<Order>> {
    let space = orders(n);
    (1..=max_voters)
        .flat_map(|v| {
            space
                .iter()
                .cloned()
                .combinations_with_replacement(v)
                .collect::<Vec<_>>()
        })
        .collect()
}

fn condorcet_winner(n: usize, profile: &[Order]) -> Option<usize> {
    let beats = |a: usize, b: usize| {
        let pos = |o: &Order, x| o.iter().position(|&y| y == x).unwrap();
        let above = profile.iter().filter(|o| pos(o, a) < pos(o, b)).count();
        2 * above > profile.len()
    };
    (0..n).find(|&a| (0..n).all(|b| b == a || beats(a, b)))
}

fn wpr_fails(m: MethodId, n: usize, p: &[Order]) -> bool {
    let w = eval(m, n, p).to_vec();
    w.into_iter().any(|a| {
        (0..p.len()).any(|i| {
            if p[i][n - 1] != a {
                return false;
            }
            let mut q = p.to_vec();
            let mut lifted = vec![a];
            lifted.extend(p[i][..n - 1].iter().copied());
            q[i] = lifted;
            !eval(m, n, &q).is_singleton_of(a)
        })
    })
}

fn involvement_fails(m: MethodId, n: usize, p: &[Order]) -> bool {
    let w = eval(m, n, p).to_vec();
    w.into_iter().any(|a| {
        orders(n).into_iter().filter(|o| o[0] == a).any(|o| {
            let mut q = p.to_vec();
            q.push(o);
            !eval(m, n, &q).contains(a)
        })
    })
}

fn immunity_fails(m: MethodId, n: usize, p: &[Order], near: bool) -> bool {
    let w = eval(m, n, p);
    (0..n).cartesian_product(0..n).any(|(a, b)| {
        if a == b || w.contains(a) || w.contains(b) {
            return false;
        }
        let rest: Vec<usize> = (0..n).filter(|&x| x != b).collect();
        let without = eval(m, n - 1, &restrict(p, &rest)).map(|i| rest[i]);
        let wins = if near {
            without.is_singleton_of(a)
        } else {
            without.contains(a)
        };
        let pair = eval(m, 2, &restrict(p, &[a, b]));
        wins && pair.is_singleton_of(0)
    })
}

fn homogeneity_fails(m: MethodId, n: usize, p: &[Order]) -> bool {
    let doubled: Vec<Order> = p.iter().chain(p).cloned().collect();
    !eval(m, n, p).is_subset(&eval(m, n, &doubled))
}

fn block_fails(m: MethodId, n: usize, p: &[Order]) -> bool {
    let mut q = p.to_vec();
    q.extend(orders(n));
    !eval(m, n, p).is_subset(&eval(m, n, &q))
}

fn condorcet_fails(m: MethodId, n: usize, p: &[Order]) -> bool {
    condorcet_winner(n, p).is_some_and(|c| !eval(m, n, p).is_singleton_of(c))
}

#[test]
fn checkers_agree_with_brute_force() {
    let n = 3;
    let profiles = all_profiles(n, 5);
    assert_eq!(profiles.len(), 461);
    for m in METHODS {
        let mut disagreements = Vec::new();
        let mut failures = [0usize; 7];
        for p in &profiles {
            let lib = build(n, p);
            let checks = [
                (wpr_fails(m, n, p), check_wpr(&m, &lib).unwrap().is_pass()),
                (
                    involvement_fails(m, n, p),
                    check_positive_involvement(&m, &lib, BallotKind::Linear)
                        .unwrap()
                        .is_pass(),
                ),
                (
                    immunity_fails(m, n, p, false),
                    check_immunity(&m, &lib, false).unwrap().is_pass(),
                ),
                (
                    immunity_fails(m, n, p, true),
                    check_immunity(&m, &lib, true).unwrap().is_pass(),
                ),
                (
                    homogeneity_fails(m, n, p),
                    check_homogeneity(&m, &lib).unwrap().is_pass(),
                ),
                (
                    block_fails(m, n, p),
                    check_block_preservation(&m, &lib).unwrap().is_pass(),
                ),
                (
                    condorcet_fails(m, n, p),
                    check_criterion(&m, &lib, AxiomId::CondorcetConsistency)
                        .unwrap()
                        .is_pass(),
                ),
            ];
            for (i, (oracle_fails, lib_passes)) in checks.into_iter().enumerate() {
                failures[i] += usize::from(oracle_fails);
                if oracle_fails == lib_passes {
                    disagreements.push((i, lib.describe()));
                }
            }
        }
        assert!(
            disagreements.is_empty(),
            "{m}: {:?}",
            &disagreements[..disagreements.len().min(5)]
        );
        if m == MethodId::Minimax {
            assert_eq!(failures, [0; 7], "minimax satisfies every one of these");
        }
    }
}

#[test]
fn oracles_detect_known_failures() {
    // Guards against oracles that never fire.
    let n = 3;
    let profiles = all_profiles(n, 5);
    assert!(profiles.iter().any(|p| wpr_fails(MethodId::Trivial, n, p)));
    assert!(profiles
        .iter()
        .any(|p| condorcet_fails(MethodId::FixedOrder, n, p)));
    assert!(profiles
        .iter()
        .any(|p| block_fails(MethodId::Bucklin, n, p)));
    assert!(profiles
        .iter()
        .any(|p| immunity_fails(MethodId::BordaMarginal, n, p, true)));
}
