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

//! Command-line front end: evaluate methods, check axioms on profile files,
//! run counterexample searches and replay witnesses.
//!
//! Exit codes: 0 when everything passes, 1 when a witness is found (or a
//! fixture or replay fails), 2 for unreadable input or bad flags, 3 when a
//! method is not defined on the requested profiles.

use clap::{Args, Parser, Subcommand};
use minimax_axioms::axioms::{check_axiom, check_ordinal_margin_invariance, CheckOptions};
use minimax_axioms::fixtures::{builtin_fixtures, render_table, run_fixtures};
use minimax_axioms::io::{read_profile, WitnessFile};
use minimax_axioms::search::{
    find_violation_parallel, SearchMode, SearchReport, SearchSpec, DEFAULT_RANDOM_BUDGET,
    MAX_EXHAUSTIVE_ALTERNATIVES,
};
use minimax_axioms::{AxiomId, BallotKind, Error, MethodId, VotingMethod};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "minimax-axioms",
    version,
    about = "Voting method axiom checker"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the winners of a profile and the method's scores.
    Winners {
        profile: PathBuf,
        #[arg(long)]
        method: MethodId,
    },
    /// Check one axiom on one profile.
    Check(CheckArgs),
    /// Search a space of profiles for violations of an axiom.
    Search(SearchArgs),
    /// Search for profiles where a method picks a non-Minimax winner.
    VerifyRefinement(RefinementArgs),
    /// Run the built-in worked examples and print a pass/fail table.
    PaperExamples,
    /// Re-derive a saved witness.
    Replay { witness: PathBuf },
}

#[derive(Args)]
struct CheckArgs {
    /// Profile file (JSON or line format).
    #[arg(required_unless_present = "replay")]
    profile: Option<PathBuf>,
    #[arg(long, required_unless_present = "replay")]
    method: Option<MethodId>,
    #[arg(long, required_unless_present = "replay")]
    axiom: Option<AxiomId>,
    /// Second profile for ordinal margin invariance.
    #[arg(long)]
    against: Option<PathBuf>,
    /// Ballots added by the positive involvement check.
    #[arg(long, default_value = "linear", value_parser = parse_ballots)]
    involvement_ballots: BallotKind,
    /// Replay a witness file instead of checking a profile.
    #[arg(long, conflicts_with_all = ["profile", "method", "axiom"])]
    replay: Option<PathBuf>,
    /// Where to write the witness file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long, default_value_t = 3)]
    alternatives: usize,
    #[arg(long, default_value_t = 1)]
    min_voters: usize,
    #[arg(long)]
    max_voters: usize,
    #[arg(long, default_value = "linear", value_parser = parse_ballots)]
    ballots: BallotKind,
    /// Defaults to exhaustive below four alternatives, random otherwise.
    #[arg(long)]
    mode: Option<SearchMode>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Stop after this many witnesses.
    #[arg(long)]
    max_witnesses: Option<usize>,
    /// Where to write the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the first witness as a witness file.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    method: MethodId,
    #[arg(long)]
    axiom: AxiomId,
    #[arg(long, default_value = "linear", value_parser = parse_ballots)]
    involvement_ballots: BallotKind,
    #[command(flatten)]
    space: SpaceArgs,
}

#[derive(Args)]
struct RefinementArgs {
    #[arg(long)]
    method: MethodId,
    #[command(flatten)]
    space: SpaceArgs,
}

fn parse_ballots(s: &str) -> Result<BallotKind, String> {
    match s {
        "linear" => Ok(BallotKind::Linear),
        "swo" | "strict-weak-order" => Ok(BallotKind::StrictWeakOrder),
        "relation" => Ok(BallotKind::Relation),
        other => Err(format!(
            "unknown ballot kind {other:?} (expected linear, swo or relation)"
        )),
    }
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_)
            | Error::BallotKind { .. }
            | Error::Unsupported(_)
            | Error::TooManyAlternatives { .. }
            | Error::AlternativeMismatch => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure {
        code: 2,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn outcome(found: bool) -> u8 {
    u8::from(found)
}

fn winners(profile: &Path, method: MethodId) -> Result<u8, Failure> {
    let p = read_profile(profile)?;
    let set = method.winners(&p)?;
    let labels = p.labels();
    println!("method: {method}");
    println!("winners: {}", set.describe(&labels));
    if let Some((name, scores)) = method.scores(&p) {
        let mut rows: Vec<(&str, i64)> = labels.iter().map(String::as_str).zip(scores).collect();
        rows.sort();
        let rendered: Vec<String> = rows.iter().map(|(l, s)| format!("{l}:{s}")).collect();
        println!("{name}: {}", rendered.join(" "));
    }
    Ok(0)
}

fn replay(path: &Path) -> Result<u8, Failure> {
    let file = WitnessFile::read(path)?;
    let confirmed = file.replay()?;
    print!("{}", file.witness.describe());
    if confirmed {
        println!("replay: confirmed");
        Ok(0)
    } else {
        println!("replay: NOT reproduced");
        Ok(1)
    }
}

fn check(args: CheckArgs) -> Result<u8, Failure> {
    if let Some(path) = &args.replay {
        return replay(path);
    }
    let (Some(path), Some(method), Some(axiom)) = (&args.profile, args.method, args.axiom) else {
        unreachable!("clap enforces the required arguments");
    };
    let p = read_profile(path)?;
    method.domain().check(&p, method.as_str())?;
    let verdict = match (&args.against, axiom) {
        (Some(other), AxiomId::OrdinalMarginInvariance) => {
            let q = read_profile(other)?;
            check_ordinal_margin_invariance(&method, &p, &q)?
        }
        (Some(_), _) => {
            return Err(Failure {
                code: 2,
                message: "--against only applies to ordinal-margin-invariance".into(),
            })
        }
        (None, _) => {
            let options = CheckOptions {
                involvement_kind: args.involvement_ballots,
                ..CheckOptions::default()
            };
            check_axiom(&method, &p, axiom, &options)?
        }
    };
    match verdict.witness() {
        None => {
            println!("{method} {axiom}: pass");
            Ok(0)
        }
        Some(w) => {
            print!("{}", w.describe());
            if let Some(out) = &args.out {
                write_file(out, &WitnessFile::new(w, None).to_json())?;
            }
            println!("{method} {axiom}: witness found");
            Ok(1)
        }
    }
}

fn build_spec(method: MethodId, target: AxiomId, space: &SpaceArgs) -> SearchSpec {
    let mode = space
        .mode
        .unwrap_or(if space.alternatives < MAX_EXHAUSTIVE_ALTERNATIVES {
            SearchMode::Exhaustive
        } else {
            SearchMode::Random
        });
    let mut spec = match mode {
        SearchMode::Exhaustive => {
            SearchSpec::exhaustive(method, target, space.alternatives, space.max_voters)
        }
        SearchMode::Random => SearchSpec::random(
            method,
            target,
            space.alternatives,
            space.max_voters,
            space.seed,
            space.budget.unwrap_or(DEFAULT_RANDOM_BUDGET),
        ),
    };
    spec = spec
        .with_ballots(space.ballots)
        .with_min_voters(space.min_voters);
    spec.seed = space.seed;
    if mode == SearchMode::Exhaustive {
        spec.budget = space.budget;
    }
    if let Some(cap) = space.max_witnesses {
        spec = spec.with_max_witnesses(cap);
    }
    spec
}

fn report(report: &SearchReport, space: &SpaceArgs) -> Result<u8, Failure> {
    if let Some(out) = &space.out {
        write_file(out, &report.to_json())?;
    }
    if let Some(w) = report.witnesses.first() {
        print!("{}", w.describe());
        if let Some(out) = &space.witness_out {
            write_file(
                out,
                &WitnessFile::new(w.clone(), Some(report.spec.clone())).to_json(),
            )?;
        }
    }
    println!("{}", report.summary());
    Ok(outcome(!report.is_clean()))
}

fn search(args: SearchArgs) -> Result<u8, Failure> {
    if args.axiom == AxiomId::RefinesMinimax {
        return Err(Failure {
            code: 2,
            message: "use verify-refinement for refines-minimax".into(),
        });
    }
    let spec = build_spec(args.method, args.axiom, &args.space)
        .with_involvement_kind(args.involvement_ballots);
    let r = find_violation_parallel(&spec, args.space.workers)?;
    report(&r, &args.space)
}

fn verify_refinement(args: RefinementArgs) -> Result<u8, Failure> {
    let spec = build_spec(args.method, AxiomId::RefinesMinimax, &args.space);
    let r = find_violation_parallel(&spec, args.space.workers)?;
    report(&r, &args.space)
}

fn examples() -> Result<u8, Failure> {
    let outcomes = run_fixtures(&builtin_fixtures());
    print!("{}", render_table(&outcomes));
    Ok(outcome(!outcomes.iter().all(|o| o.passed())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Winners { profile, method } => winners(&profile, method),
        Command::Check(args) => check(args),
        Command::Search(args) => search(args),
        Command::VerifyRefinement(args) => verify_refinement(args),
        Command::PaperExamples => examples(),
        Command::Replay { witness } => replay(&witness),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(alternatives: usize, mode: Option<SearchMode>) -> SpaceArgs {
        SpaceArgs {
            alternatives,
            min_voters: 1,
            max_voters: 4,
            ballots: BallotKind::Linear,
            mode,
            seed: 9,
            budget: None,
            workers: 1,
            max_witnesses: None,
            out: None,
            witness_out: None,
        }
    }

    #[test]
    fn ballot_flags() {
        assert_eq!(parse_ballots("swo"), Ok(BallotKind::StrictWeakOrder));
        assert_eq!(parse_ballots("linear"), Ok(BallotKind::Linear));
        assert!(parse_ballots("ranked").is_err());
    }

    #[test]
    fn mode_defaults_follow_the_alternative_count() {
        let spec = build_spec(MethodId::Minimax, AxiomId::Homogeneity, &space(3, None));
        assert_eq!(spec.mode, SearchMode::Exhaustive);
        assert_eq!(spec.budget, None);
        let spec = build_spec(MethodId::Minimax, AxiomId::Homogeneity, &space(4, None));
        assert_eq!(spec.mode, SearchMode::Random);
        assert_eq!(spec.budget, Some(DEFAULT_RANDOM_BUDGET));
        assert_eq!(spec.seed, 9);
        let spec = build_spec(
            MethodId::Minimax,
            AxiomId::Homogeneity,
            &space(4, Some(SearchMode::Exhaustive)),
        );
        assert_eq!(spec.mode, SearchMode::Exhaustive);
    }

    #[test]
    fn error_exit_codes() {
        assert_eq!(Failure::from(Error::Domain("x".into())).code, 3);
        assert_eq!(
            Failure::from(Error::Parse {
                line: 1,
                message: "x".into()
            })
            .code,
            2
        );
        assert_eq!(Failure::from(Error::UnknownAlternative("q".into())).code, 2);
    }
}
