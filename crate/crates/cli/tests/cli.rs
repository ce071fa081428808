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

//! End-to-end runs of the binary: outputs, written files and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minimax-axioms"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("the binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SUPPORT_EXAMPLE: &str = "8: b>c>a\n6: a>b=c\n4: c>a>b\n";
const PLURALITY_EXAMPLE: &str = "4: a>b>c\n4: b>c>a\n3: c>a>b\n2: c>b>a\n";

#[test]
fn winners_prints_sorted_scores() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", SUPPORT_EXAMPLE);
    let o = run(&["winners", s(&p), "--method", "minimax"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "method: minimax\nwinners: {b}\nminimax: a:6 b:2 c:4\n"
    );
    let o = run(&["winners", s(&p), "--method", "minimax-support"]);
    assert!(stdout(&o).contains("winners: {c}"));
    let q = write(&dir, "q.txt", PLURALITY_EXAMPLE);
    let o = run(&["winners", s(&q), "--method", "condorcet-plurality"]);
    assert!(stdout(&o).contains("winners: {c}"));
}

#[test]
fn winners_reads_json_profiles() {
    let dir = TempDir::new().unwrap();
    let json = r#"{"version": 1, "alternatives": ["z", "y"], "ballots": [{"count": 2, "ranking": [["y"], ["z"]]}]}"#;
    let p = write(&dir, "p.json", json);
    let o = run(&["winners", s(&p), "--method", "majority"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("winners: {y}"));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "x: a>b\n");
    assert_eq!(
        run(&["winners", s(&bad), "--method", "minimax"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["winners", "/nonexistent", "--method", "minimax"])
            .status
            .code(),
        Some(2)
    );
    let p = write(&dir, "p.txt", SUPPORT_EXAMPLE);
    assert_eq!(
        run(&["winners", s(&p), "--method", "plurality"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["search", "--method", "minimax"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["winners", s(&p), "--method", "kemeny"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["winners", s(&p), "--method", "majority"])
            .status
            .code(),
        Some(3)
    );
    let o = run(&[
        "search",
        "--method",
        "kemeny",
        "--axiom",
        "homogeneity",
        "--ballots",
        "swo",
        "--max-voters",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn check_writes_a_replayable_witness() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", PLURALITY_EXAMPLE);
    let w = dir.path().join("w.json");
    let o = run(&[
        "check",
        s(&p),
        "--method",
        "condorcet-plurality",
        "--axiom",
        "positive-involvement",
        "--out",
        s(&w),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness found"));
    let o = run(&["replay", s(&w)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("replay: confirmed\n"));
    assert_eq!(run(&["check", "--replay", s(&w)]).status.code(), Some(0));

    // A tampered witness no longer replays.
    let text = std::fs::read_to_string(&w)
        .unwrap()
        .replace("condorcet-plurality", "minimax");
    let forged = write(&dir, "forged.json", &text);
    assert_eq!(run(&["replay", s(&forged)]).status.code(), Some(1));

    let o = run(&[
        "check",
        s(&p),
        "--method",
        "minimax",
        "--axiom",
        "positive-involvement",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "minimax positive-involvement: pass\n");
}

#[test]
fn check_ordinal_invariance_against_a_second_profile() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "2: a>b>c\n1: b>c>a\n");
    let q = write(&dir, "q.txt", "4: a>b>c\n2: b>c>a\n");
    let args = [
        "check",
        s(&p),
        "--method",
        "minimax",
        "--axiom",
        "ordinal-margin-invariance",
        "--against",
        s(&q),
    ];
    assert_eq!(run(&args).status.code(), Some(0));
    let args = [
        "check",
        s(&p),
        "--method",
        "minimax",
        "--axiom",
        "homogeneity",
        "--against",
        s(&q),
    ];
    assert_eq!(run(&args).status.code(), Some(2));
}

#[test]
fn verify_refinement_for_minimax_mb_is_clean() {
    let o = run(&[
        "verify-refinement",
        "--method",
        "minimax-mb",
        "--alternatives",
        "3",
        "--max-voters",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1715 profiles examined, 0 witnesses, exhausted=true"));
}

#[test]
fn search_reports_and_witness_files() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("r.json");
    let witness = dir.path().join("w.json");
    let o = run(&[
        "search",
        "--method",
        "trivial",
        "--axiom",
        "weak-positive-responsiveness",
        "--max-voters",
        "2",
        "--out",
        s(&report),
        "--witness-out",
        s(&witness),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let json = std::fs::read_to_string(&report).unwrap();
    assert!(json.contains("\"profiles_examined\": 27"));
    assert_eq!(run(&["replay", s(&witness)]).status.code(), Some(0));

    let o = run(&[
        "search",
        "--method",
        "minimax",
        "--axiom",
        "homogeneity",
        "--max-voters",
        "4",
        "--workers",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn random_search_output_is_reproducible() {
    let args = [
        "search",
        "--method",
        "condorcet-plurality",
        "--axiom",
        "positive-involvement",
        "--mode",
        "random",
        "--max-voters",
        "13",
        "--seed",
        "5",
        "--budget",
        "300",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn examples_command_is_deterministic() {
    let a = run(&["paper-examples"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("12/12 fixtures match"));
    assert_eq!(run(&["paper-examples"]).stdout, a.stdout);
}
