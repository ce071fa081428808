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

//! Error type shared by every module of the engine.

use crate::profile::Voter;
use thiserror::Error;

/// Errors raised when an input falls outside the domain of an operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a profile needs at least one alternative")]
    NoAlternatives,
    #[error("a profile needs at least one ballot")]
    NoBallots,
    #[error("at most {max} alternatives are supported, got {got}")]
    TooManyAlternatives { got: usize, max: usize },
    #[error(
        "alternative indices must be contiguous from 0 (found {found} at position {position})"
    )]
    NonContiguousAlternative { position: usize, found: usize },
    #[error("duplicate alternative label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown alternative {0}")]
    UnknownAlternative(String),
    #[error("voter {voter} ranks alternative {alternative} above itself")]
    ReflexivePair { voter: Voter, alternative: usize },
    #[error("duplicate voter id {0}")]
    DuplicateVoter(Voter),
    #[error("unknown voter {0}")]
    UnknownVoter(Voter),
    #[error("voter {voter} submits a {found} ballot where {required} ballots are required")]
    BallotKind {
        voter: Voter,
        found: crate::profile::BallotKind,
        required: crate::profile::BallotKind,
    },
    #[error("alternatives must be distinct")]
    SameAlternative,
    #[error("the two profiles range over different alternatives")]
    AlternativeMismatch,
    #[error("{0}")]
    Domain(String),
    #[error("unsupported size: {0}")]
    Unsupported(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
