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

//! Preference profiles, margin graphs, voting methods and exhaustive
//! searches for axiom violations.

pub mod axioms;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod margin;
pub mod methods;
pub mod profile;
pub mod search;
pub mod transform;

pub use axioms::{AxiomId, AxiomWitness, CheckOptions, Verdict};
pub use error::{Error, Result};
pub use margin::{CycleCase, CycleShape, MarginGraph, OrdinalMarginGraph};
pub use methods::{Domain, FnMethod, MethodId, VotingMethod, WinnerSet};
pub use profile::{Alternative, Ballot, BallotKind, Profile, Voter};
pub use search::{SearchMode, SearchReport, SearchSpec};
pub use transform::{ImproveStep, TransformRecord};
