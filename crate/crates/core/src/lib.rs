// SPDX-License-Identifier: Apache-2.0

//! Exact computation of the maximin support (MMS) rule for approval-based
//! committee elections.
//!
//! Maximin support values are computed with a sequence of integer maximum
//! flow problems ([`maximin::maximin_support`]); no linear programming and no
//! floating point arithmetic are involved. Every value is an exact reduced
//! [`Rational`]. The [`maximin::maximin_oracle`] subset enumeration and the
//! checkers in [`verification`] provide independent cross-checks.

pub mod cli;
pub mod election;
mod error;
pub mod maxflow;
pub mod maximin;
pub mod mms;
mod rational;
pub mod verification;

pub use election::{CandidateId, Election, RestrictedElection, VoterId};
pub use error::{Error, Result};
pub use maximin::{maximin_oracle, maximin_support, KernelWitness, MaximinOutcome};
pub use mms::{mms_winners, round_scores, CommitteeTrace};
pub use rational::Rational;
