// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an election needs at least one candidate")]
    NoCandidates,
    #[error(
        "ballot index out of range: voter {voter} approves candidate {candidate}, \
         but the election has {candidate_count} candidates"
    )]
    BallotIndexOutOfRange {
        voter: usize,
        candidate: usize,
        candidate_count: usize,
    },
    #[error(
        "candidate {candidate} is out of range (the election has {candidate_count} candidates)"
    )]
    CandidateOutOfRange {
        candidate: usize,
        candidate_count: usize,
    },
    #[error("candidate subset must be nonempty")]
    EmptySubset,
    #[error("candidate {0} is not part of the restricted subset")]
    NotInSubset(usize),

    #[error("node {node} is out of range for a network with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("a flow network needs at least two nodes")]
    TooFewNodes,
    #[error("source and sink must be distinct nodes")]
    SourceIsSink,
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("total capacity leaving the source exceeds the supported integer width")]
    CapacityOverflow,

    #[error("committee size {k} is out of range 1..={candidate_count}")]
    CommitteeSizeOutOfRange { k: usize, candidate_count: usize },
    #[error("the committee already contains every candidate")]
    CommitteeFull,

    #[error("{checker} is limited to {bound} {unit}, instance has {actual}")]
    CheckerBound {
        checker: &'static str,
        unit: &'static str,
        bound: usize,
        actual: usize,
    },
    #[error("a party-list profile needs at least one party")]
    NoParties,
    #[error("party {0} has no voters")]
    EmptyParty(usize),
}
