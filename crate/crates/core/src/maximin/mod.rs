// SPDX-License-Identifier: Apache-2.0

//! Maximin support values.
//!
//! [`maximin_support`] solves a sequence of integer maximum-flow problems on
//! the scaled support network of `E|_S`. Whenever the flow falls short of
//! `|N_S| * |S|`, some voter could not place all of its support; every
//! candidate that voter approves lies outside the kernel of `S`, so those
//! candidates are dropped and the election is restricted again. Once the flow
//! saturates, the value is `|N_S| / |S|` of the surviving sub-election.

mod network;
mod oracle;

use crate::election::{CandidateId, CandidateSet, Election, VoterId};
use crate::error::{Error, Result};
use crate::maxflow::{max_flow, node_outflow, FlowNetwork, FlowResult};
use crate::rational::Rational;

pub use network::{build_support_network, SupportNetwork, SINK, SOURCE};
pub use oracle::{maximin_oracle, KernelWitness, ORACLE_SUBSET_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximinOutcome {
    pub value: Rational,
    /// The final `S`; it contains every kernel of the input subset.
    pub surviving_candidates: CandidateSet,
    /// The final `N_S`.
    pub surviving_voters: Vec<VoterId>,
    /// Number of max-flow problems solved.
    pub iterations: usize,
    /// Flow value of the last solve, always `|N_S| * |S|` of the survivors.
    pub final_flow_value: u64,
}

/// Observation points inside [`maximin_support_with`], used by audits and
/// tests.
pub trait FlowHook {
    /// Receives each network before it is solved and returns the network to
    /// solve. Any edge reordering is allowed.
    fn prepare(&mut self, network: FlowNetwork) -> FlowNetwork {
        network
    }

    fn inspect(&mut self, _network: &FlowNetwork, _result: &FlowResult) {}
}

impl FlowHook for () {}

/// The maximin support value of `subset` in `election`.
pub fn maximin_support<I>(election: &Election, subset: I) -> Result<MaximinOutcome>
where
    I: IntoIterator<Item = CandidateId>,
{
    maximin_support_with(election, subset, &mut ())
}

pub fn maximin_support_with<I, H>(
    election: &Election,
    subset: I,
    hook: &mut H,
) -> Result<MaximinOutcome>
where
    I: IntoIterator<Item = CandidateId>,
    H: FlowHook + ?Sized,
{
    let mut restriction = election.restrict(subset)?;
    let mut iterations = 0;
    loop {
        iterations += 1;
        let SupportNetwork {
            network,
            voter_nodes,
            ..
        } = build_support_network(&restriction)?;
        let network = hook.prepare(network);
        let flow = max_flow(&network);
        hook.inspect(&network, &flow);

        let candidates = restriction.subset().len() as u64;
        let voters = restriction.active_voter_count() as u64;
        let target = voters
            .checked_mul(candidates)
            .ok_or(Error::CapacityOverflow)?;
        if flow.value >= target {
            return Ok(MaximinOutcome {
                value: Rational::new(voters, candidates),
                surviving_candidates: restriction.subset().clone(),
                surviving_voters: restriction.active_voters().collect(),
                iterations,
                final_flow_value: flow.value,
            });
        }

        let mut dropped = CandidateSet::new();
        for (voter, node) in voter_nodes {
            if node_outflow(&flow, &network, node)? < candidates {
                dropped.extend(&restriction.ballots()[&voter]);
            }
        }
        let remaining: Vec<_> = restriction.subset().difference(&dropped).copied().collect();
        restriction = restriction.restrict(remaining)?;
    }
}
