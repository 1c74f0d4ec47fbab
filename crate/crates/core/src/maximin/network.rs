// SPDX-License-Identifier: Apache-2.0

use crate::election::{CandidateId, RestrictedElection, VoterId};
use crate::error::{Error, Result};
use crate::maxflow::FlowNetwork;

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

/// The integer-scaled support network of a restricted election, with the
/// node assigned to every active voter and every candidate.
///
/// Nodes: source, sink, voters ascending, then candidates ascending. Source
/// and voter edges have capacity `|S|`, candidate edges `|N_S|`, so a flow of
/// `|N_S| * |S|` means every candidate can get `|N_S| / |S|` support.
#[derive(Clone, Debug)]
pub struct SupportNetwork {
    pub network: FlowNetwork,
    pub voter_nodes: Vec<(VoterId, usize)>,
    pub candidate_nodes: Vec<(CandidateId, usize)>,
}

pub fn build_support_network(restriction: &RestrictedElection) -> Result<SupportNetwork> {
    let subset = restriction.subset();
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let voters = restriction.active_voter_count();
    let scale = subset.len() as u64;
    let candidate_capacity = voters as u64;

    let voter_nodes: Vec<_> = restriction
        .active_voters()
        .enumerate()
        .map(|(i, voter)| (voter, 2 + i))
        .collect();
    let candidate_nodes: Vec<_> = subset
        .iter()
        .enumerate()
        .map(|(i, &candidate)| (candidate, 2 + voters + i))
        .collect();
    let node_of = |candidate: &CandidateId| {
        let pos = candidate_nodes
            .binary_search_by_key(candidate, |&(c, _)| c)
            .expect("restricted ballots lie within the subset");
        candidate_nodes[pos].1
    };

    let mut network = FlowNetwork::new(2 + voters + subset.len(), SOURCE, SINK)?;
    for &(voter, node) in &voter_nodes {
        network.add_edge(SOURCE, node, scale)?;
        for candidate in &restriction.ballots()[&voter] {
            network.add_edge(node, node_of(candidate), scale)?;
        }
    }
    for &(_, node) in &candidate_nodes {
        network.add_edge(node, SINK, candidate_capacity)?;
    }
    Ok(SupportNetwork {
        network,
        voter_nodes,
        candidate_nodes,
    })
}
