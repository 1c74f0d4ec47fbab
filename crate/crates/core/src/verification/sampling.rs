// SPDX-License-Identifier: Apache-2.0

//! Seeded random instances for fuzz drivers.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::election::{CandidateId, Election};
use crate::maxflow::FlowNetwork;
use crate::verification::PartyListProfile;

/// An election with `voters` ballots over `candidates` candidates, each
/// approval present independently with probability 1/2.
pub fn random_election<R: Rng + ?Sized>(rng: &mut R, voters: usize, candidates: usize) -> Election {
    let ballots: Vec<Vec<usize>> = (0..voters)
        .map(|_| (0..candidates).filter(|_| rng.gen_ratio(1, 2)).collect())
        .collect();
    Election::new(candidates, ballots).expect("indices are in range")
}

/// A random nonempty subset of `0..candidates`.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, candidates: usize) -> Vec<CandidateId> {
    let mask = rng.gen_range(1u64..(1 << candidates));
    subset_from_mask(mask, candidates)
}

pub fn subset_from_mask(mask: u64, candidates: usize) -> Vec<CandidateId> {
    (0..candidates)
        .filter(|c| mask & (1 << c) != 0)
        .map(CandidateId)
        .collect()
}

/// Every nonempty subset of `0..candidates`, in bitmask order.
pub fn all_subsets(candidates: usize) -> impl Iterator<Item = Vec<CandidateId>> {
    (1u64..(1 << candidates)).map(move |mask| subset_from_mask(mask, candidates))
}

pub fn random_party_list<R: Rng + ?Sized>(
    rng: &mut R,
    max_parties: usize,
    max_size: usize,
) -> PartyListProfile {
    let parties = rng.gen_range(1..=max_parties);
    let sizes = (0..parties).map(|_| rng.gen_range(1..=max_size)).collect();
    PartyListProfile::new(sizes).expect("sizes are positive")
}

/// A random network on `nodes` nodes (source 0, sink `nodes - 1`) with
/// `edges` edges of capacity `1..=max_capacity` and no self-loops.
pub fn random_network<R: Rng + ?Sized>(
    rng: &mut R,
    nodes: usize,
    edges: usize,
    max_capacity: u64,
) -> FlowNetwork {
    let mut network = FlowNetwork::new(nodes, 0, nodes - 1).expect("at least two nodes");
    while network.edges().len() < edges {
        let from = rng.gen_range(0..nodes);
        let to = rng.gen_range(0..nodes);
        if from != to {
            network
                .add_edge(from, to, rng.gen_range(1..=max_capacity))
                .expect("small capacities");
        }
    }
    network
}

/// A uniformly random permutation of `0..len`.
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(rng);
    order
}
