// SPDX-License-Identifier: Apache-2.0

//! The MMS committee rule: starting from an empty committee, repeatedly add
//! the candidate whose addition has the largest maximin support value.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::election::{CandidateId, CandidateSet, Election};
use crate::error::{Error, Result};
use crate::maximin::{maximin_support, MaximinOutcome};
use crate::rational::Rational;

/// The elected committee together with what was decided in each round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommitteeTrace {
    /// Winners in selection order.
    pub winners: Vec<CandidateId>,
    /// `maximin(W ∪ {winner})` at the time each winner was selected.
    pub round_values: Vec<Rational>,
    /// Every candidate attaining the round's best score. The winner is the
    /// smallest of them.
    pub round_ties: Vec<CandidateSet>,
    /// Max-flow problems solved over the whole run.
    pub flow_solves: usize,
}

impl CommitteeTrace {
    pub fn committee(&self) -> CandidateSet {
        self.winners.iter().copied().collect()
    }
}

fn round_outcomes(
    election: &Election,
    committee: &CandidateSet,
) -> Result<BTreeMap<CandidateId, MaximinOutcome>> {
    for &member in committee {
        election.check_candidate(member)?;
    }
    if committee.len() >= election.candidate_count() {
        return Err(Error::CommitteeFull);
    }
    let open: Vec<CandidateId> = election
        .candidates()
        .filter(|c| !committee.contains(c))
        .collect();
    // Each score is independent; the reduction below runs after all finish.
    open.into_par_iter()
        .map(|candidate| {
            let subset = committee.iter().copied().chain([candidate]);
            maximin_support(election, subset).map(|outcome| (candidate, outcome))
        })
        .collect()
}

/// `maximin(committee ∪ {c})` for every candidate `c` outside the committee.
pub fn round_scores(
    election: &Election,
    committee: &CandidateSet,
) -> Result<BTreeMap<CandidateId, Rational>> {
    Ok(round_outcomes(election, committee)?
        .into_iter()
        .map(|(candidate, outcome)| (candidate, outcome.value))
        .collect())
}

/// Elects `k` candidates with the MMS rule. Ties go to the smallest
/// candidate index.
pub fn mms_winners(election: &Election, k: usize) -> Result<CommitteeTrace> {
    if k == 0 || k > election.candidate_count() {
        return Err(Error::CommitteeSizeOutOfRange {
            k,
            candidate_count: election.candidate_count(),
        });
    }
    let mut committee = CandidateSet::new();
    let mut trace = CommitteeTrace {
        winners: Vec::with_capacity(k),
        round_values: Vec::with_capacity(k),
        round_ties: Vec::with_capacity(k),
        flow_solves: 0,
    };
    for _ in 0..k {
        let outcomes = round_outcomes(election, &committee)?;
        trace.flow_solves += outcomes.values().map(|o| o.iterations).sum::<usize>();
        let best = outcomes
            .values()
            .map(|o| o.value)
            .max()
            .expect("at least one open candidate");
        let ties: CandidateSet = outcomes
            .iter()
            .filter(|(_, o)| o.value == best)
            .map(|(&c, _)| c)
            .collect();
        let winner = *ties.first().expect("the best score is attained");
        committee.insert(winner);
        trace.winners.push(winner);
        trace.round_values.push(best);
        trace.round_ties.push(ties);
    }
    Ok(trace)
}
