// SPDX-License-Identifier: Apache-2.0

use crate::election::{CandidateSet, Election, VoterId};
use crate::error::{Error, Result};

/// Largest electorate [`check_pjr`] will enumerate.
pub const PJR_VOTER_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PjrReport {
    Satisfied,
    /// A group of at least `ell * n / k` voters sharing `ell` approved
    /// candidates, of whose joint approvals fewer than `ell` were elected.
    Violated {
        ell: usize,
        group: Vec<VoterId>,
    },
}

impl PjrReport {
    pub fn holds(&self) -> bool {
        matches!(self, PjrReport::Satisfied)
    }
}

/// Proportional justified representation, checked over every voter group.
///
/// The committee satisfies PJR when, for each `ell` in `1..=k` and every
/// group `N'` with `|N'| >= ell * n / k` and `|∩ A_i| >= ell`, at least `ell`
/// committee members are approved by someone in `N'`. The first violating
/// group in bitmask order is reported, with the smallest failing `ell`.
pub fn check_pjr(election: &Election, committee: &CandidateSet, k: usize) -> Result<PjrReport> {
    let n = election.voter_count();
    if n > PJR_VOTER_LIMIT {
        return Err(Error::CheckerBound {
            checker: "PJR checker",
            unit: "voters",
            bound: PJR_VOTER_LIMIT,
            actual: n,
        });
    }
    if k == 0 {
        return Err(Error::CommitteeSizeOutOfRange {
            k,
            candidate_count: election.candidate_count(),
        });
    }
    let ballots = election.ballots();
    for group in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|v| group & (1 << v) != 0).collect();
        let mut common = ballots[members[0]].clone();
        let mut joint = CandidateSet::new();
        for &v in &members {
            common.retain(|c| ballots[v].contains(c));
            joint.extend(&ballots[v]);
        }
        let represented = joint.intersection(committee).count();
        // Largest ell with |N'| * k >= ell * n.
        let by_size = members.len() * k / n;
        let ell_max = k.min(common.len()).min(by_size);
        if represented < ell_max {
            return Ok(PjrReport::Violated {
                ell: represented + 1,
                group: members.into_iter().map(VoterId).collect(),
            });
        }
    }
    Ok(PjrReport::Satisfied)
}
