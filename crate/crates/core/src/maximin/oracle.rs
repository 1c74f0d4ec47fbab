// SPDX-License-Identifier: Apache-2.0

use crate::election::{CandidateId, CandidateSet, Election};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest subset the oracle will enumerate.
pub const ORACLE_SUBSET_LIMIT: usize = 20;

/// A candidate group `K` with `touched_voters / |K|` equal to the maximin
/// support value of the subset it was drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelWitness {
    pub subset: CandidateSet,
    pub touched_voters: usize,
    pub value: Rational,
}

/// Maximin support value by exhaustive enumeration: the minimum over all
/// nonempty `K` of `|{i : A_i ∩ K ≠ ∅}| / |K|`.
///
/// No group can collect more support than the voters touching it, and some
/// group attains the bound, so the minimum is the maximin value. Ties go to
/// the smaller group, then to the lexicographically smaller index sequence.
/// Runs in `O(2^|S| * n)`; refuses subsets above [`ORACLE_SUBSET_LIMIT`].
pub fn maximin_oracle<I>(election: &Election, subset: I) -> Result<KernelWitness>
where
    I: IntoIterator<Item = CandidateId>,
{
    let subset = election.subset(subset)?;
    if subset.len() > ORACLE_SUBSET_LIMIT {
        return Err(Error::CheckerBound {
            checker: "maximin oracle",
            unit: "candidates",
            bound: ORACLE_SUBSET_LIMIT,
            actual: subset.len(),
        });
    }
    let members: Vec<CandidateId> = subset.iter().copied().collect();
    // Bit j of a voter mask is set when the voter approves members[j].
    let voter_masks: Vec<u32> = election
        .ballots()
        .iter()
        .map(|ballot| {
            members
                .iter()
                .enumerate()
                .filter(|(_, c)| ballot.contains(c))
                .fold(0, |mask, (j, _)| mask | (1 << j))
        })
        .filter(|&mask| mask != 0)
        .collect();

    let mut best: Option<(Rational, usize, Vec<CandidateId>, usize)> = None;
    for group in 1u32..(1 << members.len()) {
        let size = group.count_ones() as usize;
        let touched = voter_masks.iter().filter(|&&m| m & group != 0).count();
        let value = Rational::new(touched as u64, size as u64);
        let ids: Vec<CandidateId> = (0..members.len())
            .filter(|j| group & (1 << j) != 0)
            .map(|j| members[j])
            .collect();
        let better = match &best {
            None => true,
            Some((v, s, k, _)) => (value, size, &ids) < (*v, *s, k),
        };
        if better {
            best = Some((value, size, ids, touched));
        }
    }
    let (value, _, ids, touched_voters) = best.expect("subset is nonempty");
    Ok(KernelWitness {
        subset: ids.into_iter().collect(),
        touched_voters,
        value,
    })
}
