// SPDX-License-Identifier: Apache-2.0

//! Approval elections and their restriction to candidate subsets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Zero-based candidate index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub usize);

/// Zero-based voter index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VoterId(pub usize);

impl CandidateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl VoterId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

impl fmt::Display for VoterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

pub type CandidateSet = BTreeSet<CandidateId>;

/// An approval election: a number of candidates and one approval set per
/// voter. Empty ballots are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    candidate_count: usize,
    ballots: Vec<CandidateSet>,
}

impl Election {
    /// Validates and builds an election. Repeated approvals inside one ballot
    /// collapse.
    pub fn new<B, I>(candidate_count: usize, ballots: B) -> Result<Self>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        if candidate_count == 0 {
            return Err(Error::NoCandidates);
        }
        let ballots = ballots
            .into_iter()
            .enumerate()
            .map(|(voter, ballot)| {
                ballot
                    .into_iter()
                    .map(|candidate| {
                        if candidate < candidate_count {
                            Ok(CandidateId(candidate))
                        } else {
                            Err(Error::BallotIndexOutOfRange {
                                voter,
                                candidate,
                                candidate_count,
                            })
                        }
                    })
                    .collect::<Result<CandidateSet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Election {
            candidate_count,
            ballots,
        })
    }

    pub fn candidate_count(&self) -> usize {
        self.candidate_count
    }

    pub fn voter_count(&self) -> usize {
        self.ballots.len()
    }

    pub fn ballots(&self) -> &[CandidateSet] {
        &self.ballots
    }

    pub fn ballot(&self, voter: VoterId) -> &CandidateSet {
        &self.ballots[voter.0]
    }

    pub fn candidates(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.candidate_count).map(CandidateId)
    }

    /// Number of voters approving at least one candidate of `group`.
    pub fn touching_voters(&self, group: &CandidateSet) -> usize {
        self.ballots
            .iter()
            .filter(|ballot| !ballot.is_disjoint(group))
            .count()
    }

    pub(crate) fn check_candidate(&self, candidate: CandidateId) -> Result<()> {
        if candidate.0 < self.candidate_count {
            Ok(())
        } else {
            Err(Error::CandidateOutOfRange {
                candidate: candidate.0,
                candidate_count: self.candidate_count,
            })
        }
    }

    /// Validates a candidate subset given by arbitrary iteration.
    pub(crate) fn subset<I>(&self, subset: I) -> Result<CandidateSet>
    where
        I: IntoIterator<Item = CandidateId>,
    {
        let subset = subset
            .into_iter()
            .map(|c| self.check_candidate(c).map(|()| c))
            .collect::<Result<CandidateSet>>()?;
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(subset)
    }

    /// The sub-election on `subset`: only voters approving some candidate
    /// of `subset` remain, with their ballots cut down to `subset`.
    pub fn restrict<I>(&self, subset: I) -> Result<RestrictedElection>
    where
        I: IntoIterator<Item = CandidateId>,
    {
        let subset = self.subset(subset)?;
        let ballots = self
            .ballots
            .iter()
            .enumerate()
            .filter_map(|(voter, ballot)| {
                let cut: CandidateSet = ballot.intersection(&subset).copied().collect();
                (!cut.is_empty()).then_some((VoterId(voter), cut))
            })
            .collect();
        Ok(RestrictedElection { subset, ballots })
    }
}

/// An election restricted to a candidate subset `S`. Voters and candidates
/// keep their original indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedElection {
    subset: CandidateSet,
    // Every value is nonempty and contained in `subset`.
    ballots: BTreeMap<VoterId, CandidateSet>,
}

impl RestrictedElection {
    pub fn subset(&self) -> &CandidateSet {
        &self.subset
    }

    pub fn active_voters(&self) -> impl ExactSizeIterator<Item = VoterId> + '_ {
        self.ballots.keys().copied()
    }

    pub fn active_voter_count(&self) -> usize {
        self.ballots.len()
    }

    pub fn ballots(&self) -> &BTreeMap<VoterId, CandidateSet> {
        &self.ballots
    }

    /// The restricted ballot of an active voter.
    pub fn ballot(&self, voter: VoterId) -> Option<&CandidateSet> {
        self.ballots.get(&voter)
    }

    /// Restricts further to `subset`, which must be a nonempty subset of the
    /// current one.
    pub fn restrict<I>(&self, subset: I) -> Result<RestrictedElection>
    where
        I: IntoIterator<Item = CandidateId>,
    {
        let subset: CandidateSet = subset.into_iter().collect();
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(outside) = subset.difference(&self.subset).next() {
            return Err(Error::NotInSubset(outside.0));
        }
        let ballots = self
            .ballots
            .iter()
            .filter_map(|(&voter, ballot)| {
                let cut: CandidateSet = ballot.intersection(&subset).copied().collect();
                (!cut.is_empty()).then_some((voter, cut))
            })
            .collect();
        Ok(RestrictedElection { subset, ballots })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ids(v: &[usize]) -> Vec<CandidateId> {
        v.iter().copied().map(CandidateId).collect()
    }

    #[test]
    fn builds_valid_elections() {
        let e = Election::new(2, [vec![0], vec![1], vec![0]]).unwrap();
        assert_eq!(e.voter_count(), 3);
        assert_eq!(e.candidate_count(), 2);

        let e = Election::new(1, [Vec::<usize>::new()]).unwrap();
        assert_eq!(e.voter_count(), 1);
        assert!(e.ballot(VoterId(0)).is_empty());
    }

    #[test]
    fn duplicate_approvals_collapse() {
        let e = Election::new(3, [vec![2, 0, 2, 2]]).unwrap();
        assert_eq!(e.ballot(VoterId(0)), &ids(&[0, 2]).into_iter().collect());
    }

    #[test]
    fn rejects_out_of_range_ballot() {
        let err = Election::new(2, [vec![0, 2]]).unwrap_err();
        assert_eq!(
            err,
            Error::BallotIndexOutOfRange {
                voter: 0,
                candidate: 2,
                candidate_count: 2
            }
        );
        assert!(err.to_string().contains("ballot index out of range"));
        assert_eq!(
            Election::new(0, Vec::<Vec<usize>>::new()).unwrap_err(),
            Error::NoCandidates
        );
    }

    #[test]
    fn restriction_keeps_touching_voters() {
        // a = 0, b = 1
        let e = Election::new(2, [vec![0], vec![0], vec![1]]).unwrap();
        let r = e.restrict(ids(&[1])).unwrap();
        assert_eq!(r.active_voters().collect::<Vec<_>>(), vec![VoterId(2)]);
        assert_eq!(
            r.ballot(VoterId(2)).unwrap(),
            &ids(&[1]).into_iter().collect()
        );

        let e = Election::new(2, [vec![0, 1], vec![1]]).unwrap();
        let r = e.restrict(ids(&[0])).unwrap();
        assert_eq!(r.active_voters().collect::<Vec<_>>(), vec![VoterId(0)]);
        assert_eq!(
            r.ballot(VoterId(0)).unwrap(),
            &ids(&[0]).into_iter().collect()
        );
    }

    #[test]
    fn restriction_of_empty_ballot_has_no_voters() {
        let e = Election::new(1, [Vec::<usize>::new()]).unwrap();
        let r = e.restrict(ids(&[0])).unwrap();
        assert_eq!(r.active_voter_count(), 0);
        assert!(r.ballots().is_empty());
    }

    #[test]
    fn restriction_errors() {
        let e = Election::new(2, [vec![0]]).unwrap();
        assert_eq!(e.restrict(ids(&[])).unwrap_err(), Error::EmptySubset);
        assert!(matches!(
            e.restrict(ids(&[5])).unwrap_err(),
            Error::CandidateOutOfRange { candidate: 5, .. }
        ));
        let r = e.restrict(ids(&[0])).unwrap();
        assert_eq!(r.restrict(ids(&[1])).unwrap_err(), Error::NotInSubset(1));
        assert_eq!(r.restrict(ids(&[])).unwrap_err(), Error::EmptySubset);
    }

    fn election_strategy() -> impl Strategy<Value = Election> {
        (1usize..7).prop_flat_map(|m| {
            prop::collection::vec(prop::collection::btree_set(0..m, 0..=m), 0..10)
                .prop_map(move |ballots| Election::new(m, ballots).unwrap())
        })
    }

    proptest! {
        #[test]
        fn restriction_properties(e in election_strategy(), mask in 1u32..64) {
            let m = e.candidate_count();
            let full = e.restrict(e.candidates()).unwrap();
            let nonempty: Vec<_> = (0..e.voter_count())
                .filter(|&v| !e.ballots()[v].is_empty())
                .map(VoterId)
                .collect();
            prop_assert_eq!(full.active_voters().collect::<Vec<_>>(), nonempty);

            let subset: Vec<_> = (0..m).filter(|c| mask & (1 << c) != 0).map(CandidateId).collect();
            prop_assume!(!subset.is_empty());
            let r = e.restrict(subset.iter().copied()).unwrap();
            prop_assert!(r.active_voter_count() <= e.voter_count());
            for (voter, ballot) in r.ballots() {
                prop_assert!(!ballot.is_empty());
                prop_assert!(ballot.is_subset(r.subset()));
                let expected: CandidateSet = e.ballot(*voter).intersection(r.subset()).copied().collect();
                prop_assert_eq!(ballot, &expected);
            }
            for v in 0..e.voter_count() {
                let touches = e.ballots()[v].iter().any(|c| r.subset().contains(c));
                prop_assert_eq!(touches, r.ballot(VoterId(v)).is_some());
            }
            // Idempotent.
            prop_assert_eq!(r.restrict(subset.iter().copied()).unwrap(), r.clone());
            // Restricting in two steps equals restricting directly.
            let first = *r.subset().iter().next().unwrap();
            prop_assert_eq!(r.restrict([first]).unwrap(), e.restrict([first]).unwrap());
        }
    }
}
