// SPDX-License-Identifier: Apache-2.0

use crate::election::{CandidateId, CandidateSet, Election};
use crate::error::{Error, Result};
use crate::mms::mms_winners;
use crate::rational::Rational;

/// Disjoint parties: every voter of party `p` approves exactly the list of
/// party `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartyListProfile {
    party_sizes: Vec<usize>,
    list_lengths: Option<Vec<usize>>,
}

impl PartyListProfile {
    /// Parties whose lists are as long as the committee, so no party can run
    /// out of candidates.
    pub fn new(party_sizes: Vec<usize>) -> Result<Self> {
        Self::validate(&party_sizes)?;
        Ok(PartyListProfile {
            party_sizes,
            list_lengths: None,
        })
    }

    /// Parties with explicit list lengths. Panics if the two vectors differ
    /// in length.
    pub fn with_list_lengths(party_sizes: Vec<usize>, list_lengths: Vec<usize>) -> Result<Self> {
        assert_eq!(party_sizes.len(), list_lengths.len());
        Self::validate(&party_sizes)?;
        Ok(PartyListProfile {
            party_sizes,
            list_lengths: Some(list_lengths),
        })
    }

    fn validate(party_sizes: &[usize]) -> Result<()> {
        if party_sizes.is_empty() {
            return Err(Error::NoParties);
        }
        match party_sizes.iter().position(|&s| s == 0) {
            Some(party) => Err(Error::EmptyParty(party)),
            None => Ok(()),
        }
    }

    pub fn party_sizes(&self) -> &[usize] {
        &self.party_sizes
    }

    pub fn list_length(&self, party: usize, k: usize) -> usize {
        self.list_lengths
            .as_ref()
            .map_or(k, |lengths| lengths[party])
    }

    /// Candidates are numbered party by party; voters likewise.
    pub fn election(&self, k: usize) -> Result<Election> {
        let mut ballots = Vec::new();
        let mut next = 0;
        for (party, &size) in self.party_sizes.iter().enumerate() {
            let list: Vec<usize> = (next..next + self.list_length(party, k)).collect();
            next += list.len();
            ballots.extend(std::iter::repeat_n(list, size));
        }
        Election::new(next, ballots)
    }

    /// Candidate lists of [`PartyListProfile::election`], party by party.
    pub fn lists(&self, k: usize) -> Vec<CandidateSet> {
        let mut next = 0;
        (0..self.party_sizes.len())
            .map(|party| {
                let len = self.list_length(party, k);
                next += len;
                (next - len..next).map(CandidateId).collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DhondtAllocation {
    pub seats: Vec<usize>,
    /// Whether some award had to choose between parties with equal quotients.
    pub had_tie: bool,
}

/// Highest-averages apportionment: each seat goes to the party maximising
/// `votes / (seats + 1)`, ties to the smallest party index.
pub fn dhondt_allocation(party_sizes: &[usize], k: usize) -> DhondtAllocation {
    let mut seats = vec![0; party_sizes.len()];
    let mut had_tie = false;
    for _ in 0..k {
        let quotients: Vec<Rational> = party_sizes
            .iter()
            .zip(&seats)
            .map(|(&votes, &won)| Rational::new(votes as u64, won as u64 + 1))
            .collect();
        let Some(best) = quotients.iter().max().copied() else {
            break;
        };
        let mut leaders = quotients.iter().enumerate().filter(|(_, &q)| q == best);
        let (winner, _) = leaders.next().expect("maximum is attained");
        had_tie |= leaders.next().is_some();
        seats[winner] += 1;
    }
    DhondtAllocation { seats, had_tie }
}

pub fn dhondt(party_sizes: &[usize], k: usize) -> Vec<usize> {
    dhondt_allocation(party_sizes, k).seats
}

/// MMS and D'Hondt seat counts for one party-list profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartyListComparison {
    pub mms_seats: Vec<usize>,
    pub dhondt_seats: Vec<usize>,
    /// No MMS round had tied candidates from different parties and no
    /// D'Hondt award had tied parties.
    pub tie_free: bool,
}

impl PartyListComparison {
    pub fn agrees(&self) -> bool {
        self.mms_seats == self.dhondt_seats
    }
}

/// Lists of a party-list shaped election: the distinct nonempty ballots,
/// provided they are pairwise disjoint and no ballot is empty. Lists are
/// ordered by their smallest candidate; the second vector counts voters per
/// list.
pub fn party_lists(election: &Election) -> Option<(Vec<CandidateSet>, Vec<usize>)> {
    let mut lists: Vec<(CandidateSet, usize)> = Vec::new();
    for ballot in election.ballots() {
        if ballot.is_empty() {
            return None;
        }
        match lists.iter_mut().find(|(list, _)| !list.is_disjoint(ballot)) {
            Some((list, voters)) if list == ballot => *voters += 1,
            Some(_) => return None,
            None => lists.push((ballot.clone(), 1)),
        }
    }
    if lists.is_empty() {
        return None;
    }
    lists.sort();
    Some(lists.into_iter().unzip())
}

/// Runs MMS on `election` and counts winners per list, against D'Hondt on
/// the list sizes. Winners on no list are not counted.
pub fn compare_lists(
    election: &Election,
    lists: &[CandidateSet],
    party_sizes: &[usize],
    k: usize,
) -> Result<PartyListComparison> {
    let party_of = |c: &CandidateId| lists.iter().position(|list| list.contains(c));
    let trace = mms_winners(election, k)?;
    let mut mms_seats = vec![0; lists.len()];
    for party in trace.winners.iter().filter_map(party_of) {
        mms_seats[party] += 1;
    }
    let mms_tie = trace.round_ties.iter().any(|tied| {
        let mut parties = tied.iter().map(party_of);
        let first = parties.next();
        parties.any(|p| Some(p) != first)
    });
    let dhondt = dhondt_allocation(party_sizes, k);
    Ok(PartyListComparison {
        mms_seats,
        dhondt_seats: dhondt.seats,
        tie_free: !mms_tie && !dhondt.had_tie,
    })
}

pub fn compare_party_list(profile: &PartyListProfile, k: usize) -> Result<PartyListComparison> {
    let election = profile.election(k)?;
    compare_lists(&election, &profile.lists(k), profile.party_sizes(), k)
}

/// Whether MMS on the disjoint-party election awards the D'Hondt seat counts.
pub fn check_party_list_equivalence(profile: &PartyListProfile, k: usize) -> Result<bool> {
    Ok(compare_party_list(profile, k)?.agrees())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dhondt_examples() {
        // Quotients 4, 2, 4/3 against 2, 1.
        assert_eq!(dhondt(&[4, 2], 3), vec![2, 1]);
        assert!(dhondt_allocation(&[4, 2], 3).had_tie);
        assert_eq!(dhondt(&[5], 3), vec![3]);
        assert_eq!(dhondt(&[3, 3], 2), vec![1, 1]);
        // 5, 5/2, 5/3 against 3, 3/2: awards 5, 3, 5/2, 5/3.
        let alloc = dhondt_allocation(&[5, 3], 4);
        assert_eq!(alloc.seats, vec![3, 1]);
        assert!(!alloc.had_tie);
    }

    #[test]
    fn party_list_examples() {
        for (sizes, k) in [(vec![4, 2], 3), (vec![7], 2), (vec![5, 3], 4)] {
            let profile = PartyListProfile::new(sizes.clone()).unwrap();
            let cmp = compare_party_list(&profile, k).unwrap();
            assert!(cmp.agrees(), "{sizes:?} k={k}: {cmp:?}");
            assert!(check_party_list_equivalence(&profile, k).unwrap());
        }
        let cmp = compare_party_list(&PartyListProfile::new(vec![5, 3]).unwrap(), 4).unwrap();
        assert_eq!(cmp.mms_seats, vec![3, 1]);
        assert!(cmp.tie_free);
    }

    #[test]
    fn profile_layout() {
        let profile = PartyListProfile::with_list_lengths(vec![4, 2], vec![3, 2]).unwrap();
        let e = profile.election(3).unwrap();
        assert_eq!(e.candidate_count(), 5);
        assert_eq!(e.voter_count(), 6);
        let lists = profile.lists(3);
        assert_eq!(lists[0], [0, 1, 2].map(CandidateId).into());
        assert_eq!(lists[1], [3, 4].map(CandidateId).into());
        assert_eq!(party_lists(&e), Some((lists, vec![4, 2])));
        assert_eq!(PartyListProfile::new(vec![]).unwrap_err(), Error::NoParties);
        assert_eq!(
            PartyListProfile::new(vec![2, 0]).unwrap_err(),
            Error::EmptyParty(1)
        );
    }

    #[test]
    fn detects_party_list_shape() {
        // Lists are ordered by smallest candidate, whatever the voter order.
        let e = Election::new(4, [vec![3, 1], vec![0], vec![1, 3]]).unwrap();
        let (lists, sizes) = party_lists(&e).unwrap();
        assert_eq!(
            lists,
            vec![[0].map(CandidateId).into(), [1, 3].map(CandidateId).into()]
        );
        assert_eq!(sizes, vec![1, 2]);
        assert_eq!(
            party_lists(&Election::new(3, [vec![0, 1], vec![1, 2]]).unwrap()),
            None
        );
        assert_eq!(
            party_lists(&Election::new(3, [vec![0, 1], vec![1]]).unwrap()),
            None
        );
        assert_eq!(
            party_lists(&Election::new(3, [vec![0], vec![]]).unwrap()),
            None
        );
        assert_eq!(
            party_lists(&Election::new(3, Vec::<Vec<usize>>::new()).unwrap()),
            None
        );
    }

    #[test]
    fn short_lists_can_disagree() {
        // Party 0 deserves both seats but has a single candidate.
        let profile = PartyListProfile::with_list_lengths(vec![9, 1], vec![1, 1]).unwrap();
        let cmp = compare_party_list(&profile, 2).unwrap();
        assert_eq!(cmp.dhondt_seats, vec![2, 0]);
        assert_eq!(cmp.mms_seats, vec![1, 1]);
        assert!(!cmp.agrees());
    }
}
