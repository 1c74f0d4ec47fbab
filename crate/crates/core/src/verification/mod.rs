// SPDX-License-Identifier: Apache-2.0

//! Reference implementations and axiom checkers used to cross-check the MMS
//! engine on small instances.

mod party_list;
mod pjr;
pub mod sampling;

pub use party_list::{
    check_party_list_equivalence, compare_lists, compare_party_list, dhondt, dhondt_allocation,
    party_lists, DhondtAllocation, PartyListComparison, PartyListProfile,
};
pub use pjr::{check_pjr, PjrReport, PJR_VOTER_LIMIT};
