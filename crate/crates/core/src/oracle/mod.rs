//! Brute-force ground truth at small degree.
//!
//! Everything here works on explicit permutations and explicit point sets and
//! deliberately shares no code with [`crate::subsets`] or
//! [`crate::partitions`], so that agreement between the two routes means
//! something.

mod backtrack;
pub mod brute;
mod domain;
mod group;
mod perm;
mod search;

pub use backtrack::{partition_stabiliser, partition_stabiliser_order};
pub use domain::{Action, Domain};
pub use group::ExplicitGroup;
pub use perm::Perm;
pub use search::{
    exhaustive_greedy, min_base_size, orbits_on, pointwise_stabiliser, GreedyCensus, OracleCaps,
};
