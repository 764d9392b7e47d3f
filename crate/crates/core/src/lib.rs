//! Exact computation and verification of greedy bases for the symmetric and
//! alternating groups in their primitive actions on `r`-subsets of `[n]` and on
//! uniform `(k, l)`-partitions of `[kl]`.
//!
//! The crate is split into four layers:
//!
//! * [`subsets`] models pointwise stabilisers of `r`-sets as partitions of
//!   `[n]` into neighbourhood cells and runs the greedy algorithm on them,
//!   including exhaustive enumeration of all greedy runs.
//! * [`partitions`] works with intersection arrays of `(k, l)`-partitions:
//!   realisation, coordinatewise symmetry groups, stabiliser orders, the
//!   factorial-product minimisation bound, minimal arrays and the constructions
//!   that continue a greedy run to a base.
//! * [`oracle`] is brute-force ground truth over explicit permutation groups of
//!   small degree. It never calls into the other two layers.
//! * [`experiments`] wires everything into reproducible reports, used by the
//!   `greedy-bases` command-line tool.

pub mod arith;
pub mod error;
pub mod experiments;
pub mod oracle;
pub mod partitions;
pub mod subsets;

pub use error::{Error, Result};

/// Which of the two groups acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Sym,
    Alt,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Sym => "sym",
            GroupKind::Alt => "alt",
        }
    }
}

impl std::fmt::Display for GroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sym" | "s" => Ok(GroupKind::Sym),
            "alt" | "a" => Ok(GroupKind::Alt),
            other => Err(Error::invalid(format!("unknown group `{other}` (expected sym or alt)"))),
        }
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/subsets.md")]
    mod subsets {}
    #[doc = include_str!("../../../book/src/intersection_arrays.md")]
    mod intersection_arrays {}
    #[doc = include_str!("../../../book/src/minimal_arrays.md")]
    mod minimal_arrays {}
    #[doc = include_str!("../../../book/src/continuation.md")]
    mod continuation {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
