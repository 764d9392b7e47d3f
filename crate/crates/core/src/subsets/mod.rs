//! Greedy bases for `S_n` and `A_n` acting on `r`-subsets of `[n]`.
//!
//! The pointwise stabiliser in `S_n` of a list of `r`-sets `β_1, …, β_i` is the
//! direct product of the symmetric groups on the classes of points with equal
//! neighbourhood `N(u) = { j : u ∈ β_j }`. [`CellState`] stores exactly those
//! classes, so orbit lengths and stabiliser orders are products of binomials
//! and factorials rather than enumerations of group elements.
//!
//! ```
//! use greedy_bases::subsets::{CellState, RSet};
//! use greedy_bases::GroupKind;
//!
//! let mut state = CellState::new(6, 2).unwrap();
//! state.push(RSet::new(vec![1, 2]).unwrap()).unwrap();
//! assert_eq!(state.shape(), vec![4, 2]);
//! let alpha = RSet::new(vec![1, 3]).unwrap();
//! assert_eq!(state.orbit_size(&alpha).unwrap(), 8u32.into());
//! assert!(!state.is_base(GroupKind::Alt));
//! ```

mod diagnostics;
mod metagreedy;
mod run;
mod search;
mod state;

pub use diagnostics::{check_section2_lemmas, CheckOutcome, GreedyDiagnostics, LemmaReport, StepDiagnostics};
pub use metagreedy::{deterministic_choice, max_orbit_value, meta_greedy_candidates, CountVector};
pub(crate) use metagreedy::orbit_of_counts;
pub use run::{greedy_run, GreedyRun, Policy};
pub use search::{max_greedy_size, successor_shapes, SearchOutcome, DEFAULT_BUDGET};
pub use state::{Cell, CellState};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An `r`-subset of `[n]`, stored as strictly increasing 1-based points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RSet {
    points: Vec<usize>,
}

impl RSet {
    /// Builds a set from points in any order; rejects zero and repeated points.
    pub fn new(mut points: Vec<usize>) -> Result<Self> {
        points.sort_unstable();
        if points.first() == Some(&0) {
            return Err(Error::invalid("points are 1-based"));
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("repeated point in {points:?}")));
        }
        Ok(RSet { points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: usize) -> bool {
        self.points.binary_search(&point).is_ok()
    }

    /// The largest point, or 0 for the empty set.
    pub fn max_point(&self) -> usize {
        self.points.last().copied().unwrap_or(0)
    }
}

impl std::fmt::Display for RSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn validate_nr(n: usize, r: usize) -> Result<()> {
    if r == 0 || r >= n {
        return Err(Error::invalid(format!("need 1 <= r < n, got n = {n}, r = {r}")));
    }
    if n > u16::MAX as usize {
        return Err(Error::invalid(format!("degree {n} too large")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rset_normalises() {
        let a = RSet::new(vec![3, 1]).unwrap();
        assert_eq!(a.points(), &[1, 3]);
        assert_eq!(a.to_string(), "{1,3}");
        assert!(RSet::new(vec![2, 2]).is_err());
        assert!(RSet::new(vec![0, 1]).is_err());
    }
}
