use super::{CellState, RSet};
use crate::arith::binomial;
use num_bigint::BigUint;
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// Number of points taken from each cell, indexed like [`CellState::cells`].
pub type CountVector = Vec<usize>;

/// Compares `(size - taken) / (taken + 1)` between two cells.
fn cmp_star(a: (usize, usize), b: (usize, usize)) -> Ordering {
    ((a.0 - a.1) * (b.1 + 1)).cmp(&((b.0 - b.1) * (a.1 + 1)))
}

fn star_is_one(cell: (usize, usize)) -> bool {
    cell.0 - cell.1 == cell.1 + 1
}

/// Cells from which the next point may be drawn, given counts taken so far.
fn admissible(state: &CellState, taken: &[usize]) -> Vec<usize> {
    let cells = state.cells();
    let open: Vec<usize> = (0..cells.len()).filter(|&c| taken[c] < cells[c].size).collect();
    let key = |c: usize| (cells[c].size, taken[c]);
    let Some(best) = open.iter().copied().max_by(|&a, &b| cmp_star(key(a), key(b))) else {
        return Vec::new();
    };
    let mut top: Vec<usize> = open.into_iter().filter(|&c| cmp_star(key(c), key(best)) == Ordering::Equal).collect();
    if star_is_one(key(best)) {
        let smallest = top.iter().map(|&c| cells[c].signature.len()).min().unwrap_or(0);
        top.retain(|&c| cells[c].signature.len() == smallest);
    }
    top
}

/// Every count vector some run of the star-maximising point selection can
/// produce, in increasing lexicographic order.
pub fn meta_greedy_candidates(state: &CellState) -> Vec<CountVector> {
    let mut level: BTreeSet<CountVector> = BTreeSet::new();
    level.insert(vec![0; state.cells().len()]);
    for _ in 0..state.r() {
        let mut next = BTreeSet::new();
        for taken in &level {
            for c in admissible(state, taken) {
                let mut v = taken.clone();
                v[c] += 1;
                next.insert(v);
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// The reproducible choice: each point comes from the admissible cell with the
/// smallest signature (shortest first when the star value is 1).
pub fn deterministic_choice(state: &CellState) -> CountVector {
    let mut taken = vec![0; state.cells().len()];
    for _ in 0..state.r() {
        let c = admissible(state, &taken)[0];
        taken[c] += 1;
    }
    taken
}

/// The largest orbit length `∏ C(|C|, c_C)` over all count vectors.
pub fn max_orbit_value(state: &CellState) -> BigUint {
    orbit_of_counts(state, &deterministic_choice(state))
}

pub(crate) fn orbit_of_counts(state: &CellState, counts: &[usize]) -> BigUint {
    state.cells().iter().zip(counts).map(|(c, &k)| binomial(c.size as u64, k as u64)).product()
}

/// The set taking the smallest `counts[c]` points of every cell `c`.
pub(crate) fn realise(state: &CellState, counts: &[usize]) -> RSet {
    let points = state.cells().iter().zip(counts).flat_map(|(c, &k)| c.points[..k].iter().copied()).collect();
    RSet::new(points).expect("cells are disjoint")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute::max_orbit_over_count_vectors;

    fn set(points: &[usize]) -> RSet {
        RSet::new(points.to_vec()).unwrap()
    }

    #[test]
    fn single_cell() {
        let s = CellState::new(9, 3).unwrap();
        assert_eq!(meta_greedy_candidates(&s), vec![vec![3]]);
        assert_eq!(deterministic_choice(&s), vec![3]);
    }

    #[test]
    fn two_cells() {
        // Cells: {3,4,5,6} (signature {}) and {1,2} (signature {1}).
        let s = CellState::from_chosen(6, 2, [set(&[1, 2])]).unwrap();
        assert_eq!(s.cells()[0].size, 4);
        let cands = meta_greedy_candidates(&s);
        // 4/1 first; then 3/2 against 2/1: the second point comes from {1,2}.
        assert_eq!(cands, vec![vec![1, 1]]);
        let sizes: Vec<u64> = s.cells().iter().map(|c| c.size as u64).collect();
        assert_eq!(max_orbit_value(&s), max_orbit_over_count_vectors(&sizes, 2).into());
    }

    #[test]
    fn tie_rule_prefers_small_neighbourhoods() {
        // After {1,2},{1,3},{2,3} on n = 5 the first point comes from {4,5};
        // the second from a singleton, since taking 5 as well gives orbit 1.
        let s = CellState::from_chosen(5, 2, [set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]).unwrap();
        for cand in meta_greedy_candidates(&s) {
            let alpha = realise(&s, &cand);
            assert_eq!(s.orbit_size(&alpha).unwrap(), max_orbit_value(&s));
        }
        let alpha = realise(&s, &deterministic_choice(&s));
        assert_eq!(alpha, set(&[1, 4]));
        assert_eq!(meta_greedy_candidates(&s).len(), 3);
    }
}
