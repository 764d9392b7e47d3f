use super::validate_nr;
use crate::error::{Error, Result};
use crate::GroupKind;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

/// Default cap on the number of distinct stabiliser shapes expanded.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Exact statistics over all greedy runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    /// Largest greedy base size.
    pub max: usize,
    /// Smallest greedy base size.
    pub min: usize,
    /// Number of distinct sequences of stabiliser shapes, saturating.
    pub runs: u128,
    /// Distinct shapes expanded.
    pub states: u64,
}

/// Sorted (descending) sizes of the non-trivial cells.
type Shape = Vec<u16>;

fn cmp_star(a: (u16, u16), b: (u16, u16)) -> Ordering {
    let (a, b) = ((a.0 as u32, a.1 as u32), (b.0 as u32, b.1 as u32));
    ((a.0 - a.1) * (b.1 + 1)).cmp(&((b.0 - b.1) * (a.1 + 1)))
}

/// Every shape reachable in one greedy step from `shape`.
///
/// Largest orbits are exactly the count vectors produced by repeatedly taking
/// a point from a cell maximising `(|C| - taken) / (taken + 1)`, since those
/// factors decrease within each cell. Cells of equal size and equal count are
/// interchangeable, so partial choices are kept as sorted `(size, taken)` lists.
pub fn successor_shapes(n: usize, r: usize, shape: &[u16]) -> Vec<Vec<u16>> {
    let used: usize = shape.iter().map(|&s| s as usize).sum();
    let mut start: Vec<(u16, u16)> = shape.iter().map(|&s| (s, 0)).collect();
    start.extend(std::iter::repeat((1, 0)).take(n - used));
    start.sort_unstable();
    let mut level = BTreeSet::from([start]);
    for _ in 0..r {
        let mut next = BTreeSet::new();
        for partial in &level {
            let open = partial.iter().copied().filter(|&(s, c)| c < s);
            let Some(best) = open.clone().max_by(|&a, &b| cmp_star(a, b)) else { continue };
            let mut tried: Vec<(u16, u16)> = Vec::new();
            for cell in open.filter(|&c| cmp_star(c, best) == Ordering::Equal) {
                if tried.contains(&cell) {
                    continue;
                }
                tried.push(cell);
                let mut v = partial.clone();
                let at = v.iter().position(|&x| x == cell).expect("present");
                v[at].1 += 1;
                v.sort_unstable();
                next.insert(v);
            }
        }
        level = next;
    }
    let shapes: BTreeSet<Shape> = level
        .into_iter()
        .map(|partial| {
            let mut s: Shape = partial.iter().flat_map(|&(s, c)| [c, s - c]).filter(|&x| x > 1).collect();
            s.sort_unstable_by(|a, b| b.cmp(a));
            s
        })
        .collect();
    shapes.into_iter().collect()
}

fn terminal(group: GroupKind, shape: &[u16]) -> bool {
    match group {
        GroupKind::Sym => shape.is_empty(),
        GroupKind::Alt => shape.is_empty() || shape == [2],
    }
}

#[derive(Clone, Copy)]
struct Entry {
    max: usize,
    min: usize,
    runs: u128,
}

struct Search {
    n: usize,
    r: usize,
    group: GroupKind,
    budget: u64,
    nodes: u64,
    best: usize,
    memo: HashMap<Shape, Entry>,
}

impl Search {
    fn visit(&mut self, shape: Shape, depth: usize) -> Option<Entry> {
        if terminal(self.group, &shape) {
            self.best = self.best.max(depth);
            return Some(Entry { max: 0, min: 0, runs: 1 });
        }
        if let Some(&e) = self.memo.get(&shape) {
            self.best = self.best.max(depth + e.max);
            return Some(e);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let mut acc = Entry { max: 0, min: usize::MAX, runs: 0 };
        for next in successor_shapes(self.n, self.r, &shape) {
            let e = self.visit(next, depth + 1)?;
            acc.max = acc.max.max(e.max + 1);
            acc.min = acc.min.min(e.min + 1);
            acc.runs = acc.runs.saturating_add(e.runs);
        }
        self.memo.insert(shape, acc);
        Some(acc)
    }
}

/// Exact greedy base sizes over every greedy run of `group` on `r`-sets of
/// `[n]`.
///
/// Runs are explored up to conjugacy of the current stabiliser, which is fixed
/// by the multiset of its cell sizes. `budget` caps the number of distinct
/// shapes expanded; exhausting it yields [`Error::BudgetExhausted`] carrying
/// the longest complete run seen.
///
/// ```
/// use greedy_bases::subsets::max_greedy_size;
/// use greedy_bases::GroupKind;
///
/// let out = max_greedy_size(5, 1, GroupKind::Sym, 1000).unwrap();
/// assert_eq!((out.max, out.min), (4, 4));
/// ```
pub fn max_greedy_size(n: usize, r: usize, group: GroupKind, budget: u64) -> Result<SearchOutcome> {
    validate_nr(n, r)?;
    let mut search = Search { n, r, group, budget, nodes: 0, best: 0, memo: HashMap::new() };
    let root: Shape = vec![n as u16];
    match search.visit(root, 0) {
        Some(e) => Ok(SearchOutcome { max: e.max, min: e.min, runs: e.runs, states: search.nodes }),
        None => Err(Error::BudgetExhausted { budget, lower_bound: search.best }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn successors_of_full_cell() {
        assert_eq!(successor_shapes(6, 2, &[6]), vec![vec![4, 2]]);
        // Cells 4 and 2: one point from each.
        assert_eq!(successor_shapes(6, 2, &[4, 2]), vec![vec![3]]);
    }

    #[test]
    fn natural_action_sizes() {
        for n in 2..9 {
            let s = max_greedy_size(n, 1, GroupKind::Sym, 1000).unwrap();
            assert_eq!((s.max, s.min), (n - 1, n - 1));
            let a = max_greedy_size(n, 1, GroupKind::Alt, 1000).unwrap();
            assert_eq!((a.max, a.min), (n - 2, n - 2));
        }
    }

    #[test]
    fn budget_is_reported() {
        let err = max_greedy_size(30, 3, GroupKind::Sym, 3).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { budget: 3, .. }));
    }
}
