//! Exhaustive enumerations used as independent references for the analytic
//! formulas: factorial-product minimisation, orbit maximisation over count
//! vectors, coordinatewise array symmetries, and margin-constrained tables.

use super::group::next_permutation;
use num_bigint::BigUint;

/// Minimum of `∏ a!` over all multisets `A` of `t` non-negative integers
/// summing to `s` that meet the forced-extreme constraints `ranks`
/// (`(multiplicity, rank)` pairs, all above `⌈s/t⌉` or all below `⌊s/t⌋`).
///
/// Returns the minimum and every minimising multiset (sorted descending), or
/// `None` when no multiset qualifies.
pub fn min_factorial_product(s: u64, t: u64, ranks: &[(u64, u64)]) -> Option<(BigUint, Vec<Vec<u64>>)> {
    let upper = s.div_ceil(t);
    let mut best: Option<(BigUint, Vec<Vec<u64>>)> = None;
    let mut cur = Vec::with_capacity(t as usize);
    multisets(s, t, s, &mut cur, &mut |a| {
        let mut need = 0;
        for &(m, r) in ranks {
            need += m;
            let have = if r > upper {
                a.iter().filter(|&&x| x >= r).count() as u64
            } else {
                a.iter().filter(|&&x| x <= r).count() as u64
            };
            if have < need {
                return;
            }
        }
        let value = crate::arith::factorial_product(a.iter().copied());
        match &mut best {
            Some((v, list)) if *v == value => list.push(a.to_vec()),
            Some((v, _)) if *v < value => {}
            _ => best = Some((value, vec![a.to_vec()])),
        }
    });
    best
}

/// Calls `f` on every non-increasing sequence of length `t`, sum `s`, entries `<= cap`.
pub fn multisets(s: u64, t: u64, cap: u64, cur: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
    if t == 0 {
        if s == 0 {
            f(cur);
        }
        return;
    }
    let hi = cap.min(s);
    let lo = s.div_ceil(t);
    if lo > hi {
        return;
    }
    for x in (lo..=hi).rev() {
        cur.push(x);
        multisets(s - x, t - 1, x, cur, f);
        cur.pop();
    }
}

/// Largest `∏ C(size, c)` over all count vectors `c` with `c_i <= size_i` and
/// `Σ c_i = r`, enumerating every vector.
pub fn max_orbit_over_count_vectors(sizes: &[u64], r: u64) -> u128 {
    fn rec(sizes: &[u64], r: u64, acc: u128, best: &mut u128) {
        match sizes.split_first() {
            None => {
                if r == 0 {
                    *best = (*best).max(acc);
                }
            }
            Some((&s, rest)) => {
                for c in 0..=s.min(r) {
                    let b = crate::arith::binomial_u128(s, c).expect("small binomial");
                    rec(rest, r - c, acc * b, best);
                }
            }
        }
    }
    let mut best = 0;
    rec(sizes, r, 1, &mut best);
    best
}

/// All permutations of `{0, .., k-1}`.
pub fn all_perms(k: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Number of `t`-tuples of permutations of `[k]` fixing a row-major
/// `k × … × k` array coordinatewise, by trying all `(k!)^t` tuples.
pub fn array_symmetry_order(k: usize, t: usize, entries: &[u32]) -> u64 {
    assert_eq!(entries.len(), k.pow(t as u32));
    let perms = all_perms(k);
    let mut tuple = vec![0usize; t];
    let mut count = 0;
    loop {
        let fixes = (0..entries.len()).all(|idx| {
            let mut rest = idx;
            let mut img = 0;
            let mut coords = vec![0; t];
            for axis in (0..t).rev() {
                coords[axis] = rest % k;
                rest /= k;
            }
            for (axis, &c) in coords.iter().enumerate() {
                img = img * k + perms[tuple[axis]][c];
            }
            entries[img] == entries[idx]
        });
        if fixes {
            count += 1;
        }
        let mut axis = t;
        loop {
            if axis == 0 {
                return count;
            }
            axis -= 1;
            tuple[axis] += 1;
            if tuple[axis] < perms.len() {
                break;
            }
            tuple[axis] = 0;
        }
    }
}

/// Every `k × k` non-negative integer matrix (row-major) whose rows and
/// columns all sum to `l`.
pub fn contingency_tables(k: usize, l: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, l: u32, row: usize, cols: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if row == k - 1 {
            let last: Vec<u32> = cols.iter().map(|&c| l - c).collect();
            if last.iter().sum::<u32>() == l {
                let mut m = cur.clone();
                m.extend(last);
                out.push(m);
            }
            return;
        }
        let mut rows = Vec::new();
        compositions(k, l, 0, &mut vec![0u32; k], &mut |r| {
            if r.iter().zip(cols.iter()).all(|(a, c)| a + c <= l) {
                rows.push(r.to_vec());
            }
        });
        for r in rows {
            for j in 0..k {
                cols[j] += r[j];
            }
            cur.extend_from_slice(&r);
            rec(k, l, row + 1, cols, cur, out);
            cur.truncate(cur.len() - k);
            for j in 0..k {
                cols[j] -= r[j];
            }
        }
    }
    fn compositions(k: usize, left: u32, j: usize, entries: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if j == k - 1 {
            entries[j] = left;
            f(entries);
            return;
        }
        for x in 0..=left {
            entries[j] = x;
            compositions(k, left - x, j + 1, entries, f);
        }
    }
    let mut out = Vec::new();
    if k == 1 {
        return vec![vec![l]];
    }
    rec(k, l, 0, &mut vec![0; k], &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_rank_example() {
        // s = 10, t = 4, one entry of at least 5.
        let (v, mins) = min_factorial_product(10, 4, &[(1, 5)]).unwrap();
        assert_eq!(v, BigUint::from(480u32));
        assert_eq!(mins, vec![vec![5, 2, 2, 1]]);
    }

    #[test]
    fn orbit_maximum() {
        // Cells (2, 4), r = 2: best is one point from each, 2 * 4 = 8 vs C(4,2) = 6.
        assert_eq!(max_orbit_over_count_vectors(&[2, 4], 2), 8);
        assert_eq!(max_orbit_over_count_vectors(&[6], 2), 15);
    }

    #[test]
    fn symmetry_of_flat_array() {
        let flat = vec![2u32; 9];
        assert_eq!(array_symmetry_order(3, 2, &flat), 36);
        assert_eq!(array_symmetry_order(2, 2, &[6, 4, 4, 6]), 2);
        assert_eq!(array_symmetry_order(2, 2, &[5, 5, 5, 5]), 4);
    }

    #[test]
    fn table_counts() {
        // 2x2 tables with margins l are determined by the corner: l + 1 of them.
        assert_eq!(contingency_tables(2, 7).len(), 8);
        // 3x3 tables with margins 1 are the 6 permutation matrices.
        assert_eq!(contingency_tables(3, 1).len(), 6);
    }
}
