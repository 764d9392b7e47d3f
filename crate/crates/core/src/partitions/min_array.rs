use super::symmetry::{array_symmetries, entry_factorials, theta};
use super::{min_factorial_product, IntersectionTensor, MultiplicitySeq};
use crate::arith::ln_factorial;
use crate::error::{Error, Result};
use crate::oracle::brute::all_perms;
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::BTreeMap;

/// One `~`-class of minimisers: arrays with the same entry multiset and the
/// same `|K_A|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrayClass {
    pub star: Vec<u32>,
    pub k_order: u64,
    pub stab_order: BigUint,
    /// Lexicographically least member under row and column permutations.
    pub representative: IntersectionTensor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinArrayResult {
    pub k: usize,
    pub l: u32,
    /// Minimisers up to `~`, sorted by representative.
    pub classes: Vec<ArrayClass>,
    /// False when the node budget ran out: `classes` is then best-so-far.
    pub complete: bool,
    /// Entries were searched in `[q - c, q + c]`, `q = ⌊l/k⌋`.
    pub window: u32,
    pub nodes: u64,
}

impl MinArrayResult {
    pub fn min_order(&self) -> Option<&BigUint> {
        self.classes.first().map(|c| &c.stab_order)
    }
}

/// Least row-major form over all row permutations, columns sorted as vectors.
pub fn canonical_representative(a: &IntersectionTensor) -> IntersectionTensor {
    let k = a.k();
    let rows = a.rows();
    let mut best: Option<Vec<u32>> = None;
    for perm in all_perms(k) {
        let mut cols: Vec<Vec<u32>> = (0..k).map(|j| perm.iter().map(|&i| rows[i][j]).collect()).collect();
        cols.sort();
        let flat: Vec<u32> = (0..k * k).map(|idx| cols[idx % k][idx / k]).collect();
        if best.as_ref().is_none_or(|b| flat < *b) {
            best = Some(flat);
        }
    }
    IntersectionTensor::new(k, 2, best.expect("k >= 1")).expect("square")
}

/// `ln ∏ a!` for the flattest split of `sum` into `parts` non-negative parts.
fn flat_ln(sum: u32, parts: u32) -> f64 {
    if parts == 0 {
        return if sum == 0 { 0.0 } else { f64::INFINITY };
    }
    let (lo, b) = (sum / parts, sum % parts);
    b as f64 * ln_factorial(lo as u64 + 1) + (parts - b) as f64 * ln_factorial(lo as u64)
}

struct Search {
    k: usize,
    l: u32,
    lo: u32,
    hi: u32,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    best: BigUint,
    best_ln: f64,
    found: BTreeMap<(Vec<u32>, u64), ArrayClass>,
    rows: Vec<u32>,
    col: Vec<u32>,
}

const SLACK: f64 = 1e-7;

impl Search {
    fn fill(&mut self, row: usize, j: usize, prefix_ln: f64, bound: f64, tight: bool, left: u32) {
        if self.exhausted {
            return;
        }
        let k = self.k;
        if j == k {
            if row + 1 == k {
                self.leaf();
            } else {
                self.fill(row + 1, 0, prefix_ln, bound, true, self.l);
            }
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let rows_after = (k - row - 1) as u32;
        let rows_here = rows_after + 1;
        let cap = if tight && row > 0 { self.rows[(row - 1) * k + j] } else { self.hi };
        let need = self.l - self.col[j];
        let cols_after = (k - j - 1) as u32;
        let old = flat_ln(need, rows_here);
        for x in (self.lo..=cap.min(left).min(need)).rev() {
            let rest = left - x;
            if rest < cols_after * self.lo || rest > cols_after * self.hi {
                continue;
            }
            let after = need - x;
            if after < rows_after * self.lo || after > rows_after * self.hi {
                continue;
            }
            let fx = ln_factorial(x as u64);
            let new_bound = bound - old + fx + flat_ln(after, rows_after);
            if new_bound > self.best_ln + SLACK {
                continue;
            }
            self.rows[row * k + j] = x;
            self.col[j] += x;
            self.fill(row, j + 1, prefix_ln + fx, new_bound, tight && x == cap, rest);
            self.col[j] -= x;
        }
    }

    fn leaf(&mut self) {
        let a = IntersectionTensor::new(self.k, 2, self.rows.clone()).expect("square");
        let prod = entry_factorials(&a);
        if prod > self.best {
            return;
        }
        let sym = array_symmetries(&a).expect("guarded by caller").order;
        let stab = prod * BigUint::from(sym);
        if stab > self.best {
            return;
        }
        if stab < self.best {
            self.best_ln = ln_big(&stab);
            self.best = stab.clone();
            self.found.clear();
        }
        let key = (a.star(), sym);
        let rep = canonical_representative(&a);
        match self.found.get_mut(&key) {
            Some(class) if class.representative <= rep => {}
            Some(class) => class.representative = rep,
            None => {
                self.found.insert(key.clone(), ArrayClass { star: key.0, k_order: sym, stab_order: stab, representative: rep });
            }
        }
    }
}

fn ln_big(x: &BigUint) -> f64 {
    crate::arith::log2_big(x) * std::f64::consts::LN_2
}

/// Every `k × k` intersection array with margins `l` of least stabiliser
/// order `|K_A| ∏ a!`, up to `~`.
///
/// Branch and bound over rows in lexicographically non-increasing order, with
/// entries confined to a window around `l/k`; the flattest completion of every
/// column bounds each partial array from below. A window is accepted once the
/// factorial-product minimum for arrays with one entry outside it exceeds the
/// best order found, and widened otherwise.
pub fn min_2array(k: usize, l: u32, budget: u64) -> Result<MinArrayResult> {
    if !(2..=7).contains(&k) || l == 0 {
        return Err(Error::invalid(format!("min_2array needs 2 <= k <= 7 and l >= 1, got k = {k}, l = {l}")));
    }
    let q = l / k as u32;
    let mut seed_v = vec![q; k];
    for v in seed_v.iter_mut().take((l % k as u32) as usize) {
        *v += 1;
    }
    let seed = super::symmetry::stab_order(&theta(&seed_v))?;
    let mut c = 3u32;
    let mut nodes = 0;
    loop {
        let (lo, hi) = (q.saturating_sub(c), (q + c).min(l));
        let mut search = Search {
            k,
            l,
            lo,
            hi,
            budget: budget.saturating_sub(nodes),
            nodes: 0,
            exhausted: false,
            best_ln: ln_big(&seed),
            best: seed.clone(),
            found: BTreeMap::new(),
            rows: vec![0; k * k],
            col: vec![0; k],
        };
        let start = flat_ln(l, k as u32) * k as f64;
        search.fill(0, 0, 0.0, start, true, l);
        nodes += search.nodes;
        let mut classes: Vec<ArrayClass> = search.found.into_values().collect();
        classes.sort_by(|a, b| a.representative.cmp(&b.representative));
        if search.exhausted {
            return Ok(MinArrayResult { k, l, classes, complete: false, window: c, nodes });
        }
        if window_certified(k, l, lo, hi, &search.best)? {
            return Ok(MinArrayResult { k, l, classes, complete: true, window: c, nodes });
        }
        c += 1;
    }
}

fn window_certified(k: usize, l: u32, lo: u32, hi: u32, best: &BigUint) -> Result<bool> {
    let (s, t) = ((k as u64) * l as u64, (k * k) as u64);
    let beats = |rank: u64| -> Result<bool> {
        let x = MultiplicitySeq::new(s, t, vec![(1, rank)])?;
        Ok(min_factorial_product(&x)?.0 > *best)
    };
    let upper = hi >= l || beats(hi as u64 + 1)?;
    let lower = lo == 0 || beats(lo as u64 - 1)?;
    Ok(upper && lower)
}

/// Minimisers of `|K_W| ∏ w!` over all 3-arrays `W` arising from the 2-array
/// `n`, by exhaustive enumeration of every cell split.
pub fn min_3array(n: &IntersectionTensor, budget: u64) -> Result<MinArrayResult> {
    if n.t() != 2 {
        return Err(Error::invalid("min_3array needs a 2-array"));
    }
    let l = n.margin()?;
    let k = n.k();
    let cells = n.entries().to_vec();
    let mut rest_ln = vec![0.0; cells.len() + 1];
    for c in (0..cells.len()).rev() {
        rest_ln[c] = rest_ln[c + 1] + flat_ln(cells[c], k as u32);
    }
    let seed = even_split(k, &cells);
    let seed_ln = ln_big(&super::symmetry::stab_order(&seed)?);
    let mut st = Split3 {
        k,
        l,
        cells,
        rest_ln,
        bound_ln: seed_ln,
        partial_ln: 0.0,
        w: vec![0; k * k * k],
        slice: vec![0; k],
        budget,
        nodes: 0,
        exhausted: false,
        best: None,
        found: BTreeMap::new(),
    };
    st.cell(0);
    let mut classes: Vec<ArrayClass> = st.found.into_values().collect();
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(MinArrayResult { k, l, classes, complete: !st.exhausted, window: 0, nodes: st.nodes })
}

/// Every cell split as evenly as possible, remainders dealt to slices in
/// turn so that every slice sums to `l`.
fn even_split(k: usize, cells: &[u32]) -> IntersectionTensor {
    let mut w = vec![0u32; k * cells.len()];
    let mut turn = 0;
    for (c, &n) in cells.iter().enumerate() {
        for s in 0..k {
            w[c * k + s] = n / k as u32;
        }
        for _ in 0..n % k as u32 {
            w[c * k + turn] += 1;
            turn = (turn + 1) % k;
        }
    }
    IntersectionTensor::new(k, 3, w).expect("cube")
}

struct Split3 {
    k: usize,
    l: u32,
    cells: Vec<u32>,
    /// Flattest completion of cells `c..`, as `ln ∏ x!`.
    rest_ln: Vec<f64>,
    /// `ln` of a known stabiliser order; partial arrays above it are cut.
    bound_ln: f64,
    partial_ln: f64,
    w: Vec<u32>,
    slice: Vec<u32>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    best: Option<BigUint>,
    found: BTreeMap<(Vec<u32>, u64), ArrayClass>,
}

impl Split3 {
    fn cell(&mut self, c: usize) {
        if self.exhausted {
            return;
        }
        if c == self.cells.len() {
            self.leaf();
            return;
        }
        self.part(c, 0, self.cells[c]);
    }

    fn part(&mut self, c: usize, s: usize, left: u32) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let k = self.k;
        if s + 1 == k {
            if self.slice[s] + left > self.l {
                return;
            }
            let ln = ln_factorial(left as u64);
            if self.partial_ln + ln + self.rest_ln[c + 1] > self.bound_ln + SLACK {
                return;
            }
            self.w[c * k + s] = left;
            self.slice[s] += left;
            self.partial_ln += ln;
            self.cell(c + 1);
            self.partial_ln -= ln;
            self.slice[s] -= left;
            return;
        }
        for x in 0..=left.min(self.l - self.slice[s]) {
            let ln = ln_factorial(x as u64);
            let lb = self.partial_ln + ln + flat_ln(left - x, (k - s - 1) as u32) + self.rest_ln[c + 1];
            if lb > self.bound_ln + SLACK {
                continue;
            }
            self.w[c * k + s] = x;
            self.slice[s] += x;
            self.partial_ln += ln;
            self.part(c, s + 1, left - x);
            self.partial_ln -= ln;
            self.slice[s] -= x;
        }
    }

    fn leaf(&mut self) {
        let a = IntersectionTensor::new(self.k, 3, self.w.clone()).expect("cube");
        let prod = entry_factorials(&a);
        if self.best.as_ref().is_some_and(|b| prod > *b) {
            return;
        }
        let sym = array_symmetries(&a).expect("guarded by caller").order;
        let stab = prod * BigUint::from(sym);
        match &self.best {
            Some(b) if stab > *b => return,
            Some(b) if stab == *b => {}
            _ => {
                self.bound_ln = self.bound_ln.min(ln_big(&stab));
                self.best = Some(stab.clone());
                self.found.clear();
            }
        }
        let key = (a.star(), sym);
        match self.found.get_mut(&key) {
            Some(class) if class.representative <= a => {}
            Some(class) => class.representative = a,
            None => {
                self.found.insert(key.clone(), ArrayClass { star: key.0, k_order: sym, stab_order: stab, representative: a });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_l10() {
        let res = min_2array(2, 10, 1_000_000).unwrap();
        assert!(res.complete);
        assert_eq!(res.classes.len(), 1);
        let class = &res.classes[0];
        assert_eq!(class.k_order, 2);
        assert_eq!(class.star, vec![4, 4, 6, 6]);
        assert_eq!(class.stab_order, BigUint::from(2u64 * (720 * 24u64).pow(2)));
    }

    #[test]
    fn k2_triple_minimiser() {
        let n = IntersectionTensor::matrix(&[vec![6, 4], vec![4, 6]]).unwrap();
        let res = min_3array(&n, 1_000_000).unwrap();
        assert!(res.complete);
        assert_eq!(res.classes.len(), 1);
        assert_eq!(res.classes[0].k_order, 1);
        let w = super::super::named_array(&super::super::NamedFamily::K2Triple { l: 10 }).unwrap();
        assert_eq!(res.classes[0].star, w.star());
    }

    #[test]
    fn representative_is_canonical() {
        let a = IntersectionTensor::matrix(&[vec![1, 2, 0], vec![0, 1, 2], vec![2, 0, 1]]).unwrap();
        let b = IntersectionTensor::matrix(&[vec![2, 0, 1], vec![1, 2, 0], vec![0, 1, 2]]).unwrap();
        assert_eq!(canonical_representative(&a), canonical_representative(&b));
    }
}
