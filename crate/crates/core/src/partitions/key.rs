use super::symmetry::array_symmetries;
use super::IntersectionTensor;
use crate::arith::ceil_log;
use crate::error::{Error, Result};
use crate::GroupKind;
use serde::Serialize;
use std::collections::BTreeMap;

/// Outcome of checking the continuation hypotheses on a tensor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyCheck {
    pub holds: bool,
    pub k_order: u64,
    /// Largest entry `t ≢ 0 (mod k)` occurring at least `k` times.
    pub witness: Option<u32>,
    pub reason: Option<String>,
}

/// Partwise-fixedness (`K` trivial) plus an entry `t ≢ 0 (mod k)` of
/// multiplicity at least `k`.
///
/// ```
/// use greedy_bases::partitions::{lemma_key_check, IntersectionTensor};
///
/// let flat = IntersectionTensor::scalar(3, 15);
/// assert!(!lemma_key_check(&flat).unwrap().holds);
/// ```
pub fn lemma_key_check(tensor: &IntersectionTensor) -> Result<KeyCheck> {
    let sym = array_symmetries(tensor)?;
    let k = tensor.k() as u32;
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &x in tensor.entries() {
        *counts.entry(x).or_insert(0) += 1;
    }
    let witness = counts.iter().rev().find(|(&x, &c)| x % k != 0 && c >= k as usize).map(|(&x, _)| x);
    let reason = if !sym.is_trivial() {
        Some(format!("not partwise fixed: |K| = {}", sym.order))
    } else if witness.is_none() {
        Some(format!("no entry t ≢ 0 (mod {k}) occurs {k} or more times"))
    } else {
        None
    };
    Ok(KeyCheck { holds: reason.is_none(), k_order: sym.order, witness, reason })
}

/// The multiset of all `m`-wise intersection sizes, zeros dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyState {
    pub k: usize,
    /// Non-increasing.
    pub sizes: Vec<u64>,
}

impl KeyState {
    pub fn new(k: usize, mut sizes: Vec<u64>) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid("k must be at least 2"));
        }
        sizes.retain(|&s| s > 0);
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let total: u64 = sizes.iter().sum();
        if total == 0 || total % k as u64 != 0 {
            return Err(Error::invalid(format!("sizes sum to {total}, not a positive multiple of k = {k}")));
        }
        Ok(KeyState { k, sizes })
    }

    pub fn from_tensor(t: &IntersectionTensor) -> Result<Self> {
        Self::new(t.k(), t.entries().iter().map(|&x| x as u64).collect())
    }

    pub fn l(&self) -> u64 {
        self.sizes.iter().sum::<u64>() / self.k as u64
    }

    pub fn max(&self) -> u64 {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, t: u64) -> usize {
        self.sizes.iter().filter(|&&s| s == t).count()
    }

    /// `⌈log_k max⌉` further partitions.
    pub fn predicted_steps(&self) -> u32 {
        ceil_log(self.k as u64, self.max())
    }

    pub fn witness(&self) -> Option<u64> {
        let k = self.k as u64;
        let mut seen = None;
        for &s in &self.sizes {
            if Some(s) != seen && s % k != 0 && self.multiplicity(s) >= self.k {
                return Some(s);
            }
            seen = Some(s);
        }
        None
    }

    /// Whether the intersections already pin every point.
    pub fn is_base(&self, group: GroupKind) -> bool {
        match group {
            GroupKind::Sym => self.max() <= 1,
            GroupKind::Alt => self.max() <= 2 && self.multiplicity(2) <= 1,
        }
    }
}

/// One continuation: how every current cell splits over the new partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyStep {
    pub t: u64,
    /// The `θ(v)` row used on the `k` cells of size `t`.
    pub v: Vec<u64>,
    /// `split[c][j] = |A_c ∩ P_j|`, cells in the order of `sizes`.
    pub split: Vec<Vec<u64>>,
    pub next: KeyState,
}

/// The next partition's intersection profile: `θ(v)` on `k` cells of size `t`,
/// near-equal splits elsewhere with remainders dealt out cyclically so every
/// new part has size `l`.
pub fn continue_key(state: &KeyState) -> Result<KeyStep> {
    let k = state.k;
    let ku = k as u64;
    if state.max() <= 1 {
        return Err(Error::hypothesis("continuation", "every intersection already has size at most 1"));
    }
    let t = state
        .witness()
        .ok_or_else(|| Error::hypothesis("continuation", format!("no size t ≢ 0 (mod {k}) occurs {k} or more times")))?;
    let a = (t % ku) as usize;
    let v: Vec<u64> = (0..k).map(|i| if i < a { t.div_ceil(ku) } else { t / ku }).collect();
    let mut chosen = 0;
    let mut ptr = 0;
    let mut split = Vec::with_capacity(state.sizes.len());
    for &s in &state.sizes {
        if s == t && chosen < k {
            let i = chosen;
            split.push((0..k).map(|j| v[(j + k - i) % k]).collect());
            chosen += 1;
        } else {
            let mut row = vec![s / ku; k];
            for _ in 0..(s % ku) {
                row[ptr] += 1;
                ptr = (ptr + 1) % k;
            }
            split.push(row);
        }
    }
    let l = state.l();
    for j in 0..k {
        let part: u64 = split.iter().map(|r: &Vec<u64>| r[j]).sum();
        debug_assert_eq!(part, l);
    }
    let next = KeyState::new(k, split.iter().flatten().copied().collect())?;
    Ok(KeyStep { t, v, split, next })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyIteration {
    pub predicted: u32,
    pub sym_steps: u32,
    pub alt_steps: u32,
    /// Largest intersection after each step, starting with the input.
    pub maxima: Vec<u64>,
}

/// Continues until the Sym stopping rule holds, recording where Alt stops.
pub fn iterate_key(state: &KeyState) -> Result<KeyIteration> {
    let predicted = state.predicted_steps();
    let mut cur = state.clone();
    let mut maxima = vec![cur.max()];
    let mut steps = 0;
    let mut alt_steps = None;
    loop {
        if alt_steps.is_none() && cur.is_base(GroupKind::Alt) {
            alt_steps = Some(steps);
        }
        if cur.is_base(GroupKind::Sym) {
            break;
        }
        cur = continue_key(&cur)?.next;
        steps += 1;
        maxima.push(cur.max());
    }
    Ok(KeyIteration { predicted, sym_steps: steps, alt_steps: alt_steps.unwrap_or(steps), maxima })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decay_from_five() {
        let s = KeyState::new(3, vec![5, 5, 5, 4, 4, 4, 3, 3, 3]).unwrap();
        let it = iterate_key(&s).unwrap();
        assert_eq!(it.predicted, 2);
        assert_eq!(it.sym_steps, 2);
        assert_eq!(it.maxima, vec![5, 2, 1]);
    }

    #[test]
    fn parts_have_size_l() {
        let s = KeyState::new(4, vec![7, 7, 7, 7, 5, 3, 3, 2, 2, 1]).unwrap();
        let step = continue_key(&s).unwrap();
        for j in 0..4 {
            assert_eq!(step.split.iter().map(|r| r[j]).sum::<u64>(), s.l());
        }
    }

    #[test]
    fn already_base() {
        let s = KeyState::new(2, vec![1; 6]).unwrap();
        assert_eq!(iterate_key(&s).unwrap().sym_steps, 0);
        assert!(continue_key(&s).is_err());
    }
}
