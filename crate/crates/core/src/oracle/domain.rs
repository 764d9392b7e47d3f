use super::perm::Perm;
use crate::{Error, Result};
use std::collections::HashMap;

/// Default cap on the number of points of an explicit domain.
pub const MAX_DOMAIN: usize = 100_000;

/// The action of `S_n` whose points the oracle enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// The natural action on `[n]`.
    Points,
    /// `r`-subsets of `[n]`.
    Subsets { r: usize },
    /// Partitions of `[kl]` into `k` parts of size `l`.
    Partitions { k: usize, l: usize },
}

/// An explicitly enumerated set `Ω` with an index for every point.
///
/// Each point is stored as a list of disjoint bitmasks over `{0, .., n-1}`:
/// one singleton mask for the natural action, one mask for a subset, `k`
/// masks sorted by least element for a partition.
#[derive(Clone, Debug)]
pub struct Domain {
    degree: usize,
    action: Action,
    points: Vec<Vec<u64>>,
    index: HashMap<Vec<u64>, u32>,
}

impl Domain {
    pub fn new(degree: usize, action: Action) -> Result<Domain> {
        if degree > 64 {
            return Err(Error::cap("oracle degree", degree as u128, 64u128));
        }
        let points = match action {
            Action::Points => (0..degree).map(|p| vec![1u64 << p]).collect(),
            Action::Subsets { r } => {
                if r > degree {
                    return Err(Error::invalid(format!("cannot take {r}-subsets of [{degree}]")));
                }
                let count = crate::arith::binomial_u128(degree as u64, r as u64).unwrap_or(u128::MAX);
                if count > MAX_DOMAIN as u128 {
                    return Err(Error::cap("domain size", count, MAX_DOMAIN as u128));
                }
                let mut out = Vec::new();
                subsets_rec(degree, r, 0, 0, &mut out);
                out.into_iter().map(|m| vec![m]).collect()
            }
            Action::Partitions { k, l } => {
                if k * l != degree || k == 0 || l == 0 {
                    return Err(Error::invalid(format!("({k},{l})-partitions need degree kl, got {degree}")));
                }
                let count = partition_count(k, l);
                if count > MAX_DOMAIN as u128 {
                    return Err(Error::cap("domain size", count, MAX_DOMAIN as u128));
                }
                let mut out = Vec::new();
                let full = if degree == 64 { u64::MAX } else { (1u64 << degree) - 1 };
                partitions_rec(full, l, &mut Vec::new(), &mut out);
                out
            }
        };
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        Ok(Domain { degree, action, points, index })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn action(&self) -> Action {
        self.action
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of a point given as one-based blocks (a single block for subsets,
    /// a single singleton block for the natural action).
    pub fn index_of(&self, blocks: &[Vec<usize>]) -> Option<usize> {
        let mut masks: Vec<u64> = Vec::with_capacity(blocks.len());
        for b in blocks {
            let mut m = 0u64;
            for &x in b {
                if x == 0 || x > self.degree {
                    return None;
                }
                m |= 1 << (x - 1);
            }
            masks.push(m);
        }
        masks.sort_by_key(|m| m.trailing_zeros());
        self.index.get(&masks).map(|&i| i as usize)
    }

    /// One-based blocks of the point with index `i`.
    pub fn describe(&self, i: usize) -> Vec<Vec<usize>> {
        self.points[i]
            .iter()
            .map(|&m| (0..self.degree).filter(|&b| m >> b & 1 == 1).map(|b| b + 1).collect())
            .collect()
    }

    /// Index of `g(point i)`.
    pub fn image(&self, g: &Perm, i: usize) -> usize {
        let p = &self.points[i];
        let mut img: Vec<u64> = p.iter().map(|&m| g.map_mask(m)).collect();
        if img.len() > 1 {
            img.sort_by_key(|m| m.trailing_zeros());
        }
        self.index[&img] as usize
    }
}

fn subsets_rec(n: usize, r: usize, start: usize, mask: u64, out: &mut Vec<u64>) {
    if r == 0 {
        out.push(mask);
        return;
    }
    for x in start..=n - r {
        subsets_rec(n, r - 1, x + 1, mask | 1 << x, out);
    }
}

fn partitions_rec(remaining: u64, l: usize, parts: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if remaining == 0 {
        out.push(parts.clone());
        return;
    }
    let first = remaining.trailing_zeros();
    let rest = remaining & !(1u64 << first);
    let pool: Vec<u32> = (0..64).filter(|&b| rest >> b & 1 == 1).collect();
    let mut chosen = Vec::new();
    choose_rec(&pool, l - 1, 0, &mut chosen, &mut |sel: &[u32]| {
        let mut part = 1u64 << first;
        for &b in sel {
            part |= 1u64 << b;
        }
        parts.push(part);
        partitions_rec(remaining & !part, l, parts, out);
        parts.pop();
    });
}

fn choose_rec(pool: &[u32], need: usize, start: usize, chosen: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if need == 0 {
        f(chosen);
        return;
    }
    if pool.len() < start + need {
        return;
    }
    for i in start..=pool.len() - need {
        chosen.push(pool[i]);
        choose_rec(pool, need - 1, i + 1, chosen, f);
        chosen.pop();
    }
}

/// `(kl)! / (l!^k k!)`.
pub(crate) fn partition_count(k: usize, l: usize) -> u128 {
    use num_traits::ToPrimitive;
    let num = crate::arith::factorial((k * l) as u64);
    let mut den = crate::arith::factorial(k as u64);
    for _ in 0..k {
        den *= crate::arith::factorial(l as u64);
    }
    (num / den).to_u128().unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(Domain::new(6, Action::Partitions { k: 3, l: 2 }).unwrap().len(), 15);
        assert_eq!(Domain::new(8, Action::Partitions { k: 4, l: 2 }).unwrap().len(), 105);
        assert_eq!(Domain::new(9, Action::Partitions { k: 3, l: 3 }).unwrap().len(), 280);
        assert_eq!(Domain::new(8, Action::Subsets { r: 3 }).unwrap().len(), 56);
        assert_eq!(Domain::new(5, Action::Points).unwrap().len(), 5);
    }

    #[test]
    fn index_round_trip() {
        let d = Domain::new(6, Action::Partitions { k: 3, l: 2 }).unwrap();
        let i = d.index_of(&[vec![6, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(d.describe(i), vec![vec![1, 6], vec![2, 3], vec![4, 5]]);
    }
}
