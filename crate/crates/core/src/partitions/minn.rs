use crate::arith::factorial_product;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Forced extreme values for a multiset of `t` non-negative integers summing
/// to `s`: `pairs[i] = (m_i, r_i)` asks for `m_i` copies of the rank `r_i`.
///
/// Ranks are strictly decreasing and above `⌈s/t⌉`, or strictly increasing
/// and below `⌊s/t⌋`; `Σ m_i < t` and `Σ m_i r_i < s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicitySeq {
    pub s: u64,
    pub t: u64,
    pub pairs: Vec<(u64, u64)>,
}

impl MultiplicitySeq {
    pub fn new(s: u64, t: u64, pairs: Vec<(u64, u64)>) -> Result<Self> {
        let seq = MultiplicitySeq { s, t, pairs };
        seq.validate()?;
        Ok(seq)
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (self.s, self.t);
        if t == 0 {
            return Err(Error::invalid("t must be positive"));
        }
        let m: u64 = self.pairs.iter().map(|p| p.0).sum();
        let mr: u64 = self.pairs.iter().map(|p| p.0 * p.1).sum();
        if self.pairs.iter().any(|p| p.0 == 0) {
            return Err(Error::invalid("multiplicities must be positive"));
        }
        if !self.pairs.is_empty() && (m >= t || mr >= s) {
            return Err(Error::invalid(format!("need Σm < t and Σmr < s, got Σm = {m}, Σmr = {mr}")));
        }
        let ranks: Vec<u64> = self.pairs.iter().map(|p| p.1).collect();
        let above = ranks.windows(2).all(|w| w[0] > w[1]) && ranks.iter().all(|&r| r > s.div_ceil(t));
        let below = ranks.windows(2).all(|w| w[0] < w[1]) && ranks.iter().all(|&r| r < s / t);
        if !ranks.is_empty() && !above && !below {
            return Err(Error::invalid(format!("ranks {ranks:?} are not monotone on one side of {s}/{t}")));
        }
        Ok(())
    }

    /// `(s - Σ m_i r_i, t - Σ m_i)`: the sum and count left for the free entries.
    pub fn remainder(&self) -> (u64, u64) {
        let m: u64 = self.pairs.iter().map(|p| p.0).sum();
        let mr: u64 = self.pairs.iter().map(|p| p.0 * p.1).sum();
        (self.s - mr, self.t - m)
    }
}

/// The minimum of `∏ a!` over multisets meeting `x`, with its unique witness
/// (sorted decreasingly): the forced ranks, then the rest split as evenly as
/// possible, `b` copies of `⌈x⌉` and the others `⌊x⌋`.
///
/// ```
/// use greedy_bases::partitions::{min_factorial_product, MultiplicitySeq};
///
/// let x = MultiplicitySeq::new(10, 4, vec![(1, 5)]).unwrap();
/// let (value, witness) = min_factorial_product(&x).unwrap();
/// assert_eq!(value, 480u32.into());
/// assert_eq!(witness, vec![5, 2, 2, 1]);
/// ```
pub fn min_factorial_product(x: &MultiplicitySeq) -> Result<(BigUint, Vec<u64>)> {
    x.validate()?;
    let (rem, free) = x.remainder();
    let (lo, b) = (rem / free, rem % free);
    let mut witness: Vec<u64> = x.pairs.iter().flat_map(|&(m, r)| std::iter::repeat(r).take(m as usize)).collect();
    witness.extend(std::iter::repeat(lo + 1).take(b as usize));
    witness.extend(std::iter::repeat(lo).take((free - b) as usize));
    witness.sort_unstable_by(|a, b| b.cmp(a));
    Ok((factorial_product(witness.iter().copied()), witness))
}

/// Every valid multiplicity sequence for `(s, t)` with ranks in `[0, s]`.
pub fn all_sequences(s: u64, t: u64) -> Vec<MultiplicitySeq> {
    fn grow(s: u64, t: u64, above: bool, cur: &mut Vec<(u64, u64)>, out: &mut Vec<MultiplicitySeq>) {
        if let Ok(seq) = MultiplicitySeq::new(s, t, cur.clone()) {
            out.push(seq);
        } else if !cur.is_empty() {
            return;
        }
        let ranks: Vec<u64> = if above {
            let start = cur.last().map_or(s, |p| p.1.saturating_sub(1));
            (s.div_ceil(t) + 1..=start).rev().collect()
        } else {
            let start = cur.last().map_or(0, |p| p.1 + 1);
            (start..(s / t)).collect()
        };
        for r in ranks {
            for m in 1..t {
                cur.push((m, r));
                grow(s, t, above, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(s, t, true, &mut Vec::new(), &mut out);
    let mut below = Vec::new();
    grow(s, t, false, &mut Vec::new(), &mut below);
    out.extend(below.into_iter().filter(|x| !x.pairs.is_empty()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_average() {
        let x = MultiplicitySeq::new(12, 4, vec![]).unwrap();
        let (v, w) = min_factorial_product(&x).unwrap();
        assert_eq!(w, vec![3; 4]);
        assert_eq!(v, BigUint::from(6u32.pow(4)));
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(MultiplicitySeq::new(10, 4, vec![(1, 3)]).is_err());
        assert!(MultiplicitySeq::new(10, 4, vec![(1, 5), (1, 6)]).is_err());
        assert!(MultiplicitySeq::new(10, 4, vec![(4, 5)]).is_err());
        assert!(MultiplicitySeq::new(10, 4, vec![(1, 1)]).is_ok());
    }

    #[test]
    fn enumeration_is_valid() {
        let all = all_sequences(10, 4);
        assert!(all.iter().all(|x| x.validate().is_ok()));
        assert!(all.iter().any(|x| x.pairs == vec![(1, 5)]));
        assert!(all.iter().any(|x| x.pairs.is_empty()));
    }
}
