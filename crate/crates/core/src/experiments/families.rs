use crate::arith::{ceil_log, ln_factorial};
use crate::GroupKind;
use serde::Serialize;

/// Which known result covers a pair `(k, l)`, with its upper bound on the
/// greedy base size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `l = 2`, `k >= 3`: exactly 3, or 4 for `S_{3×2}`.
    PartsOfTwo,
    /// `k = 2`, `l >= 10`: `⌈log₂(l+8)⌉ + 1`.
    Two,
    /// `k = 3`, `l = 3q`, `q >= 5`: `⌈log₃(l+9)⌉ + 1`.
    ThreeDivisible,
    /// `k ∈ {3, 4}`, `l = qk ± 1`, `q >= 5`: `⌈log_k(l+3k)⌉ + 1`.
    NearMultiple,
    /// `4 <= k <= 6`, `l = kq`, `q >= 11`: `⌈log_k(l+3k)⌉ + 1`.
    Divisible,
    /// `4 <= k <= 6`, `l = kq ± 2` (`q >= 4` for `k = 4`, else `q >= 5`):
    /// `⌈log_k(l+3k)⌉ + 1`.
    OffByTwo,
    /// `k ∈ {5, 6}`, `l = kq ± 1`, `q >= 7`: `⌈log_k(l+3k)⌉ + 1`.
    OffByOne,
    /// `k ∈ {6, 7}`, `l = kq ± 3`, `q >= 1`: `⌈log_k(l+2k)⌉ + 1`.
    OffByThree,
    /// `k >= 8`, `l >= 3`, or `k = 7`, `l = 7q + r`, `|r| <= 2`, `q >= 1`:
    /// `⌈log_k(l+3)⌉ + 1`.
    LogBase,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PartsOfTwo => "l=2",
            Family::Two => "k=2",
            Family::ThreeDivisible => "k=3,l=3q",
            Family::NearMultiple => "l=qk±1,k<=4",
            Family::Divisible => "l=kq",
            Family::OffByTwo => "l=kq±2",
            Family::OffByOne => "l=kq±1",
            Family::OffByThree => "l=kq±3",
            Family::LogBase => "log-base",
        }
    }
}

/// `(q, r)` with `l = qk + r` and `r` the representative in `[-(k-1)/2, k/2]`.
pub fn signed_residue(k: u64, l: u64) -> (u64, i64) {
    let (q, r) = (l / k, (l % k) as i64);
    if r > k as i64 / 2 {
        (q + 1, r - k as i64)
    } else {
        (q, r)
    }
}

/// The family covering `(k, l)`, if any.
pub fn classify(k: u64, l: u64) -> Option<Family> {
    if k < 2 || l < 2 || k * l <= 4 {
        return None;
    }
    if l == 2 {
        return (k >= 3).then_some(Family::PartsOfTwo);
    }
    let (q, r) = signed_residue(k, l);
    match k {
        2 => (l >= 10).then_some(Family::Two),
        3 => match r {
            0 if q >= 5 => Some(Family::ThreeDivisible),
            1 | -1 if q >= 5 => Some(Family::NearMultiple),
            _ => None,
        },
        4..=6 => match r.abs() {
            0 if q >= 11 => Some(Family::Divisible),
            1 if k == 4 && q >= 5 => Some(Family::NearMultiple),
            1 if k >= 5 && q >= 7 => Some(Family::OffByOne),
            2 if (k == 4 && q >= 4) || q >= 5 => Some(Family::OffByTwo),
            3 if k == 6 => Some(Family::OffByThree),
            _ => None,
        },
        7 => match r.abs() {
            0..=2 if q >= 1 => Some(Family::LogBase),
            3 if q >= 1 => Some(Family::OffByThree),
            _ => None,
        },
        _ => Some(Family::LogBase),
    }
}

/// The family's upper bound on the greedy base size.
pub fn family_bound(family: Family, k: u64, l: u64, group: GroupKind) -> u32 {
    let c = |base: u64, x: u64| ceil_log(base, x) + 1;
    match family {
        Family::PartsOfTwo => {
            if k == 3 && group == GroupKind::Sym {
                4
            } else {
                3
            }
        }
        Family::Two => c(2, l + 8),
        Family::ThreeDivisible => c(3, l + 9),
        Family::NearMultiple | Family::Divisible | Family::OffByTwo | Family::OffByOne => c(k, l + 3 * k),
        Family::OffByThree => c(k, l + 2 * k),
        Family::LogBase => c(k, l + 3),
    }
}

/// The lower bound `log_k(l + 2)` on the minimum base size.
pub fn base_lower_bound(k: u64, l: u64) -> f64 {
    ((l + 2) as f64).ln() / (k as f64).ln()
}

/// `log₂ log₂ n + 1` with `n = (kl)! / (l!^k k!)`, the general ratio bound.
pub fn blaha_ratio(k: u64, l: u64) -> f64 {
    let ln_n = ln_factorial(k * l) - k as f64 * ln_factorial(l) - ln_factorial(k);
    (ln_n / std::f64::consts::LN_2).log2() + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(classify(2, 10), Some(Family::Two));
        assert_eq!(classify(2, 9), None);
        assert_eq!(classify(3, 16), Some(Family::NearMultiple));
        assert_eq!(classify(6, 60), None);
        assert_eq!(classify(6, 66), Some(Family::Divisible));
        assert_eq!(classify(7, 2), Some(Family::PartsOfTwo));
        assert_eq!(classify(7, 3), None);
        assert_eq!(classify(7, 4), Some(Family::OffByThree));
        assert_eq!(classify(9, 3), Some(Family::LogBase));
        assert_eq!(classify(4, 18), Some(Family::OffByTwo));
        assert_eq!(classify(4, 14), None);
        assert_eq!(classify(6, 3), Some(Family::OffByThree));
    }

    #[test]
    fn bounds() {
        assert_eq!(family_bound(Family::Two, 2, 10, GroupKind::Sym), 6);
        assert!((base_lower_bound(2, 10) - 12f64.log2()).abs() < 1e-12);
        let b = blaha_ratio(6, 60);
        assert!(b > 10.0 && b <= 11.0, "{b}");
    }
}
