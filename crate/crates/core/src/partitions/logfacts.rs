use crate::arith::ceil_log;
use crate::error::{Error, Result};

/// Whether `⌈log_k(q+1)⌉ = ⌈log_k(l+3)⌉ - 1` for `l = qk + ε`, `|ε| <= 2`,
/// `k >= 7`.
///
/// ```
/// use greedy_bases::partitions::logfacts_check;
///
/// assert!(logfacts_check(7, 49).unwrap());
/// assert!(logfacts_check(7, 47).unwrap());
/// assert!(logfacts_check(6, 36).is_err());
/// ```
pub fn logfacts_check(k: u64, l: u64) -> Result<bool> {
    if k < 7 {
        return Err(Error::hypothesis("logfacts", format!("k = {k} < 7")));
    }
    let q = (l + 2) / k;
    let eps = l as i64 - (q * k) as i64;
    if !(-2..=2).contains(&eps) || q == 0 {
        return Err(Error::hypothesis("logfacts", format!("l = {l} is not qk + ε with q >= 1 and |ε| <= 2")));
    }
    Ok(ceil_log(k, q + 1) + 1 == ceil_log(k, l + 3))
}

/// Every `(k, q, ε)` in the ranges where the identity fails.
pub fn logfacts_sweep(ks: std::ops::RangeInclusive<u64>, qs: std::ops::RangeInclusive<u64>) -> Result<Vec<(u64, u64, i64)>> {
    let mut bad = Vec::new();
    for k in ks {
        for q in qs.clone() {
            for eps in -2i64..=2 {
                let l = (q * k) as i64 + eps;
                if l < 1 {
                    continue;
                }
                if !logfacts_check(k, l as u64)? {
                    bad.push((k, q, eps));
                }
            }
        }
    }
    Ok(bad)
}
