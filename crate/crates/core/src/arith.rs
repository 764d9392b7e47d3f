//! Exact integer helpers shared by every layer: factorials, binomials and
//! integer ceiling logarithms.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

const LOG_TABLE: usize = 4096;

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// `∏ a!` over the entries of a multiset.
pub fn factorial_product<I: IntoIterator<Item = u64>>(entries: I) -> BigUint {
    let mut acc = BigUint::one();
    for a in entries {
        for i in 2..=a {
            acc *= i;
        }
    }
    acc
}

/// `C(n, k)` in 128-bit arithmetic, `None` on overflow.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Smallest `e >= 0` with `base^e >= x`, i.e. `⌈log_base x⌉` for `x >= 1`.
/// Returns 0 for `x <= 1`.
pub fn ceil_log(base: u64, x: u64) -> u32 {
    assert!(base >= 2, "logarithm base must be at least 2");
    let mut e = 0;
    let mut p: u128 = 1;
    while p < x as u128 {
        p *= base as u128;
        e += 1;
    }
    e
}

/// `⌈a / b⌉` for positive `b`.
pub fn div_ceil(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

fn log_factorials() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LOG_TABLE);
        t.push(0.0);
        for i in 1..LOG_TABLE {
            t.push(t[i - 1] + (i as f64).ln());
        }
        t
    })
}

/// Natural log of `n!`. Used only for pruning, never for final answers.
pub fn ln_factorial(n: u64) -> f64 {
    let t = log_factorials();
    if (n as usize) < t.len() {
        t[n as usize]
    } else {
        let mut acc = t[t.len() - 1];
        for i in t.len() as u64..=n {
            acc += (i as f64).ln();
        }
        acc
    }
}

/// `log2` of a big integer, accurate to double precision.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map(f64::log2).unwrap_or(f64::INFINITY);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit prefix fits in f64");
    top.log2() + shift as f64
}

/// Real logarithm of `x` in base `base`.
pub fn log_base(base: f64, x: f64) -> f64 {
    x.ln() / base.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
        assert_eq!(binomial_u128(16, 2), Some(120));
        assert_eq!(binomial(52, 5), BigUint::from(2_598_960u32));
        assert_eq!(binomial_u128(3, 5), Some(0));
        assert_eq!(factorial_product([3, 2, 0]), BigUint::from(12u32));
    }

    #[test]
    fn ceil_log_matches_powers() {
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 2), 1);
        assert_eq!(ceil_log(2, 18), 5);
        assert_eq!(ceil_log(7, 49), 2);
        assert_eq!(ceil_log(7, 50), 3);
        assert_eq!(ceil_log(3, 5), 2);
    }

    #[test]
    fn log2_of_large_values() {
        let f = factorial(400);
        let direct: f64 = (2..=400).map(|i| (i as f64).log2()).sum();
        assert!((log2_big(&f) - direct).abs() < 1e-6);
    }
}
