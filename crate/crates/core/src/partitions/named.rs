use super::symmetry::theta;
use super::IntersectionTensor;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Families of explicit intersection arrays.
///
/// `r` is the signed residue of `l` modulo `k` where a family needs it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum NamedFamily {
    /// `[[⌊l/2⌋+1, ⌈l/2⌉-1], [⌈l/2⌉-1, ⌊l/2⌋+1]]`, `l >= 10`.
    K2 { l: u32 },
    /// The 3-array arising from `K2`; rejected for `l ≡ 1 (mod 4)`.
    K2Triple { l: u32 },
    /// `l = 3q`, `q >= 5`.
    K3 { q: u32 },
    /// The 3-array arising from `K3` when `q = 3m + 1`.
    K3Triple { q: u32 },
    /// `k ∈ {3, 4}`, `l = qk + eps`, `eps = ±1`, `q >= 5`.
    Other3 { k: usize, q: u32, eps: i32 },
    /// `L(k)` for `4 <= k <= 6`, `l = kq`, `q >= 11`.
    L { k: usize, q: u32 },
    /// `q` bordered by `qJ` around `L(k-1)`, `k ∈ {5, 6}`, `q >= 11`.
    BorderedL { k: usize, q: u32 },
    /// `θ(v) - E(k-2,k-2) + E(k-2,k-1) + E(k-1,k-2) - E(k-1,k-1)`,
    /// `k ∈ {6, 7}`, `r ∈ {3, k-3}`, `q >= 1`.
    ThetaMinusE { k: usize, q: u32, r: i32 },
    /// `θ(v) + E(1,1) - E(1,2) - E(2,1) + E(2,2)`, `4 <= k <= 6`,
    /// `r ∈ {2, k-2}`, `q >= 4`.
    ThetaPlusE { k: usize, q: u32, r: i32 },
    /// `θ((q,…,q,q+r)) + rX`, `k ∈ {5, 6}`, `r = ±1`, `q >= 7`.
    ThetaRX { k: usize, q: u32, r: i32 },
}

impl NamedFamily {
    pub fn name(&self) -> &'static str {
        match self {
            NamedFamily::K2 { .. } => "k2",
            NamedFamily::K2Triple { .. } => "k2_triple",
            NamedFamily::K3 { .. } => "k3",
            NamedFamily::K3Triple { .. } => "k3_triple",
            NamedFamily::Other3 { .. } => "other3",
            NamedFamily::L { .. } => "l",
            NamedFamily::BorderedL { .. } => "bordered_l",
            NamedFamily::ThetaMinusE { .. } => "theta_minus_e",
            NamedFamily::ThetaPlusE { .. } => "theta_plus_e",
            NamedFamily::ThetaRX { .. } => "theta_rx",
        }
    }

    /// Builds a family from a name plus `k`, and `l` or `q`, and `r`.
    ///
    /// Families indexed by `q` accept `l` instead, in which case `q` and `r`
    /// are derived from `l = qk + r` with the residue the family expects.
    pub fn parse(name: &str, k: Option<usize>, l: Option<u32>, q: Option<u32>, r: Option<i32>) -> Result<Self> {
        let need_k = || k.ok_or_else(|| Error::invalid(format!("family `{name}` needs k")));
        let q_of = |k: usize, r: i32| -> Result<u32> {
            match (q, l) {
                (Some(q), _) => Ok(q),
                (None, Some(l)) => {
                    let base = l as i64 - r as i64;
                    if base < 0 || base % k as i64 != 0 {
                        return Err(Error::invalid(format!("l = {l} is not {k}q + {r}")));
                    }
                    Ok((base / k as i64) as u32)
                }
                (None, None) => Err(Error::invalid(format!("family `{name}` needs q or l"))),
            }
        };
        let signed_r = |k: usize| -> Result<i32> {
            match (r, l, q) {
                (Some(r), _, _) => Ok(r),
                (None, Some(l), None) => {
                    let m = (l % k as u32) as i32;
                    Ok(if m > k as i32 / 2 { m - k as i32 } else { m })
                }
                _ => Err(Error::invalid(format!("family `{name}` needs r"))),
            }
        };
        let l_req = || l.ok_or_else(|| Error::invalid(format!("family `{name}` needs l")));
        let fam = match name.to_ascii_lowercase().replace('-', "_").as_str() {
            "k2" => NamedFamily::K2 { l: l_req()? },
            "k2_triple" => NamedFamily::K2Triple { l: l_req()? },
            "k3" => NamedFamily::K3 { q: q_of(3, 0)? },
            "k3_triple" => NamedFamily::K3Triple { q: q_of(3, 0)? },
            "other3" => {
                let k = need_k()?;
                let eps = signed_r(k)?;
                NamedFamily::Other3 { k, q: q_of(k, eps)?, eps }
            }
            "l" => {
                let k = need_k()?;
                NamedFamily::L { k, q: q_of(k, 0)? }
            }
            "bordered_l" => {
                let k = need_k()?;
                NamedFamily::BorderedL { k, q: q_of(k, 0)? }
            }
            "theta_minus_e" | "theta_plus_e" | "theta_rx" => {
                let k = need_k()?;
                let r = match (r, l, q) {
                    (Some(r), _, _) => r,
                    (None, Some(_), None) if name.ends_with("rx") => signed_r(k)?,
                    (None, Some(l), None) => (l % k as u32) as i32,
                    _ => return Err(Error::invalid(format!("family `{name}` needs r"))),
                };
                let q = q_of(k, r)?;
                match name.as_bytes()[6] {
                    b'm' => NamedFamily::ThetaMinusE { k, q, r },
                    b'p' => NamedFamily::ThetaPlusE { k, q, r },
                    _ => NamedFamily::ThetaRX { k, q, r },
                }
            }
            other => return Err(Error::invalid(format!("unknown array family `{other}`"))),
        };
        Ok(fam)
    }

    /// Part size of the partitions the array describes.
    pub fn l(&self) -> u32 {
        match *self {
            NamedFamily::K2 { l } | NamedFamily::K2Triple { l } => l,
            NamedFamily::K3 { q } | NamedFamily::K3Triple { q } => 3 * q,
            NamedFamily::Other3 { k, q, eps } => (k as i64 * q as i64 + eps as i64) as u32,
            NamedFamily::L { k, q } | NamedFamily::BorderedL { k, q } => k as u32 * q,
            NamedFamily::ThetaMinusE { k, q, r } | NamedFamily::ThetaPlusE { k, q, r } | NamedFamily::ThetaRX { k, q, r } => {
                (k as i64 * q as i64 + r as i64) as u32
            }
        }
    }

    /// The order of `K_N` the family is claimed to have.
    pub fn claimed_k_order(&self) -> u64 {
        match self {
            NamedFamily::K2 { .. } => 2,
            _ => 1,
        }
    }
}

fn range(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!("parameters out of range: {what}")))
    }
}

fn e(n: &mut IntersectionTensor, i: usize, j: usize, d: i64) -> Result<()> {
    n.add(&[i - 1, j - 1], d)
}

/// `L(k)` with margins `kq`; valid for any `k >= 4` and `q >= 2`.
fn l_matrix(k: usize, q: u32) -> Result<IntersectionTensor> {
    let mut rows = Vec::with_capacity(k);
    let mut first = vec![q; k];
    first[0] = q + 2;
    first[k - 2] = q - 1;
    first[k - 1] = q - 1;
    rows.push(first);
    let mut v = vec![q; k];
    v[0] = q - 1;
    v[1] = q + 1;
    rows.extend(theta(&v).rows().into_iter().take(k - 2));
    let mut last = vec![q; k];
    last[0] = q - 1;
    last[k - 1] = q + 1;
    rows.push(last);
    IntersectionTensor::matrix(&rows)
}

fn theta_v(k: usize, q: u32, r: usize) -> IntersectionTensor {
    let v: Vec<u32> = (0..k).map(|i| if i < r { q + 1 } else { q }).collect();
    theta(&v)
}

/// The explicit array of a family.
///
/// ```
/// use greedy_bases::partitions::{named_array, NamedFamily};
///
/// let n = named_array(&NamedFamily::K2 { l: 10 }).unwrap();
/// assert_eq!(n.rows(), vec![vec![6, 4], vec![4, 6]]);
/// ```
pub fn named_array(family: &NamedFamily) -> Result<IntersectionTensor> {
    let a = match *family {
        NamedFamily::K2 { l } => {
            range(l >= 10, "k2 needs l >= 10")?;
            let (a, b) = (l / 2 + 1, l.div_ceil(2) - 1);
            IntersectionTensor::matrix(&[vec![a, b], vec![b, a]])?
        }
        NamedFamily::K2Triple { l } => {
            range(l >= 10, "k2_triple needs l >= 10")?;
            if l % 4 == 2 {
                let m = (l - 2) / 4;
                IntersectionTensor::cube(&[vec![vec![m + 2, m], vec![m, m]], vec![vec![m - 1, m + 1], vec![m + 1, m + 1]]])?
            } else {
                let (n11, n12) = (l / 2 + 1, l.div_ceil(2) - 1);
                if n12 % 2 == 0 {
                    return Err(Error::invalid(format!(
                        "k2_triple: for l = {l} the split array has slice sums {} and {}, not l",
                        n11 + 1 + n12,
                        n11 - 1 + n12
                    )));
                }
                let (c11, f11, c12, f12) = (n11.div_ceil(2), n11 / 2, n12.div_ceil(2), n12 / 2);
                IntersectionTensor::cube(&[vec![vec![c11 + 1, f11 - 1], vec![f12, c12]], vec![vec![f12, c12], vec![f11, c11]]])?
            }
        }
        NamedFamily::K3 { q } => {
            range(q >= 5, "k3 needs q >= 5")?;
            IntersectionTensor::matrix(&[vec![q - 2, q + 2, q], vec![q + 2, q - 1, q - 1], vec![q, q - 1, q + 1]])?
        }
        NamedFamily::K3Triple { q } => {
            range(q >= 5 && q % 3 == 1, "k3_triple needs q >= 5 and q ≡ 1 (mod 3)")?;
            let m = (q - 1) / 3;
            IntersectionTensor::cube(&[
                vec![vec![m - 1, m, m], vec![m + 1, m + 1, m + 1], vec![m + 1, m, m]],
                vec![vec![m + 1, m + 1, m + 1], vec![m, m, m], vec![m, m, m]],
                vec![vec![m, m, m + 1], vec![m, m, m], vec![m + 1, m + 1, m]],
            ])?
        }
        NamedFamily::Other3 { k, q, eps } => {
            range((k == 3 || k == 4) && q >= 5 && eps.abs() == 1, "other3 needs k ∈ {3, 4}, q >= 5, eps = ±1")?;
            let s = |d: i32| (q as i32 + d * eps) as u32;
            if k == 3 {
                IntersectionTensor::matrix(&[vec![q, s(-1), s(2)], vec![s(1), s(1), s(-1)], vec![q, s(1), q]])?
            } else {
                IntersectionTensor::matrix(&[
                    vec![q, q, s(-1), s(2)],
                    vec![s(1), q, s(1), s(-1)],
                    vec![q, s(1), q, q],
                    vec![q, q, s(1), q],
                ])?
            }
        }
        NamedFamily::L { k, q } => {
            range((4..=6).contains(&k) && q >= 11, "L needs 4 <= k <= 6 and q >= 11")?;
            l_matrix(k, q)?
        }
        NamedFamily::BorderedL { k, q } => {
            range((5..=6).contains(&k) && q >= 11, "bordered_l needs k ∈ {5, 6} and q >= 11")?;
            let inner = l_matrix(k - 1, q)?.rows();
            let mut rows = vec![vec![q; k]];
            for row in inner {
                let mut r = vec![q];
                r.extend(row);
                rows.push(r);
            }
            IntersectionTensor::matrix(&rows)?
        }
        NamedFamily::ThetaMinusE { k, q, r } => {
            range((6..=7).contains(&k) && q >= 1 && (r == 3 || r == k as i32 - 3), "theta_minus_e needs k ∈ {6, 7}, r ∈ {3, k-3}, q >= 1")?;
            let mut n = theta_v(k, q, r as usize);
            e(&mut n, k - 2, k - 2, -1)?;
            e(&mut n, k - 2, k - 1, 1)?;
            e(&mut n, k - 1, k - 2, 1)?;
            e(&mut n, k - 1, k - 1, -1)?;
            n
        }
        NamedFamily::ThetaPlusE { k, q, r } => {
            range((4..=6).contains(&k) && q >= 4 && (r == 2 || r == k as i32 - 2), "theta_plus_e needs 4 <= k <= 6, r ∈ {2, k-2}, q >= 4")?;
            let mut n = theta_v(k, q, r as usize);
            e(&mut n, 1, 1, 1)?;
            e(&mut n, 1, 2, -1)?;
            e(&mut n, 2, 1, -1)?;
            e(&mut n, 2, 2, 1)?;
            n
        }
        NamedFamily::ThetaRX { k, q, r } => {
            range((5..=6).contains(&k) && q >= 7 && r.abs() == 1, "theta_rx needs k ∈ {5, 6}, r = ±1, q >= 7")?;
            let mut v = vec![q; k];
            v[k - 1] = (q as i32 + r) as u32;
            let mut n = theta(&v);
            let r = r as i64;
            for (i, j, d) in [(1, k, 1), (1, 1, -1), (k, k, -1), (k, 1, 1), (2, k - 1, 1), (2, k - 2, -1), (3, k - 2, 1), (3, k - 1, -1)] {
                e(&mut n, i, j, d * r)?;
            }
            n
        }
    };
    Ok(a)
}

/// The entry multiset the family is claimed to have, as `entry -> count`.
/// `None` for the 3-array families.
pub fn named_array_star(family: &NamedFamily) -> Option<BTreeMap<u32, usize>> {
    let mut m = BTreeMap::new();
    let mut put = |x: i64, c: i64| {
        if c > 0 {
            *m.entry(x as u32).or_insert(0) += c as usize;
        }
    };
    match *family {
        NamedFamily::K2 { l } => {
            put((l / 2 + 1) as i64, 2);
            put((l.div_ceil(2) - 1) as i64, 2);
        }
        NamedFamily::K3 { q } => {
            let q = q as i64;
            put(q + 2, 2);
            put(q + 1, 1);
            put(q, 2);
            put(q - 1, 3);
            put(q - 2, 1);
        }
        NamedFamily::Other3 { k, q, eps } => {
            let (q, e) = (q as i64, eps as i64);
            if k == 3 {
                put(q + 2 * e, 1);
                put(q + e, 3);
                put(q, 3);
                put(q - e, 2);
            } else {
                put(q + 2 * e, 1);
                put(q + e, 4);
                put(q, 9);
                put(q - e, 2);
            }
        }
        NamedFamily::L { k, q } => {
            let (k, q) = (k as i64, q as i64);
            put(q + 2, 1);
            put(q + 1, k - 1);
            put(q - 1, k + 1);
            put(q, k * k - 2 * k - 1);
        }
        NamedFamily::BorderedL { k, q } => {
            let (k, q) = (k as i64 - 1, q as i64);
            put(q + 2, 1);
            put(q + 1, k - 1);
            put(q - 1, k + 1);
            put(q, k * k - 2 * k - 1 + 2 * k + 1);
        }
        NamedFamily::ThetaMinusE { k, q, r } => {
            let (k, q, r) = (k as i64, q as i64, r as i64);
            put(q + 2, 1);
            put(q + 1, r * k - 2);
            put(q, k * k - r * k + 1);
        }
        NamedFamily::ThetaPlusE { k, q, r } => {
            let (k, q, r) = (k as i64, q as i64, r as i64);
            put(q + 2, 2);
            put(q + 1, r * k - 3);
            put(q, k * k - r * k);
            put(q - 1, 1);
        }
        NamedFamily::ThetaRX { k, q, r } => {
            let (k, q, r) = (k as i64, q as i64, r as i64);
            put(q + 2 * r, 1);
            put(q + r, k + 2);
            put(q, k * k - k - 7);
            put(q - r, 4);
        }
        NamedFamily::K2Triple { .. } | NamedFamily::K3Triple { .. } => return None,
    }
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star_map(a: &IntersectionTensor) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &x in a.entries() {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn l4_first_row() {
        let f = NamedFamily::L { k: 4, q: 11 };
        let n = named_array(&f).unwrap();
        assert_eq!(n.rows()[0], vec![13, 11, 10, 10]);
        assert_eq!(n.margin().unwrap(), 44);
        assert_eq!(star_map(&n), named_array_star(&f).unwrap());
    }

    #[test]
    fn k2_triple_cases() {
        let w = named_array(&NamedFamily::K2Triple { l: 10 }).unwrap();
        assert_eq!(w.margin().unwrap(), 10);
        assert!(w.arises_from(&named_array(&NamedFamily::K2 { l: 10 }).unwrap()));
        for l in [12, 15, 16, 19] {
            let w = named_array(&NamedFamily::K2Triple { l }).unwrap();
            assert_eq!(w.margin().unwrap(), l);
            assert!(w.arises_from(&named_array(&NamedFamily::K2 { l }).unwrap()));
        }
        assert!(named_array(&NamedFamily::K2Triple { l: 13 }).is_err());
    }

    #[test]
    fn parse_from_l() {
        assert_eq!(NamedFamily::parse("other3", Some(3), Some(16), None, None).unwrap(), NamedFamily::Other3 { k: 3, q: 5, eps: 1 });
        assert_eq!(NamedFamily::parse("theta_rx", Some(5), Some(34), None, None).unwrap(), NamedFamily::ThetaRX { k: 5, q: 7, r: -1 });
        assert_eq!(NamedFamily::parse("theta_minus_e", Some(6), None, Some(2), Some(3)).unwrap(), NamedFamily::ThetaMinusE { k: 6, q: 2, r: 3 });
    }
}
