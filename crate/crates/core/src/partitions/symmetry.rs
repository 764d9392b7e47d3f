use super::IntersectionTensor;
use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::oracle::brute::all_perms;
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::HashMap;

/// Groups larger than this are reported by order only.
pub const MAX_LISTED: u64 = 40_320;

/// `K_A`: tuples `(σ_1, …, σ_t)` of permutations of `[k]` with
/// `A[σ_1(i_1), …, σ_t(i_t)] = A[i_1, …, i_t]` for every index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArraySymmetry {
    pub order: u64,
    /// Every element as `t` permutations in 1-based image form, when
    /// `order <= MAX_LISTED`.
    pub elements: Option<Vec<Vec<Vec<usize>>>>,
}

impl ArraySymmetry {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

fn guard(a: &IntersectionTensor) -> Result<()> {
    let limit = match a.t() {
        2 => 7,
        3 => 5,
        t => return Err(Error::invalid(format!("symmetry search supports t in {{2, 3}}, got {t}"))),
    };
    if a.k() > limit {
        return Err(Error::cap("k for coordinatewise symmetry search", a.k() as u128, limit as u128));
    }
    Ok(())
}

/// Sorted entries of every hyperplane `index[axis] = i`.
fn slice_profiles(a: &IntersectionTensor, axis: usize) -> Vec<Vec<u32>> {
    let (k, t) = (a.k(), a.t());
    let stride = k.pow((t - 1 - axis) as u32);
    let mut out = vec![Vec::new(); k];
    for (idx, &e) in a.entries().iter().enumerate() {
        out[(idx / stride) % k].push(e);
    }
    for v in &mut out {
        v.sort_unstable();
    }
    out
}

/// The coordinatewise symmetry group of a 2- or 3-array.
///
/// Permutations of all but the last axis are enumerated within classes of
/// hyperplanes with equal entry multisets; for each, the last axis is counted
/// by matching its fibres, giving `∏ (multiplicity)!` completions when the two
/// fibre multisets agree.
pub fn array_symmetries(a: &IntersectionTensor) -> Result<ArraySymmetry> {
    guard(a)?;
    let (k, t) = (a.k(), a.t());
    let perms = all_perms(k);
    let allowed: Vec<Vec<usize>> = (0..t - 1)
        .map(|axis| {
            let prof = slice_profiles(a, axis);
            (0..perms.len()).filter(|&p| (0..k).all(|i| prof[perms[p][i]] == prof[i])).collect()
        })
        .collect();
    let fibre = |prefix_idx: usize| &a.entries()[prefix_idx * k..(prefix_idx + 1) * k];
    let prefix_len = k.pow((t - 1) as u32);
    let mut own: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for c in 0..k {
        let column: Vec<u32> = (0..prefix_len).map(|p| fibre(p)[c]).collect();
        own.entry(column).or_default().push(c);
    }
    let mut order = 0u64;
    let mut listed: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut keep = true;
    let mut tuple = vec![0usize; t - 1];
    loop {
        // Image of every prefix under the chosen permutations.
        let image: Vec<usize> = (0..prefix_len)
            .map(|p| {
                let mut rest = p;
                let mut coords = vec![0; t - 1];
                for axis in (0..t - 1).rev() {
                    coords[axis] = rest % k;
                    rest /= k;
                }
                coords.iter().enumerate().fold(0, |acc, (axis, &c)| acc * k + perms[allowed[axis][tuple[axis]]][c])
            })
            .collect();
        // Last-axis column c must map to a column c' with A[image(p)][c'] = A[p][c].
        let mut targets: Vec<&Vec<usize>> = Vec::with_capacity(k);
        let mut demand: HashMap<&Vec<u32>, usize> = HashMap::new();
        let mut ok = true;
        for c in 0..k {
            let column: Vec<u32> = (0..prefix_len).map(|p| fibre(p)[c]).collect();
            // Column of A after relabelling: want c' with fibre(image[p])[c'] == column[p].
            let want: Vec<u32> = {
                let mut w = vec![0; prefix_len];
                for p in 0..prefix_len {
                    w[image[p]] = column[p];
                }
                w
            };
            match own.get_key_value(&want) {
                Some((key, cs)) => {
                    *demand.entry(key).or_default() += 1;
                    targets.push(cs);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        ok = ok && demand.iter().all(|(key, &d)| own[*key].len() == d);
        if ok {
            let count: u64 = own.values().map(|cs| (1..=cs.len() as u64).product::<u64>()).product();
            order += count;
            if order > MAX_LISTED {
                keep = false;
            }
            if keep {
                let head: Vec<Vec<usize>> =
                    (0..t - 1).map(|axis| perms[allowed[axis][tuple[axis]]].iter().map(|x| x + 1).collect()).collect();
                for last in last_axis_maps(&targets, k) {
                    let mut element = head.clone();
                    element.push(last.iter().map(|x| x + 1).collect());
                    listed.push(element);
                }
            }
        }
        let mut axis = t - 1;
        loop {
            if axis == 0 {
                return Ok(ArraySymmetry { order, elements: keep.then_some(listed) });
            }
            axis -= 1;
            tuple[axis] += 1;
            if tuple[axis] < allowed[axis].len() {
                break;
            }
            tuple[axis] = 0;
        }
    }
}

/// All bijections `c ↦ c'` with `c' ∈ targets[c]`.
fn last_axis_maps(targets: &[&Vec<usize>], k: usize) -> Vec<Vec<usize>> {
    fn rec(c: usize, targets: &[&Vec<usize>], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if c == targets.len() {
            out.push(cur.clone());
            return;
        }
        for &d in targets[c].iter() {
            if !used[d] {
                used[d] = true;
                cur.push(d);
                rec(c + 1, targets, used, cur, out);
                cur.pop();
                used[d] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(0, targets, &mut vec![false; k], &mut Vec::new(), &mut out);
    out
}

/// `|K_A| · ∏ a!`: the order of the stabiliser in `S_{kl}` of any tuple of
/// partitions with intersection array `A`.
pub fn stab_order(a: &IntersectionTensor) -> Result<BigUint> {
    let k = array_symmetries(a)?.order;
    Ok(entry_factorials(a) * BigUint::from(k))
}

/// `∏ a!` over the entries.
pub fn entry_factorials(a: &IntersectionTensor) -> BigUint {
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for &e in a.entries() {
        *counts.entry(e).or_default() += 1;
    }
    counts.into_iter().map(|(e, m)| factorial(e as u64).pow(m)).product()
}

/// `θ(v)`: the `k × k` matrix with `(i, j)` entry `v[(j - i) mod k]`.
pub fn theta(v: &[u32]) -> IntersectionTensor {
    let k = v.len();
    let entries = (0..k * k).map(|idx| v[(idx % k + k - idx / k) % k]).collect();
    IntersectionTensor::new(k, 2, entries).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute::array_symmetry_order;

    fn m(rows: &[&[u32]]) -> IntersectionTensor {
        IntersectionTensor::matrix(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn flat_arrays() {
        for k in 2..=4 {
            let flat = IntersectionTensor::new(k, 2, vec![3; k * k]).unwrap();
            let f = (1..=k as u64).product::<u64>();
            assert_eq!(array_symmetries(&flat).unwrap().order, f * f);
        }
        let cube = IntersectionTensor::new(3, 3, vec![1; 27]).unwrap();
        assert_eq!(array_symmetries(&cube).unwrap().order, 216);
    }

    #[test]
    fn two_by_two_rule() {
        assert_eq!(array_symmetries(&m(&[&[6, 4], &[4, 6]])).unwrap().order, 2);
        assert_eq!(array_symmetries(&m(&[&[5, 5], &[5, 5]])).unwrap().order, 4);
        assert_eq!(stab_order(&IntersectionTensor::scalar(2, 3)).unwrap(), BigUint::from(2u32 * 36));
    }

    #[test]
    fn elements_fix_the_array() {
        let a = theta(&[2, 1, 0, 0]);
        let sym = array_symmetries(&a).unwrap();
        assert_eq!(sym.order, array_symmetry_order(4, 2, a.entries()));
        let elements = sym.elements.unwrap();
        assert_eq!(elements.len() as u64, sym.order);
        for e in elements {
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(a.get(&[e[0][i] - 1, e[1][j] - 1]), a.get(&[i, j]));
                }
            }
        }
    }

    #[test]
    fn theta_layout() {
        assert_eq!(theta(&[3, 0, 0]), IntersectionTensor::scalar(3, 3));
        assert_eq!(theta(&[1, 1, 0]), m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]));
    }

    #[test]
    fn guard_refuses() {
        let big = IntersectionTensor::new(8, 2, vec![1; 64]).unwrap();
        assert!(matches!(array_symmetries(&big), Err(Error::CapExceeded { .. })));
    }
}
