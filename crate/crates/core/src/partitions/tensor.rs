use super::KLPartition;
use crate::error::{Error, Result};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

/// A `k × … × k` array (`t` axes) of non-negative integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntersectionTensor {
    k: usize,
    t: usize,
    entries: Vec<u32>,
}

impl IntersectionTensor {
    pub fn new(k: usize, t: usize, entries: Vec<u32>) -> Result<Self> {
        if k == 0 || t == 0 {
            return Err(Error::invalid("k and t must be positive"));
        }
        let len = k.checked_pow(t as u32).ok_or_else(|| Error::invalid("tensor too large"))?;
        if entries.len() != len {
            return Err(Error::invalid(format!("expected {len} entries, got {}", entries.len())));
        }
        Ok(IntersectionTensor { k, t, entries })
    }

    /// A 2-array from its rows.
    pub fn matrix(rows: &[Vec<u32>]) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::invalid("matrix must be square"));
        }
        Self::new(k, 2, rows.concat())
    }

    /// A 3-array from `k × k` cells, each a length-`k` fibre along the last axis.
    pub fn cube(cells: &[Vec<Vec<u32>>]) -> Result<Self> {
        let k = cells.len();
        if cells.iter().any(|row| row.len() != k || row.iter().any(|c| c.len() != k)) {
            return Err(Error::invalid("3-array must be k x k x k"));
        }
        Self::new(k, 3, cells.iter().flat_map(|row| row.iter().flatten().copied()).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, index: &[usize]) -> u32 {
        self.entries[self.flat(index)]
    }

    pub fn flat(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.t);
        index.iter().fold(0, |acc, &i| acc * self.k + i)
    }

    pub fn add(&mut self, index: &[usize], delta: i64) -> Result<()> {
        let at = self.flat(index);
        let v = self.entries[at] as i64 + delta;
        if v < 0 {
            return Err(Error::invalid(format!("entry at {index:?} would become {v}")));
        }
        self.entries[at] = v as u32;
        Ok(())
    }

    /// Rows of a 2-array.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.entries.len() / self.k).map(<[u32]>::to_vec).collect()
    }

    /// Entry multiset `A*`, sorted increasingly.
    pub fn star(&self) -> Vec<u32> {
        let mut v = self.entries.clone();
        v.sort_unstable();
        v
    }

    /// `ω_A(x)`.
    pub fn multiplicity(&self, x: u32) -> usize {
        self.entries.iter().filter(|&&e| e == x).count()
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&e| e as u64).sum()
    }

    /// Sum over the hyperplane `index[axis] = i`.
    pub fn slice_sum(&self, axis: usize, i: usize) -> u64 {
        let stride = self.k.pow((self.t - 1 - axis) as u32);
        self.entries
            .iter()
            .enumerate()
            .filter(|(idx, _)| (idx / stride) % self.k == i)
            .map(|(_, &e)| e as u64)
            .sum()
    }

    /// The common part size `l` when every axis-slice sums to the same value.
    pub fn margin(&self) -> Result<u32> {
        let l = self.total() / self.k as u64;
        for axis in 0..self.t {
            for i in 0..self.k {
                let s = self.slice_sum(axis, i);
                if s != l {
                    let what = ["row", "column", "slice"].get(axis).copied().unwrap_or("hyperplane");
                    return Err(Error::margin(format!("{what} {} sums to {s}, expected {l}", i + 1)));
                }
            }
        }
        Ok(l as u32)
    }

    /// Sum along the last axis: the `(t-1)`-array this array arises from.
    pub fn collapse(&self) -> IntersectionTensor {
        let entries = self.entries.chunks(self.k).map(|c| c.iter().sum()).collect();
        IntersectionTensor { k: self.k, t: self.t - 1, entries }
    }

    /// Whether summing along the last axis gives `base`.
    pub fn arises_from(&self, base: &IntersectionTensor) -> bool {
        self.t == base.t + 1 && self.k == base.k && self.collapse() == *base
    }

    pub fn transpose(&self) -> Result<IntersectionTensor> {
        if self.t != 2 {
            return Err(Error::invalid("transpose needs a 2-array"));
        }
        let k = self.k;
        let entries = (0..k * k).map(|idx| self.entries[(idx % k) * k + idx / k]).collect();
        Ok(IntersectionTensor { k, t: 2, entries })
    }

    /// `l·I`.
    pub fn scalar(k: usize, l: u32) -> Self {
        let entries = (0..k * k).map(|idx| if idx / k == idx % k { l } else { 0 }).collect();
        IntersectionTensor { k, t: 2, entries }
    }
}

/// `m_{i_1…i_t} = |P_{1 i_1} ∩ … ∩ P_{t i_t}|`, with parts in their stored order.
pub fn intersection_tensor(parts: &[KLPartition]) -> Result<IntersectionTensor> {
    let first = parts.first().ok_or_else(|| Error::invalid("need at least one partition"))?;
    let (k, l) = (first.k(), first.l());
    if let Some(p) = parts.iter().find(|p| p.k() != k || p.l() != l) {
        return Err(Error::invalid(format!("mixed shapes ({k}, {l}) and ({}, {})", p.k(), p.l())));
    }
    let labels: Vec<Vec<usize>> = parts.iter().map(KLPartition::labels).collect();
    let mut entries = vec![0u32; k.pow(parts.len() as u32)];
    for point in 0..k * l {
        let idx = labels.iter().fold(0, |acc, lab| acc * k + lab[point]);
        entries[idx] += 1;
    }
    IntersectionTensor::new(k, parts.len(), entries)
}

struct Nested<'a> {
    k: usize,
    depth: usize,
    data: &'a [u32],
}

impl Serialize for Nested<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.k))?;
        if self.depth == 1 {
            for e in self.data {
                seq.serialize_element(e)?;
            }
        } else {
            for chunk in self.data.chunks(self.data.len() / self.k) {
                seq.serialize_element(&Nested { k: self.k, depth: self.depth - 1, data: chunk })?;
            }
        }
        seq.end()
    }
}

/// Serialised as `{"k": k, "t": t, "entries": [[…], …]}` with `t` levels of nesting.
impl Serialize for IntersectionTensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IntersectionTensor", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("entries", &Nested { k: self.k, depth: self.t, data: &self.entries })?;
        st.end()
    }
}

impl std::fmt::Display for IntersectionTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k = self.k;
        match self.t {
            2 => {
                for (i, row) in self.entries.chunks(k).enumerate() {
                    let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                    write!(f, "{}[{}]", if i > 0 { "\n" } else { "" }, cells.join(" "))?;
                }
                Ok(())
            }
            3 => {
                for (i, row) in self.entries.chunks(k * k).enumerate() {
                    let cells: Vec<String> = row
                        .chunks(k)
                        .map(|c| format!("({})", c.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
                        .collect();
                    write!(f, "{}[{}]", if i > 0 { "\n" } else { "" }, cells.join(" "))?;
                }
                Ok(())
            }
            _ => write!(f, "{:?}", self.entries),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_intersection_is_scalar() {
        let p = KLPartition::standard(3, 4).unwrap();
        let m = intersection_tensor(&[p.clone(), p]).unwrap();
        assert_eq!(m, IntersectionTensor::scalar(3, 4));
        assert_eq!(m.margin().unwrap(), 4);
    }

    #[test]
    fn margins_name_the_offender() {
        let m = IntersectionTensor::matrix(&[vec![2, 1], vec![0, 2]]).unwrap();
        let err = m.margin().unwrap_err().to_string();
        assert!(err.contains("row 1"), "{err}");
    }

    #[test]
    fn slices_and_collapse() {
        let w = IntersectionTensor::cube(&[
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![1, 0]],
        ])
        .unwrap();
        assert_eq!(w.get(&[0, 1, 1]), 1);
        assert_eq!(w.slice_sum(2, 0), 2);
        assert_eq!(w.collapse(), IntersectionTensor::matrix(&[vec![1, 1], vec![1, 1]]).unwrap());
    }
}
