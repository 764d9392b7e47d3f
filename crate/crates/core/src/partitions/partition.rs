use crate::error::{Error, Result};
use serde::Serialize;

/// A partition of `[kl]` into `k` parts of size `l`.
///
/// Parts keep the order they were given in, since intersection arrays are
/// indexed by part position; [`canonical`](Self::canonical) orders them by
/// smallest element. Points are 1-based and each part is stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KLPartition {
    k: usize,
    l: usize,
    parts: Vec<Vec<usize>>,
}

impl KLPartition {
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self> {
        let k = parts.len();
        let l = parts.first().map_or(0, Vec::len);
        if k == 0 || l == 0 {
            return Err(Error::invalid("a partition needs at least one non-empty part"));
        }
        let n = k * l;
        let mut seen = vec![false; n];
        let mut sorted = Vec::with_capacity(k);
        for (i, mut part) in parts.into_iter().enumerate() {
            if part.len() != l {
                return Err(Error::invalid(format!("part {} has size {}, expected {l}", i + 1, part.len())));
            }
            part.sort_unstable();
            for &p in &part {
                if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                    return Err(Error::invalid(format!("point {p} is repeated or outside [1, {n}]")));
                }
            }
            sorted.push(part);
        }
        Ok(KLPartition { k, l, parts: sorted })
    }

    /// `{{1..l}, {l+1..2l}, …}`.
    pub fn standard(k: usize, l: usize) -> Result<Self> {
        Self::new((0..k).map(|i| (i * l + 1..=(i + 1) * l).collect()).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn degree(&self) -> usize {
        self.k * self.l
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Part index (0-based) of every point, indexed by `point - 1`.
    pub fn labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.degree()];
        for (i, part) in self.parts.iter().enumerate() {
            for &p in part {
                label[p - 1] = i;
            }
        }
        label
    }

    /// The same partition with parts ordered by smallest element.
    pub fn canonical(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by_key(|p| p[0]);
        KLPartition { k: self.k, l: self.l, parts }
    }

    pub fn is_canonical(&self) -> bool {
        self.parts.windows(2).all(|w| w[0][0] < w[1][0])
    }

    /// Same underlying set partition, ignoring part order.
    pub fn same_partition(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl std::fmt::Display for KLPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| format!("{{{}}}", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(KLPartition::new(vec![vec![1, 2], vec![3, 4]]).is_ok());
        assert!(KLPartition::new(vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(KLPartition::new(vec![vec![1, 2], vec![3]]).is_err());
        assert!(KLPartition::new(vec![vec![1, 5], vec![3, 4]]).is_err());
    }

    #[test]
    fn ordering() {
        let p = KLPartition::new(vec![vec![6, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert!(p.is_canonical());
        let q = KLPartition::new(vec![vec![2, 3], vec![6, 1], vec![4, 5]]).unwrap();
        assert!(!q.is_canonical());
        assert_eq!(q.canonical(), p);
        assert_eq!(p.to_string(), "{{1,6}, {2,3}, {4,5}}");
    }
}
