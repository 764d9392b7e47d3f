use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A permutation of `{0, .., n-1}` stored as its image list.
///
/// Points are zero-based internally; [`Perm::from_one_based`] and
/// [`Perm::one_based`] convert at the boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n as u8).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        if n > 255 {
            return Err(Error::invalid("permutation degree above 255"));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::invalid(format!("{images:?} is not a bijection on 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Perm { images: images.into_iter().map(|x| x as u8).collect() })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Perm> {
        if images.contains(&0) {
            return Err(Error::invalid("one-based images must be positive"));
        }
        Perm::new(images.iter().map(|&x| x - 1).collect())
    }

    /// Build from disjoint cycles written with one-based points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x == 0 || y == 0 || x > n || y > n {
                    return Err(Error::invalid(format!("cycle point out of range 1..={n}")));
                }
                images[x - 1] = y - 1;
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images().map(|x| x + 1).collect()
    }

    /// `self` then `other`: `x -> other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn is_even(&self) -> bool {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for i in 0..n {
            if !seen[i] {
                cycles += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = self.images[j] as usize;
                }
            }
        }
        (n - cycles) % 2 == 0
    }

    /// Image of a bitmask of points.
    #[inline]
    pub fn map_mask(&self, mut mask: u64) -> u64 {
        let mut out = 0u64;
        while mask != 0 {
            let b = mask.trailing_zeros() as usize;
            out |= 1u64 << self.images[b];
            mask &= mask - 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let p = Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        assert_eq!(p.one_based(), vec![2, 3, 1, 4]);
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.is_even());
        let t = Perm::from_cycles(4, &[&[1, 4]]).unwrap();
        assert!(!t.is_even());
        assert_eq!(p.then(&t).apply(2), 3);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3, 1]).is_err());
    }
}
