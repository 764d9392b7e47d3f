use super::perm::Perm;
use crate::{Error, GroupKind, Result};

/// Largest degree for which the full element list of `S_n` is materialised.
pub const MAX_EXPLICIT_DEGREE: usize = 9;

/// A permutation group given by its complete element list.
#[derive(Clone, Debug)]
pub struct ExplicitGroup {
    degree: usize,
    elements: Vec<Perm>,
}

impl ExplicitGroup {
    /// Wrap an element list. The caller vouches for closure; use
    /// [`ExplicitGroup::is_closed`] to check it.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<ExplicitGroup> {
        if elements.iter().any(|g| g.degree() != degree) {
            return Err(Error::invalid("element of the wrong degree"));
        }
        if elements.is_empty() {
            return Err(Error::invalid("a group has at least one element"));
        }
        Ok(ExplicitGroup { degree, elements })
    }

    pub fn symmetric(n: usize) -> Result<ExplicitGroup> {
        Self::full(n, GroupKind::Sym)
    }

    pub fn alternating(n: usize) -> Result<ExplicitGroup> {
        Self::full(n, GroupKind::Alt)
    }

    pub fn full(n: usize, kind: GroupKind) -> Result<ExplicitGroup> {
        if n > MAX_EXPLICIT_DEGREE {
            return Err(Error::cap("explicit group degree", n as u128, MAX_EXPLICIT_DEGREE as u128));
        }
        let mut elements = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            let p = Perm::new(current.clone())?;
            if kind == GroupKind::Sym || p.is_even() {
                elements.push(p);
            }
            if !next_permutation(&mut current) {
                break;
            }
        }
        Ok(ExplicitGroup { degree: n, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Closed under composition and inverses. Quadratic; for tests.
    pub fn is_closed(&self) -> bool {
        let set: std::collections::HashSet<&Perm> = self.elements.iter().collect();
        self.elements.iter().all(|a| {
            set.contains(&a.inverse()) && self.elements.iter().all(|b| set.contains(&a.then(b)))
        })
    }
}

/// Lexicographic successor; false once the sequence is non-increasing.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
