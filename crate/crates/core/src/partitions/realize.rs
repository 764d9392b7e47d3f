use super::{IntersectionTensor, KLPartition};
use crate::error::{Error, Result};

/// Two partitions `(P, Q)` with `M(P, Q) = n`.
///
/// Points are handed out in increasing order, cell by cell in row-major
/// order, so `P_i` is the `i`-th block of `l` consecutive points.
pub fn realize2(n: &IntersectionTensor) -> Result<(KLPartition, KLPartition)> {
    if n.t() != 2 {
        return Err(Error::invalid("realize2 needs a 2-array"));
    }
    let l = n.margin()?;
    if l == 0 {
        return Err(Error::margin("margins are zero"));
    }
    let k = n.k();
    let mut p = vec![Vec::new(); k];
    let mut q = vec![Vec::new(); k];
    let mut next = 1;
    for i in 0..k {
        for j in 0..k {
            for _ in 0..n.get(&[i, j]) {
                p[i].push(next);
                q[j].push(next);
                next += 1;
            }
        }
    }
    Ok((KLPartition::new(p)?, KLPartition::new(q)?))
}

/// A third partition `T` with `M(P, Q, T) = w`.
///
/// Slice `s` collects, from every cell `P_i ∩ Q_j`, the smallest `w_{ijs}`
/// points not used by earlier slices.
pub fn realize3(w: &IntersectionTensor, p: &KLPartition, q: &KLPartition) -> Result<KLPartition> {
    if w.t() != 3 {
        return Err(Error::invalid("realize3 needs a 3-array"));
    }
    let k = w.k();
    if p.k() != k || q.k() != k || p.l() != q.l() {
        return Err(Error::invalid("partition shapes do not match the array"));
    }
    let l = p.l() as u64;
    let (lp, lq) = (p.labels(), q.labels());
    let mut cells = vec![Vec::new(); k * k];
    for point in 0..p.degree() {
        cells[lp[point] * k + lq[point]].push(point + 1);
    }
    for i in 0..k {
        for j in 0..k {
            let want: u64 = (0..k).map(|s| w.get(&[i, j, s]) as u64).sum();
            let have = cells[i * k + j].len() as u64;
            if want != have {
                return Err(Error::margin(format!(
                    "cell ({}, {}): fibre sums to {want} but |P_{} ∩ Q_{}| = {have}",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    for s in 0..k {
        let sum = w.slice_sum(2, s);
        if sum != l {
            return Err(Error::margin(format!("slice {} sums to {sum}, expected {l}", s + 1)));
        }
    }
    let mut parts = vec![Vec::new(); k];
    for (c, cell) in cells.iter().enumerate() {
        let mut rest = cell.as_slice();
        for (s, part) in parts.iter_mut().enumerate() {
            let take = w.get(&[c / k, c % k, s]) as usize;
            part.extend_from_slice(&rest[..take]);
            rest = &rest[take..];
        }
    }
    KLPartition::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::intersection_tensor;

    #[test]
    fn scalar_realizes_equal_partitions() {
        let (p, q) = realize2(&IntersectionTensor::scalar(2, 5)).unwrap();
        assert_eq!(p, q);
        assert_eq!(p, KLPartition::standard(2, 5).unwrap());
    }

    #[test]
    fn round_trip() {
        let n = IntersectionTensor::matrix(&[vec![3, 2, 0], vec![1, 1, 3], vec![1, 2, 2]]).unwrap();
        let (p, q) = realize2(&n).unwrap();
        assert_eq!(intersection_tensor(&[p.clone(), q.clone()]).unwrap(), n);
        // Concentrating each cell in slice j reproduces Q.
        let mut entries = vec![0u32; 27];
        for i in 0..3 {
            for j in 0..3 {
                entries[(i * 3 + j) * 3 + j] = n.get(&[i, j]);
            }
        }
        let w = IntersectionTensor::new(3, 3, entries).unwrap();
        let t = realize3(&w, &p, &q).unwrap();
        assert_eq!(t, q);
        assert_eq!(intersection_tensor(&[p, q, t]).unwrap(), w);
    }

    #[test]
    fn realize3_names_failures() {
        let n = IntersectionTensor::matrix(&[vec![2, 0], vec![0, 2]]).unwrap();
        let (p, q) = realize2(&n).unwrap();
        let bad_cell = IntersectionTensor::new(2, 3, vec![1, 0, 0, 0, 0, 0, 1, 1]).unwrap();
        assert!(realize3(&bad_cell, &p, &q).unwrap_err().to_string().contains("cell (1, 1)"));
        let bad_slice = IntersectionTensor::new(2, 3, vec![2, 0, 0, 0, 0, 0, 1, 1]).unwrap();
        assert!(realize3(&bad_slice, &p, &q).unwrap_err().to_string().contains("slice 1"));
    }
}
