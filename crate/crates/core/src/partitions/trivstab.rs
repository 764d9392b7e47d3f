use super::symmetry::array_symmetries;
use super::{intersection_tensor, realize2, IntersectionTensor, KLPartition};
use crate::error::{Error, Result};
use crate::oracle::partition_stabiliser_order;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Degrees up to this are checked by the backtracking oracle.
const ORACLE_DEGREE: usize = 24;
const ORACLE_NODES: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivstabReport {
    pub t: KLPartition,
    /// Cells of size 2.
    pub i_count: usize,
    /// 2-cycles of the involution on non-empty cells.
    pub transpositions: usize,
    pub fixed_points: Vec<usize>,
    pub t1: Vec<usize>,
    pub t2: Vec<usize>,
    /// `|G_{P,Q,T}|` from the oracle, when the degree allows.
    pub oracle_order: Option<BigUint>,
}

fn fail(which: &'static str, detail: impl Into<String>) -> Error {
    Error::hypothesis(which, detail)
}

/// The involution of `K_N`, as row and column images, after checking the
/// hypotheses that only involve `N`.
fn involution(n: &IntersectionTensor, l: u32) -> Result<(Vec<usize>, Vec<usize>, usize, usize)> {
    let k = n.k();
    if k < 7 {
        return Err(fail("trivstab k", format!("k = {k} < 7")));
    }
    if n.max_entry() > 2 {
        return Err(fail("trivstab entries", format!("N has entry {} > 2", n.max_entry())));
    }
    let sym = array_symmetries(n)?;
    if sym.order != 2 {
        return Err(fail("trivstab (i)", format!("|K_N| = {}, need an involution", sym.order)));
    }
    let elements = sym.elements.expect("order 2 is listed");
    let sigma = elements.into_iter().find(|g| g.iter().any(|p| p.iter().enumerate().any(|(i, &x)| x != i + 1))).expect("non-identity");
    let rows: Vec<usize> = sigma[0].iter().map(|x| x - 1).collect();
    let cols: Vec<usize> = sigma[1].iter().map(|x| x - 1).collect();
    let mut moved = 0;
    let mut moved_single = false;
    for i in 0..k {
        for j in 0..k {
            let v = n.get(&[i, j]);
            if v > 0 && (rows[i], cols[j]) != (i, j) {
                moved += 1;
                moved_single |= v == 1;
            }
        }
    }
    let t = moved / 2;
    if !moved_single {
        return Err(fail("trivstab (ii)", "no cell of size 1 is moved by the involution"));
    }
    let i_count = n.multiplicity(2);
    if i_count + 3 > 2 * l as usize {
        return Err(fail("trivstab (iii)", format!("|I| = {i_count} > 2l - 3 = {}", 2 * l as i64 - 3)));
    }
    if 2 * (i_count + t) + 2 > k * l as usize {
        return Err(fail("trivstab (iv)", format!("|I| + t = {} > kl/2 - 1 = {}", i_count + t, (k * l as usize) as f64 / 2.0 - 1.0)));
    }
    Ok((rows, cols, i_count, t))
}

/// A third partition `T` with `G_{P,Q,T} = 1`.
///
/// `T` contains the smaller point of every 2-cell, the point of the first
/// moved 1-cell, and fixed points of `G_{P,Q}`, topped up with more fixed
/// points and then further moved 1-cells; this `2l`-set is split into two
/// parts each holding a fixed point, and the rest of `[kl]` is cut into
/// consecutive blocks.
pub fn trivstab_construct(p: &KLPartition, q: &KLPartition) -> Result<TrivstabReport> {
    let n = intersection_tensor(&[p.clone(), q.clone()])?;
    let (k, l) = (p.k(), p.l());
    let (rows, cols, i_count, transpositions) = involution(&n, l as u32)?;
    let mut cell_points = vec![Vec::new(); k * k];
    let (pl, ql) = (p.labels(), q.labels());
    for x in 1..=k * l {
        cell_points[pl[x - 1] * k + ql[x - 1]].push(x);
    }
    let mut bs = Vec::new();
    let mut fixed = Vec::new();
    let mut j1 = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let pts = &cell_points[i * k + j];
            let image = (rows[i], cols[j]);
            match pts.len() {
                2 => bs.push(pts[0]),
                1 if image == (i, j) => fixed.push(pts[0]),
                1 if (i, j) < image => j1.push(pts[0]),
                _ => {}
            }
        }
    }
    if fixed.len() < 2 {
        return Err(fail("trivstab fixed points", format!("G_(P,Q) fixes {} points, need 2", fixed.len())));
    }
    let mut tset = bs;
    tset.push(j1[0]);
    let (f1, f2) = (fixed[0], fixed[1]);
    let filler = fixed[2..].iter().chain(&j1[1..]).copied();
    let mut rest: Vec<usize> = tset.into_iter().chain(filler).take(2 * l - 2).collect();
    if rest.len() < 2 * l - 2 {
        return Err(fail("trivstab size", format!("only {} points available for a {}-set", rest.len() + 2, 2 * l)));
    }
    let tail = rest.split_off(l - 1);
    let mut t1 = vec![f1];
    t1.extend(rest);
    let mut t2 = vec![f2];
    t2.extend(tail);
    t1.sort_unstable();
    t2.sort_unstable();
    let mut used = vec![false; k * l + 1];
    for &x in t1.iter().chain(&t2) {
        used[x] = true;
    }
    let others: Vec<usize> = (1..=k * l).filter(|&x| !used[x]).collect();
    let mut parts = vec![t1.clone(), t2.clone()];
    parts.extend(others.chunks(l).map(|c| c.to_vec()));
    let t = KLPartition::new(parts)?.canonical();
    let oracle_order = if k * l <= ORACLE_DEGREE {
        let parts: Vec<Vec<Vec<usize>>> = [p, q, &t].iter().map(|x| x.parts().to_vec()).collect();
        Some(partition_stabiliser_order(k * l, &parts, ORACLE_NODES)?)
    } else {
        None
    };
    Ok(TrivstabReport { t, i_count, transpositions, fixed_points: fixed, t1, t2, oracle_order })
}

/// Seeded search for `(P, Q)` satisfying every hypothesis, by summing `l`
/// random permutation matrices.
pub fn trivstab_instance(k: usize, l: usize, seed: u64, attempts: u64) -> Result<(KLPartition, KLPartition)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..k).collect();
    for _ in 0..attempts {
        let mut entries = vec![0u32; k * k];
        for _ in 0..l {
            perm.shuffle(&mut rng);
            for (i, &j) in perm.iter().enumerate() {
                entries[i * k + j] += 1;
            }
        }
        if entries.iter().any(|&x| x > 2) {
            continue;
        }
        let n = IntersectionTensor::new(k, 2, entries)?;
        if involution(&n, l as u32).is_ok() {
            return realize2(&n);
        }
    }
    Err(Error::cap("trivstab instance attempts", attempts, attempts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_trivial_k() {
        let v = [1, 1, 0, 0, 0, 0, 0];
        let n = super::super::theta(&v);
        let (p, q) = realize2(&n).unwrap();
        let err = trivstab_construct(&p, &q).unwrap_err().to_string();
        assert!(err.contains("(i)"), "{err}");
    }
}
