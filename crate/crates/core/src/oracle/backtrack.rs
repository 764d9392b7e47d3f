//! Setwise stabilisers of partitions by backtracking over point images.
//!
//! Unlike [`super::ExplicitGroup::symmetric`] this never materialises `S_n`,
//! so it reaches degrees like 21 as long as the stabiliser itself is small.

use super::group::ExplicitGroup;
use super::perm::Perm;
use crate::{Error, Result};
use num_bigint::BigUint;

struct Frame<'a> {
    degree: usize,
    /// `part_of[p][x]` = index of the part of partition `p` containing `x`.
    part_of: Vec<Vec<usize>>,
    part_len: Vec<Vec<usize>>,
    order: Vec<usize>,
    limit: u64,
    visit: &'a mut dyn FnMut(&[usize]) -> bool,
}

fn validate(degree: usize, partitions: &[Vec<Vec<usize>>]) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    let mut part_of = Vec::new();
    let mut part_len = Vec::new();
    for (pi, parts) in partitions.iter().enumerate() {
        let mut owner = vec![usize::MAX; degree];
        for (j, part) in parts.iter().enumerate() {
            for &x in part {
                if x == 0 || x > degree || owner[x - 1] != usize::MAX {
                    return Err(Error::invalid(format!("partition {pi} is not a partition of [{degree}]")));
                }
                owner[x - 1] = j;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::invalid(format!("partition {pi} does not cover [{degree}]")));
        }
        part_len.push(parts.iter().map(Vec::len).collect());
        part_of.push(owner);
    }
    Ok((part_of, part_len))
}

fn run(frame: &mut Frame<'_>) -> Result<()> {
    let n = frame.degree;
    let np = frame.part_of.len();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut part_map: Vec<Vec<usize>> = frame.part_len.iter().map(|l| vec![usize::MAX; l.len()]).collect();
    let mut part_inv = part_map.clone();
    let mut nodes = 0u64;
    fn rec(
        f: &mut Frame<'_>,
        depth: usize,
        np: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        part_map: &mut Vec<Vec<usize>>,
        part_inv: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > f.limit {
            return Err(Error::BudgetExhausted { budget: f.limit, lower_bound: 0 });
        }
        if depth == f.degree {
            return Ok((f.visit)(image));
        }
        let x = f.order[depth];
        for y in 0..f.degree {
            if used[y] {
                continue;
            }
            let mut newly = Vec::new();
            let mut ok = true;
            for p in 0..np {
                let a = f.part_of[p][x];
                let b = f.part_of[p][y];
                if part_map[p][a] == usize::MAX {
                    if part_inv[p][b] != usize::MAX || f.part_len[p][a] != f.part_len[p][b] {
                        ok = false;
                        break;
                    }
                    part_map[p][a] = b;
                    part_inv[p][b] = a;
                    newly.push(p);
                } else if part_map[p][a] != b {
                    ok = false;
                    break;
                }
            }
            if ok {
                image[x] = y;
                used[y] = true;
                let keep_going = rec(f, depth + 1, np, image, used, part_map, part_inv, nodes)?;
                used[y] = false;
                image[x] = usize::MAX;
                if !keep_going {
                    for &p in &newly {
                        let a = f.part_of[p][x];
                        part_inv[p][part_map[p][a]] = usize::MAX;
                        part_map[p][a] = usize::MAX;
                    }
                    return Ok(false);
                }
            }
            for &p in &newly {
                let a = f.part_of[p][x];
                part_inv[p][part_map[p][a]] = usize::MAX;
                part_map[p][a] = usize::MAX;
            }
        }
        Ok(true)
    }
    rec(frame, 0, np, &mut image, &mut used, &mut part_map, &mut part_inv, &mut nodes)?;
    Ok(())
}

fn point_order(degree: usize, partitions: &[Vec<Vec<usize>>]) -> Vec<usize> {
    // Walk the parts of the first partition so that part constraints bite early.
    let mut order = Vec::with_capacity(degree);
    let mut seen = vec![false; degree];
    if let Some(first) = partitions.first() {
        for part in first {
            for &x in part {
                if !seen[x - 1] {
                    seen[x - 1] = true;
                    order.push(x - 1);
                }
            }
        }
    }
    order.extend((0..degree).filter(|&x| !seen[x]));
    order
}

/// All permutations of `[degree]` mapping each given partition to itself
/// (parts may be permuted among themselves). Parts are one-based.
pub fn partition_stabiliser(
    degree: usize,
    partitions: &[Vec<Vec<usize>>],
    max_elements: usize,
) -> Result<ExplicitGroup> {
    let (part_of, part_len) = validate(degree, partitions)?;
    let mut elements = Vec::new();
    let mut overflow = false;
    let mut visit = |img: &[usize]| {
        if elements.len() >= max_elements {
            overflow = true;
            return false;
        }
        elements.push(Perm::new(img.to_vec()).expect("backtracking yields bijections"));
        true
    };
    let mut frame = Frame {
        degree,
        part_of,
        part_len,
        order: point_order(degree, partitions),
        limit: u64::MAX,
        visit: &mut visit,
    };
    run(&mut frame)?;
    if overflow {
        return Err(Error::cap("stabiliser order", (max_elements + 1) as u128, max_elements as u128));
    }
    ExplicitGroup::from_elements(degree, elements)
}

/// Order of the common setwise stabiliser of the given partitions, counted by
/// backtracking with a node budget.
pub fn partition_stabiliser_order(degree: usize, partitions: &[Vec<Vec<usize>>], node_budget: u64) -> Result<BigUint> {
    let (part_of, part_len) = validate(degree, partitions)?;
    let mut count = BigUint::from(0u32);
    let mut visit = |_: &[usize]| {
        count += 1u32;
        true
    };
    let mut frame = Frame {
        degree,
        part_of,
        part_len,
        order: point_order(degree, partitions),
        limit: node_budget,
        visit: &mut visit,
    };
    run(&mut frame)?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_product_order() {
        // S_2 wr S_3 has order 2^3 * 3! = 48.
        let p = vec![vec![1, 2], vec![3, 4], vec![5, 6]];
        let g = partition_stabiliser(6, &[p.clone()], 1000).unwrap();
        assert_eq!(g.order(), 48);
        assert!(g.is_closed());
        assert_eq!(partition_stabiliser_order(6, &[p], 1 << 20).unwrap(), BigUint::from(48u32));
    }

    #[test]
    fn dihedral_two_point_stabiliser() {
        let p = vec![vec![1, 2], vec![3, 4], vec![5, 6]];
        let q = vec![vec![6, 1], vec![2, 3], vec![4, 5]];
        assert_eq!(partition_stabiliser_order(6, &[p, q], 1 << 20).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(partition_stabiliser_order(4, &[vec![vec![1, 2], vec![2, 3]]], 100).is_err());
    }
}
