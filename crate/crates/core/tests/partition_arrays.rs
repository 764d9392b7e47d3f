use greedy_bases::oracle::brute::{array_symmetry_order, contingency_tables, min_factorial_product as brute_min};
use greedy_bases::oracle::{partition_stabiliser_order, Action, Domain};
use greedy_bases::partitions::{
    all_sequences, array_symmetries, canonical_representative, entry_factorials, intersection_tensor, min_2array, min_3array,
    min_factorial_product, named_array, realize2, realize3, stab_order, theta, IntersectionTensor, KLPartition, NamedFamily,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use std::collections::BTreeSet;

/// Minimal `|K| ∏ a!` over every table, with the canonical forms attaining it.
fn brute_min_2array(k: usize, l: u32) -> (BigUint, BTreeSet<IntersectionTensor>) {
    let mut best: Option<BigUint> = None;
    let mut reps = BTreeSet::new();
    for entries in contingency_tables(k, l) {
        let a = IntersectionTensor::new(k, 2, entries).unwrap();
        let order = entry_factorials(&a) * BigUint::from(array_symmetry_order(k, 2, a.entries()));
        match &best {
            Some(b) if order > *b => continue,
            Some(b) if order == *b => {}
            _ => {
                best = Some(order);
                reps.clear();
            }
        }
        reps.insert(canonical_representative(&a));
    }
    (best.unwrap(), reps)
}

#[test]
fn min_2array_matches_enumeration() {
    for (k, ls) in [(2usize, 1..=14u32), (3, 1..=9), (4, 1..=5)] {
        for l in ls {
            let res = min_2array(k, l, 10_000_000).unwrap();
            assert!(res.complete);
            let (order, reps) = brute_min_2array(k, l);
            assert_eq!(res.min_order(), Some(&order), "k = {k}, l = {l}");
            let got: BTreeSet<_> = res.classes.iter().map(|c| c.representative.clone()).collect();
            let got_canon: BTreeSet<_> = got.iter().map(canonical_representative).collect();
            assert_eq!(got_canon, reps, "k = {k}, l = {l}");
        }
    }
}

#[test]
fn three_by_fifteen_minimiser_has_two_symmetries() {
    let (order, reps) = brute_min_2array(3, 15);
    assert_eq!(reps.len(), 1);
    let rep = reps.into_iter().next().unwrap();
    assert_eq!(array_symmetry_order(3, 2, rep.entries()), 2);
    let named = named_array(&NamedFamily::K3 { q: 5 }).unwrap();
    assert!(stab_order(&named).unwrap() > order);
    assert_eq!(min_2array(3, 15, 10_000_000).unwrap().min_order(), Some(&order));
}

#[test]
fn min_3array_matches_oracle_over_all_third_partitions() {
    for (k, l) in [(2usize, 2usize), (2, 3), (2, 4), (2, 5), (3, 2), (4, 2)] {
        let (_, reps) = brute_min_2array(k, l as u32);
        for n in reps {
            let (p, q) = realize2(&n).unwrap();
            let dom = Domain::new(k * l, Action::Partitions { k, l }).unwrap();
            let mut best: Option<BigUint> = None;
            for i in 0..dom.len() {
                let t = dom.describe(i);
                let o = partition_stabiliser_order(k * l, &[p.parts().to_vec(), q.parts().to_vec(), t], 10_000_000).unwrap();
                best = Some(best.map_or(o.clone(), |b| b.min(o)));
            }
            let res = min_3array(&n, 10_000_000).unwrap();
            assert!(res.complete);
            assert_eq!(res.min_order(), best.as_ref(), "k = {k}, l = {l}, N = {:?}", n.rows());
            for class in &res.classes {
                let t = realize3(&class.representative, &p, &q).unwrap();
                let o = partition_stabiliser_order(k * l, &[p.parts().to_vec(), q.parts().to_vec(), t.parts().to_vec()], 10_000_000)
                    .unwrap();
                assert_eq!(Some(&o), best.as_ref());
            }
        }
    }
}

#[test]
fn named_minimisers_for_two_parts() {
    for l in 10..=20 {
        let res = min_2array(2, l, 1_000_000).unwrap();
        let want = canonical_representative(&named_array(&NamedFamily::K2 { l }).unwrap());
        assert_eq!(res.classes.len(), 1);
        assert_eq!(res.classes[0].representative, want, "l = {l}");
    }
}

#[test]
fn three_parts_from_q_nine_on() {
    for q in [9, 10] {
        let res = min_2array(3, 3 * q, 10_000_000).unwrap();
        let want = canonical_representative(&named_array(&NamedFamily::K3 { q }).unwrap());
        assert_eq!(res.classes.len(), 1);
        assert_eq!(res.classes[0].representative, want, "q = {q}");
    }
}

#[test]
fn min_n_closed_form_is_exhaustive_minimum() {
    for s in 0..=12u64 {
        for t in 1..=5u64 {
            for x in all_sequences(s, t) {
                let (v, w) = min_factorial_product(&x).unwrap();
                let (bv, bw) = brute_min(s, t, &x.pairs).unwrap();
                assert_eq!(v, bv);
                assert_eq!(bw, vec![w]);
            }
        }
    }
}

fn partition(k: usize, l: usize) -> impl Strategy<Value = KLPartition> {
    Just((1..=k * l).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |pts| KLPartition::new(pts.chunks(l).map(<[usize]>::to_vec).collect()).unwrap())
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(vec![(2usize, 2usize), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (5, 2)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stab_order_matches_oracle(
        (ps, k, l) in (shape(), 2usize..=3).prop_flat_map(|((k, l), t)| (prop::collection::vec(partition(k, l), t), Just(k), Just(l)))
    ) {
        let a = intersection_tensor(&ps).unwrap();
        let parts: Vec<_> = ps.iter().map(|p| p.parts().to_vec()).collect();
        prop_assert_eq!(stab_order(&a).unwrap(), partition_stabiliser_order(k * l, &parts, 10_000_000).unwrap());
    }

    #[test]
    fn round_trips((p, _q, t) in shape().prop_flat_map(|(k, l)| (partition(k, l), partition(k, l), partition(k, l)))) {
        let n = intersection_tensor(&[p, _q]).unwrap();
        let (p2, q2) = realize2(&n).unwrap();
        prop_assert_eq!(intersection_tensor(&[p2.clone(), q2.clone()]).unwrap(), n);
        let w = intersection_tensor(&[p2.clone(), q2.clone(), t]).unwrap();
        let t2 = realize3(&w, &p2, &q2).unwrap();
        prop_assert_eq!(intersection_tensor(&[p2, q2, t2]).unwrap(), w);
    }

    #[test]
    fn theta_has_k_symmetries(v in prop::collection::vec(0u32..6, 2..=7)) {
        let a = theta(&v);
        let order = array_symmetries(&a).unwrap().order;
        prop_assert!(order >= v.len() as u64);
        if v.len() <= 5 {
            prop_assert_eq!(order, array_symmetry_order(v.len(), 2, a.entries()));
        }
    }
}
