use greedy_bases::arith::ceil_log;
use greedy_bases::partitions::{
    continue_key, iterate_key, lemma_key_check, min_3array, named_array, trivstab_construct, trivstab_instance, KeyState,
    NamedFamily,
};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Size multisets with a repeated entry that is not a multiple of `k`.
fn key_state() -> impl Strategy<Value = KeyState> {
    (2usize..=7)
        .prop_flat_map(|k| (Just(k), 1u64..40, prop::collection::vec(1u64..40, 0..12)))
        .prop_filter_map("witness not divisible by k", |(k, t, mut rest)| {
            if t % k as u64 == 0 {
                return None;
            }
            rest.extend(std::iter::repeat(t).take(k));
            let total: u64 = rest.iter().sum();
            let pad = (k as u64 - total % k as u64) % k as u64;
            if pad > 0 {
                rest.push(pad);
            }
            let s = KeyState::new(k, rest).ok()?;
            s.witness().is_some().then_some(s)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn steps_are_log_of_max(state in key_state()) {
        let it = iterate_key(&state).unwrap();
        prop_assert_eq!(it.sym_steps, ceil_log(state.k as u64, state.max()));
        prop_assert!(it.alt_steps <= it.sym_steps && it.alt_steps + 1 >= it.sym_steps);
        prop_assert!(it.maxima.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn one_step_keeps_part_sizes(state in key_state()) {
        prop_assume!(state.max() > 1);
        let step = continue_key(&state).unwrap();
        let k = state.k;
        for j in 0..k {
            let col: u64 = step.split.iter().map(|row| row[j]).sum();
            prop_assert_eq!(col, state.l());
        }
        for (row, &size) in step.split.iter().zip(&state.sizes) {
            prop_assert_eq!(row.iter().sum::<u64>(), size);
        }
    }
}

#[test]
fn two_part_triples_satisfy_hypotheses() {
    for l in 10..=30 {
        let n = named_array(&NamedFamily::K2 { l }).unwrap();
        assert!(!lemma_key_check(&n).unwrap().holds);
        let res = min_3array(&n, 10_000_000).unwrap();
        assert_eq!(res.classes.len(), 1, "l = {l}");
        let w = &res.classes[0].representative;
        assert!(lemma_key_check(w).unwrap().holds, "l = {l}");
        if l % 4 != 1 {
            let named = named_array(&NamedFamily::K2Triple { l }).unwrap();
            assert_eq!(res.classes[0].star, named.star(), "l = {l}");
        }
    }
}

#[test]
fn trivial_stabiliser_construction() {
    for seed in 0..3 {
        let (p, q) = trivstab_instance(7, 3, seed, 1_000_000).unwrap();
        let report = trivstab_construct(&p, &q).unwrap();
        assert_eq!(report.oracle_order, Some(BigUint::from(1u32)), "seed {seed}");
    }
}
