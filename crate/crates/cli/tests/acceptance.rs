//! The acceptance gate: one line per criterion, non-zero exit if any fails.
//! Tolerances are exact equalities unless a limit below says otherwise.

use greedy_bases::experiments::{cmd_ravenous_table, cmd_verify, RavenousArgs, Status, VerifyArgs, VerifyId, BLAHA_WORST};
use greedy_bases::oracle::brute::{array_symmetry_order, contingency_tables};
use greedy_bases::oracle::{
    exhaustive_greedy, partition_stabiliser, partition_stabiliser_order, Action, Domain, ExplicitGroup, OracleCaps,
};
use greedy_bases::partitions::{canonical_representative, entry_factorials, min_2array, named_array, IntersectionTensor, NamedFamily};
use greedy_bases::subsets::{max_greedy_size, DEFAULT_BUDGET};
use greedy_bases::GroupKind;
use std::process::Command;
use std::time::{Duration, Instant};

const LIMIT_C1: Duration = Duration::from_secs(1);
const LIMIT_C2: Duration = Duration::from_secs(60);
const LIMIT_C4: Duration = Duration::from_secs(600);
const RATIO_CEILING: f64 = 11.0;
const MIN_ARRAY_BUDGET: u64 = 50_000_000;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn suite(id: VerifyId) -> Outcome {
    let rep = cmd_verify(&VerifyArgs::new(id)).map_err(|e| e.to_string())?;
    let summary: Vec<String> = rep.checks.iter().map(|c| format!("{} [{}]", c.name, c.detail)).collect();
    ensure(rep.status == Status::Pass, format!("{}: {}", id, summary.join("; ")))
}

fn oracle_greedy(k: usize, l: usize, group: GroupKind) -> Result<(usize, usize), String> {
    let g = ExplicitGroup::full(k * l, group).map_err(|e| e.to_string())?;
    let d = Domain::new(k * l, Action::Partitions { k, l }).map_err(|e| e.to_string())?;
    let c = exhaustive_greedy(&g, &d, &OracleCaps::default()).map_err(|e| e.to_string())?;
    Ok((c.min, c.max))
}

fn c1() -> Outcome {
    let start = Instant::now();
    let sym = oracle_greedy(3, 2, GroupKind::Sym)?;
    let alt = oracle_greedy(3, 2, GroupKind::Alt)?;
    let t = start.elapsed();
    let cli = Command::new(env!("CARGO_BIN_EXE_greedy-bases"))
        .args(["partitions", "--k", "3", "--l", "2"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        sym.1 == 4 && alt.1 == 3 && t < LIMIT_C1 && cli.status.code() == Some(0),
        format!(
            "S: max {}, A: max {}, {:.3}s < {:?}, cli exit {:?}",
            sym.1,
            alt.1,
            t.as_secs_f64(),
            LIMIT_C1,
            cli.status.code()
        ),
    )
}

fn c2() -> Outcome {
    let start = Instant::now();
    let alt = oracle_greedy(4, 2, GroupKind::Alt)?;
    let t = start.elapsed();
    ensure(
        alt.1 == 3 && t < LIMIT_C2,
        format!("A on 4x2: max {} (min {}), {:.3}s < {:?}", alt.1, alt.0, t.as_secs_f64(), LIMIT_C2),
    )
}

fn c3() -> Outcome {
    let p1 = vec![vec![1, 2], vec![3, 4], vec![5, 6]];
    let p2 = vec![vec![6, 1], vec![2, 3], vec![4, 5]];
    let p3 = vec![vec![1, 2], vec![3, 5], vec![4, 6]];
    let two = partition_stabiliser(6, &[p1.clone(), p2.clone()], 1000).map_err(|e| e.to_string())?;
    let orders: Vec<usize> = two
        .elements()
        .iter()
        .map(|g| {
            let mut x = g.clone();
            let mut n = 1;
            while !x.is_identity() {
                x = x.then(g);
                n += 1;
            }
            n
        })
        .collect();
    let dihedral = two.order() == 6 && orders.iter().filter(|&&o| o == 2).count() == 3 && orders.contains(&3);
    let three = partition_stabiliser_order(6, &[p1, p2, p3], 1_000_000).map_err(|e| e.to_string())?;
    let q1 = vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8]];
    let q2 = vec![vec![8, 1], vec![2, 3], vec![4, 5], vec![6, 7]];
    let q3 = vec![vec![1, 2], vec![3, 5], vec![4, 8], vec![6, 7]];
    let four = partition_stabiliser_order(8, &[q1, q2, q3], 1_000_000).map_err(|e| e.to_string())?;
    ensure(
        dihedral && three == 1u32.into(),
        format!(
            "|G_(P1,P2)| = {} (element orders {orders:?}), |G_(P1,P2,P3)| = {three}; same construction at k=4 gives {four}",
            two.order()
        ),
    )
}

fn c4() -> Outcome {
    let start = Instant::now();
    let out = max_greedy_size(16, 2, GroupKind::Alt, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let bound = 2 * 16 / 2 + 1;
    let ratio = out.max as f64 / 10.0;
    ensure(
        out.max == 10 && out.min == 10 && out.max <= bound && ratio <= bound as f64 / 10.0 && t < LIMIT_C4,
        format!(
            "greedy sizes {}..={} over {} runs, bound {bound}, ratio {ratio}, {:.3}s",
            out.min,
            out.max,
            out.runs,
            t.as_secs_f64()
        ),
    )
}

fn c5() -> Outcome {
    suite(VerifyId::Section2Lemmas)
}

/// Least `|K| ∏ a!` over every 3 × 3 table, by enumeration.
fn brute_three(l: u32) -> (Vec<Vec<u32>>, u64) {
    let mut best: Option<(num_bigint::BigUint, IntersectionTensor, u64)> = None;
    for e in contingency_tables(3, l) {
        let a = IntersectionTensor::new(3, 2, e).expect("square table");
        let sym = array_symmetry_order(3, 2, a.entries());
        let order = entry_factorials(&a) * sym;
        if best.as_ref().map_or(true, |b| order < b.0) {
            best = Some((order, a, sym));
        }
    }
    let (_, a, sym) = best.expect("tables exist");
    (canonical_representative(&a).rows(), sym)
}

fn c6() -> Outcome {
    let mut bad = Vec::new();
    for l in 10..=20 {
        let res = min_2array(2, l, MIN_ARRAY_BUDGET).map_err(|e| e.to_string())?;
        let want = canonical_representative(&named_array(&NamedFamily::K2 { l }).map_err(|e| e.to_string())?);
        if !(res.complete && res.classes.len() == 1 && res.classes[0].representative == want) {
            bad.push(format!("k=2 l={l}"));
        }
    }
    for q in 5..=7 {
        let res = min_2array(3, 3 * q, MIN_ARRAY_BUDGET).map_err(|e| e.to_string())?;
        let want = canonical_representative(&named_array(&NamedFamily::K3 { q }).map_err(|e| e.to_string())?);
        if !(res.complete && res.classes.len() == 1 && res.classes[0].representative == want) {
            let (rows, sym) = brute_three(3 * q);
            bad.push(format!(
                "k=3 q={q}: got {:?}, expected {:?}, enumeration minimiser {rows:?} with |K| = {sym}",
                res.classes.iter().map(|c| c.representative.rows()).collect::<Vec<_>>(),
                want.rows()
            ));
        }
    }
    let msg = if bad.is_empty() { "k=2 l=10..20 and k=3 q=5..7 match".to_string() } else { bad.join("; ") };
    ensure(bad.is_empty(), msg)
}

fn c7() -> Outcome {
    suite(VerifyId::MinN)
}

fn c8() -> Outcome {
    suite(VerifyId::MatcharRoundtrip)
}

fn c9() -> Outcome {
    match (suite(VerifyId::NamedK), suite(VerifyId::Theta)) {
        (Ok(a), Ok(b)) => Ok(format!("{a}; {b}")),
        (a, b) => Err(format!("{}; {}", a.unwrap_or_else(|e| e), b.unwrap_or_else(|e| e))),
    }
}

fn c10() -> Outcome {
    suite(VerifyId::LemmaKey)
}

fn c11() -> Outcome {
    let rep = cmd_ravenous_table(&RavenousArgs::default());
    let max = rep.quantity("max_ratio").and_then(|v| v.as_f64()).unwrap_or(f64::INFINITY);
    let blaha = rep.quantity("blaha_ratio_6_60").and_then(|v| v.as_f64()).unwrap_or(f64::INFINITY);
    ensure(
        rep.status == Status::Pass && max <= RATIO_CEILING && blaha <= RATIO_CEILING,
        format!("max ratio {max:.4} over {} table rows, value at {BLAHA_WORST:?} {blaha:.4}", rep.rows.len()),
    )
}

fn c12() -> Outcome {
    suite(VerifyId::Logfacts)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("exhaustive greedy on 3x2 partitions", c1),
        ("exhaustive greedy for A on 4x2 partitions", c2),
        ("explicit 3x2 stabilisers", c3),
        ("A_16 on 2-sets", c4),
        ("subsets bound and diagnostics, 4r^2 <= n <= 40", c5),
        ("minimal 2-arrays for k = 2 and k = 3", c6),
        ("factorial-product closed form", c7),
        ("realisation round trips and stabiliser orders", c8),
        ("symmetry of named and cyclic arrays", c9),
        ("continuation end to end", c10),
        ("ratio table", c11),
        ("logarithm identity sweep", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let t = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {:>2} PASS  {name} ({t:.2}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({t:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
