use super::RunReport;
use crate::error::{Error, Result};
use crate::oracle::brute;
use crate::oracle::{
    exhaustive_greedy, min_base_size, orbits_on, partition_stabiliser, partition_stabiliser_order, pointwise_stabiliser,
    Action, Domain, ExplicitGroup, OracleCaps,
};
use crate::partitions::{
    all_sequences, array_symmetries, continue_key, intersection_tensor, iterate_key, lemma_key_check, logfacts_sweep,
    min_3array, min_factorial_product, named_array, realize2, realize3, stab_order, theta, IntersectionTensor, KLPartition,
    KeyState, NamedFamily,
};
use crate::subsets::{
    check_section2_lemmas, greedy_run, max_greedy_size, max_orbit_value, meta_greedy_candidates, CellState, Policy, RSet,
};
use crate::GroupKind;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Display;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyId {
    MetagreedyOptimality,
    Section2Lemmas,
    MatcharRoundtrip,
    #[serde(rename = "minN")]
    MinN,
    Theta,
    #[serde(rename = "named-K")]
    NamedK,
    Logfacts,
    LemmaKey,
    Trivstab,
    OracleConsistency,
}

impl VerifyId {
    pub const ALL: [VerifyId; 10] = [
        VerifyId::MetagreedyOptimality,
        VerifyId::Section2Lemmas,
        VerifyId::MatcharRoundtrip,
        VerifyId::MinN,
        VerifyId::Theta,
        VerifyId::NamedK,
        VerifyId::Logfacts,
        VerifyId::LemmaKey,
        VerifyId::Trivstab,
        VerifyId::OracleConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerifyId::MetagreedyOptimality => "metagreedy-optimality",
            VerifyId::Section2Lemmas => "section2-lemmas",
            VerifyId::MatcharRoundtrip => "matchar-roundtrip",
            VerifyId::MinN => "minN",
            VerifyId::Theta => "theta",
            VerifyId::NamedK => "named-K",
            VerifyId::Logfacts => "logfacts",
            VerifyId::LemmaKey => "lemma-key",
            VerifyId::Trivstab => "trivstab",
            VerifyId::OracleConsistency => "oracle-consistency",
        }
    }
}

impl std::str::FromStr for VerifyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VerifyId::ALL.into_iter().find(|id| id.name().eq_ignore_ascii_case(s)).ok_or_else(|| {
            let names: Vec<_> = VerifyId::ALL.iter().map(|id| id.name()).collect();
            Error::invalid(format!("unknown suite `{s}` (one of {})", names.join(", ")))
        })
    }
}

impl Display for VerifyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyArgs {
    pub id: VerifyId,
    pub seed: u64,
    /// Node budget for exhaustive searches.
    pub budget: u64,
    /// Largest `n` for the subsets sweep.
    pub max_n: usize,
    /// Seeded runs per instance, on top of the deterministic one.
    pub runs: usize,
}

impl VerifyArgs {
    pub fn new(id: VerifyId) -> Self {
        VerifyArgs { id, seed: 0, budget: crate::subsets::DEFAULT_BUDGET, max_n: 40, runs: 16 }
    }
}

/// Counts cases and keeps the first few counterexamples.
struct Tally {
    name: String,
    cases: u64,
    failures: u64,
    examples: Vec<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), cases: 0, failures: 0, examples: Vec::new() }
    }

    fn case(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < 5 {
                self.examples.push(example());
            }
        }
    }

    fn finish(self, rep: &mut RunReport) {
        let detail = if self.failures == 0 {
            format!("{} cases", self.cases)
        } else {
            format!("{} of {} cases fail: {}", self.failures, self.cases, self.examples.join("; "))
        };
        rep.computed(&format!("{} cases", self.name), self.cases);
        rep.check(self.name, self.failures == 0 && self.cases > 0, detail);
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<RunReport> {
    let mut rep = RunReport::new("verify");
    rep.param("suite", args.id.name());
    rep.seed = Some(args.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    match args.id {
        VerifyId::MetagreedyOptimality => metagreedy(&mut rep, &mut rng)?,
        VerifyId::Section2Lemmas => section2(&mut rep, args)?,
        VerifyId::MatcharRoundtrip => matchar(&mut rep, &mut rng)?,
        VerifyId::MinN => min_n(&mut rep)?,
        VerifyId::Theta => theta_suite(&mut rep, &mut rng)?,
        VerifyId::NamedK => named_k(&mut rep)?,
        VerifyId::Logfacts => logfacts(&mut rep)?,
        VerifyId::LemmaKey => lemma_key(&mut rep, &mut rng, args.budget)?,
        VerifyId::Trivstab => trivstab(&mut rep)?,
        VerifyId::OracleConsistency => oracle_consistency(&mut rep, args.budget)?,
    }
    Ok(rep)
}

fn random_rset(rng: &mut ChaCha8Rng, n: usize, r: usize) -> RSet {
    let mut pts: Vec<usize> = (1..=n).collect();
    pts.shuffle(rng);
    pts.truncate(r);
    RSet::new(pts).expect("distinct points")
}

fn metagreedy(rep: &mut RunReport, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut tally = Tally::new("candidates reach the largest orbit");
    let check = |state: &CellState, tally: &mut Tally| -> Result<()> {
        let sizes: Vec<u64> = state.cells().iter().map(|c| c.size as u64).collect();
        let brute = BigUint::from(brute::max_orbit_over_count_vectors(&sizes, state.r() as u64));
        let best = max_orbit_value(state);
        let cands = meta_greedy_candidates(state);
        let all_max = cands.iter().all(|c| crate::subsets::orbit_of_counts(state, c) == brute);
        tally.case(best == brute && all_max && !cands.is_empty(), || {
            format!("n = {}, r = {}, shape {:?}: {best} vs {brute}", state.n(), state.r(), state.shape())
        });
        Ok(())
    };
    for n in 2..=12 {
        for r in 1..=3.min(n - 1) {
            for seed in 0..6u64 {
                let run = greedy_run(n, r, GroupKind::Sym, &Policy::Seeded(seed))?;
                let mut state = CellState::new(n, r)?;
                for alpha in run.base() {
                    check(&state, &mut tally)?;
                    state.push(alpha.clone())?;
                }
            }
            for _ in 0..6 {
                let mut state = CellState::new(n, r)?;
                for _ in 0..rng.gen_range(0..=n) {
                    check(&state, &mut tally)?;
                    state.push(random_rset(rng, n, r))?;
                }
            }
        }
    }
    tally.finish(rep);
    Ok(())
}

fn section2(rep: &mut RunReport, args: &VerifyArgs) -> Result<()> {
    let mut bound = Tally::new("greedy size <= 2n/r + 1");
    let mut lemmas = Tally::new("structural checks on every run");
    let mut exhausted = Vec::new();
    for r in [2usize, 3] {
        for n in 4 * r * r..=args.max_n {
            let b = 2 * n / r + 1;
            for group in [GroupKind::Sym, GroupKind::Alt] {
                let mut policies = vec![Policy::Deterministic];
                policies.extend((0..args.runs as u64).map(|s| Policy::Seeded(args.seed.wrapping_add(s))));
                for policy in &policies {
                    let run = greedy_run(n, r, group, policy)?;
                    bound.case(run.len() <= b, || format!("{group} n = {n}, r = {r}, {policy:?}: {} > {b}", run.len()));
                    let report = check_section2_lemmas(&run.diagnostics)?;
                    lemmas.case(report.passed(), || {
                        let v: Vec<_> = report.violations().map(|c| format!("{} ({})", c.name, c.detail)).collect();
                        format!("{group} n = {n}, r = {r}, {policy:?}: {}", v.join(", "))
                    });
                }
                match max_greedy_size(n, r, group, args.budget) {
                    Ok(out) => bound.case(out.max <= b, || format!("{group} n = {n}, r = {r}, exhaustive: {} > {b}", out.max)),
                    Err(Error::BudgetExhausted { .. }) => exhausted.push(format!("{group} ({n}, {r})")),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    bound.finish(rep);
    lemmas.finish(rep);
    if !exhausted.is_empty() {
        rep.exhaust(format!("exhaustive search budget ran out for {}", exhausted.join(", ")));
    }
    Ok(())
}

pub(crate) fn random_partition(rng: &mut ChaCha8Rng, k: usize, l: usize) -> KLPartition {
    let mut pts: Vec<usize> = (1..=k * l).collect();
    pts.shuffle(rng);
    KLPartition::new(pts.chunks(l).map(<[usize]>::to_vec).collect()).expect("valid chunks")
}

/// A uniformly random sum of `l` permutation matrices.
fn random_margins(rng: &mut ChaCha8Rng, k: usize, l: usize) -> IntersectionTensor {
    let mut entries = vec![0u32; k * k];
    let mut perm: Vec<usize> = (0..k).collect();
    for _ in 0..l {
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            entries[i * k + j] += 1;
        }
    }
    IntersectionTensor::new(k, 2, entries).expect("square")
}

fn parts_of(ps: &[&KLPartition]) -> Vec<Vec<Vec<usize>>> {
    ps.iter().map(|p| p.parts().to_vec()).collect()
}

const ORACLE_NODES: u64 = 20_000_000;

fn matchar(rep: &mut RunReport, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut two = Tally::new("realize2 round trip");
    for _ in 0..1000 {
        let (k, l) = (rng.gen_range(2..=6), rng.gen_range(1..=8));
        let n = random_margins(rng, k, l);
        let (p, q) = realize2(&n)?;
        let back = intersection_tensor(&[p, q])?;
        two.case(back == n, || format!("{:?}", n.rows()));
    }
    two.finish(rep);
    let mut three = Tally::new("realize3 round trip");
    for _ in 0..1000 {
        let (k, l) = (rng.gen_range(2..=5), rng.gen_range(1..=6));
        let (p, q) = realize2(&random_margins(rng, k, l))?;
        let t = random_partition(rng, k, l);
        let w = intersection_tensor(&[p.clone(), q.clone(), t])?;
        let t2 = realize3(&w, &p, &q)?;
        let back = intersection_tensor(&[p, q, t2])?;
        three.case(back == w, || format!("k = {k}, l = {l}, {:?}", w.entries()));
    }
    three.finish(rep);
    let mut orders = Tally::new("stabiliser order matches oracle");
    let shapes = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (5, 2)];
    for i in 0..100 {
        let (k, l) = shapes[i % shapes.len()];
        let t = 2 + i % 2;
        let ps: Vec<KLPartition> = (0..t).map(|_| random_partition(rng, k, l)).collect();
        let a = intersection_tensor(&ps)?;
        let ours = stab_order(&a)?;
        let refs: Vec<&KLPartition> = ps.iter().collect();
        let theirs = partition_stabiliser_order(k * l, &parts_of(&refs), ORACLE_NODES)?;
        orders.case(ours == theirs, || format!("k = {k}, l = {l}, t = {t}: {ours} vs {theirs}"));
    }
    orders.finish(rep);
    Ok(())
}

fn min_n(rep: &mut RunReport) -> Result<()> {
    let mut tally = Tally::new("closed form equals exhaustive minimum");
    for s in 0..=12u64 {
        for t in 1..=5u64 {
            for x in all_sequences(s, t) {
                let (value, witness) = min_factorial_product(&x)?;
                let brute = brute::min_factorial_product(s, t, &x.pairs);
                let ok = matches!(&brute, Some((v, ws)) if *v == value && ws.as_slice() == [witness.clone()]);
                tally.case(ok, || format!("s = {s}, t = {t}, X = {:?}: {value} {witness:?} vs {brute:?}", x.pairs));
            }
        }
    }
    tally.finish(rep);
    Ok(())
}

fn theta_suite(rep: &mut RunReport, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut at_least = Tally::new("|K| >= k for θ(v)");
    let mut brute_eq = Tally::new("|K| of θ(v) matches brute force");
    for _ in 0..100 {
        let k = rng.gen_range(2..=7);
        let v: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=5)).collect();
        let a = theta(&v);
        let order = array_symmetries(&a)?.order;
        at_least.case(order >= k as u64, || format!("v = {v:?}: |K| = {order}"));
        if k <= 5 {
            let b = brute::array_symmetry_order(k, 2, a.entries());
            brute_eq.case(order == b, || format!("v = {v:?}: {order} vs {b}"));
        }
    }
    at_least.finish(rep);
    brute_eq.finish(rep);
    Ok(())
}

/// Every named array checked for `|K|`, with its family parameters.
pub fn named_instances() -> Vec<NamedFamily> {
    let mut out = Vec::new();
    for l in [10, 11, 12, 17, 20] {
        out.push(NamedFamily::K2 { l });
    }
    for q in 5..=8 {
        out.push(NamedFamily::K3 { q });
    }
    for k in [3, 4] {
        for q in [5, 6] {
            for eps in [-1, 1] {
                out.push(NamedFamily::Other3 { k, q, eps });
            }
        }
    }
    for k in 4..=6 {
        for q in [11, 12] {
            out.push(NamedFamily::L { k, q });
        }
    }
    for k in [5, 6] {
        out.push(NamedFamily::BorderedL { k, q: 11 });
    }
    for k in 4..=6 {
        for q in [4, 5] {
            for r in [2, k as i32 - 2] {
                out.push(NamedFamily::ThetaPlusE { k, q, r });
            }
        }
    }
    for k in [6, 7] {
        for q in [1, 2] {
            for r in [3, k as i32 - 3] {
                out.push(NamedFamily::ThetaMinusE { k, q, r });
            }
        }
    }
    for k in [5, 6] {
        for r in [-1, 1] {
            out.push(NamedFamily::ThetaRX { k, q: 7, r });
        }
    }
    out.dedup();
    out
}

fn named_k(rep: &mut RunReport) -> Result<()> {
    let mut claimed = Tally::new("|K| equals the claimed order");
    let mut brute_eq = Tally::new("|K| matches brute force");
    for fam in named_instances() {
        let a = named_array(&fam)?;
        let order = array_symmetries(&a)?.order;
        claimed.case(order == fam.claimed_k_order(), || format!("{fam:?}: |K| = {order}"));
        if a.k() <= 6 {
            let b = brute::array_symmetry_order(a.k(), 2, a.entries());
            brute_eq.case(order == b, || format!("{fam:?}: {order} vs {b}"));
        }
    }
    claimed.finish(rep);
    brute_eq.finish(rep);
    Ok(())
}

fn logfacts(rep: &mut RunReport) -> Result<()> {
    let bad = logfacts_sweep(7..=50, 1..=10_000)?;
    rep.computed("triples", 44u64 * 10_000 * 5);
    let sample: Vec<_> = bad.iter().take(5).collect();
    rep.check("identity over k <= 50, q <= 10^4", bad.is_empty(), format!("{} failures {sample:?}", bad.len()));
    Ok(())
}

/// Cells of the common refinement, largest first.
fn refinement(parts: &[KLPartition]) -> Vec<Vec<usize>> {
    let labels: Vec<Vec<usize>> = parts.iter().map(KLPartition::labels).collect();
    let mut cells: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
    for point in 0..parts[0].degree() {
        cells.entry(labels.iter().map(|l| l[point]).collect()).or_default().push(point + 1);
    }
    let mut out: Vec<Vec<usize>> = cells.into_values().collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()));
    out
}

/// Carries the continuation out on concrete partitions and returns the
/// oracle's stabiliser after each step.
fn realise_continuation(parts: &mut Vec<KLPartition>, steps: u32) -> Result<Vec<ExplicitGroup>> {
    let (k, l, degree) = (parts[0].k(), parts[0].l(), parts[0].degree());
    let mut groups = Vec::new();
    for _ in 0..steps {
        let cells = refinement(parts);
        let state = KeyState::new(k, cells.iter().map(|c| c.len() as u64).collect())?;
        let step = continue_key(&state)?;
        let mut new = vec![Vec::new(); k];
        for (cell, split) in cells.iter().zip(&step.split) {
            let mut it = cell.iter();
            for (j, &m) in split.iter().enumerate() {
                new[j].extend(it.by_ref().take(m as usize));
            }
        }
        if new.iter().any(|p| p.len() != l) {
            return Err(Error::margin("continuation produced a part of the wrong size"));
        }
        parts.push(KLPartition::new(new)?);
        let refs: Vec<&KLPartition> = parts.iter().collect();
        groups.push(partition_stabiliser(degree, &parts_of(&refs), 1_000_000)?);
    }
    Ok(groups)
}

/// States on which the continuation hypotheses hold.
fn key_states(budget: u64) -> Result<Vec<(String, IntersectionTensor)>> {
    let mut out = Vec::new();
    for fam in named_instances() {
        let a = named_array(&fam)?;
        if lemma_key_check(&a)?.holds {
            out.push((format!("{fam:?}"), a));
        }
    }
    for l in 10..=30 {
        let n = named_array(&NamedFamily::K2 { l })?;
        let res = min_3array(&n, budget)?;
        for class in res.classes {
            if lemma_key_check(&class.representative)?.holds {
                out.push((format!("min 3-array over K2 l = {l}"), class.representative));
            }
        }
    }
    Ok(out)
}

fn lemma_key(rep: &mut RunReport, rng: &mut ChaCha8Rng, budget: u64) -> Result<()> {
    let states = key_states(budget)?;
    rep.computed("states", states.len());
    rep.check("at least 50 states", states.len() >= 50, format!("{} states", states.len()));
    let mut sym = Tally::new("sym steps equal ⌈log_k max⌉");
    let mut alt = Tally::new("alt stops at most one step earlier");
    for (name, a) in &states {
        let it = iterate_key(&KeyState::from_tensor(a)?)?;
        sym.case(it.sym_steps == it.predicted, || format!("{name}: {} vs {}", it.sym_steps, it.predicted));
        alt.case(it.alt_steps + 1 >= it.sym_steps && it.alt_steps <= it.sym_steps, || {
            format!("{name}: alt {} sym {}", it.alt_steps, it.sym_steps)
        });
    }
    sym.finish(rep);
    alt.finish(rep);

    let mut oracle = Tally::new("oracle agrees on realised continuations");
    for &(k, l) in &[(2usize, 4usize), (2, 5), (3, 3)] {
        let mut found = 0;
        let mut tries = 0;
        while found < 5 && tries < 5000 {
            tries += 1;
            let mut parts: Vec<KLPartition> = (0..3).map(|_| random_partition(rng, k, l)).collect();
            let w = intersection_tensor(&parts)?;
            if !lemma_key_check(&w)?.holds {
                continue;
            }
            found += 1;
            let it = iterate_key(&KeyState::from_tensor(&w)?)?;
            let groups = realise_continuation(&mut parts, it.sym_steps)?;
            let orders: Vec<usize> = groups.iter().map(ExplicitGroup::order).collect();
            let sym_ok = groups.last().map_or(true, |g| g.is_trivial())
                && (it.sym_steps < 2 || groups[it.sym_steps as usize - 2].order() > 1);
            let alt_at = |i: u32| -> bool {
                let g = if i == 0 {
                    let refs: Vec<&KLPartition> = parts[..3].iter().collect();
                    partition_stabiliser(k * l, &parts_of(&refs), 1_000_000).ok()
                } else {
                    Some(groups[i as usize - 1].clone())
                };
                g.is_some_and(|g| g.elements().iter().all(|p| p.is_identity() || !p.is_even()))
            };
            let alt_ok = alt_at(it.alt_steps) && (it.alt_steps == 0 || !alt_at(it.alt_steps - 1));
            oracle.case(sym_ok && alt_ok, || format!("({k}, {l}) {:?}: orders {orders:?}", w.entries()));
        }
    }
    oracle.finish(rep);
    Ok(())
}

fn trivstab(rep: &mut RunReport) -> Result<()> {
    let mut tally = Tally::new("P, Q, T has trivial stabiliser");
    for seed in 0..5 {
        let (p, q) = crate::partitions::trivstab_instance(7, 3, seed, 1_000_000)?;
        let report = crate::partitions::trivstab_construct(&p, &q)?;
        let order = report.oracle_order.clone();
        tally.case(order == Some(BigUint::from(1u32)), || format!("seed {seed}: {order:?}"));
    }
    tally.finish(rep);
    Ok(())
}

fn oracle_consistency(rep: &mut RunReport, budget: u64) -> Result<()> {
    let caps = OracleCaps { dedup_orbits: true, ..OracleCaps::default() };
    let mut greedy = Tally::new("subsets greedy sizes match oracle");
    let mut orders = Tally::new("subsets stabiliser and orbit sizes match oracle");
    for n in 3..=8 {
        for r in 1..n {
            for group in [GroupKind::Sym, GroupKind::Alt] {
                let g = ExplicitGroup::full(n, group)?;
                let dom = Domain::new(n, Action::Subsets { r })?;
                let census = exhaustive_greedy(&g, &dom, &caps)?;
                let ours = max_greedy_size(n, r, group, budget)?;
                greedy.case((ours.max, ours.min) == (census.max, census.min), || {
                    format!("{group} ({n}, {r}): ({}, {}) vs ({}, {})", ours.max, ours.min, census.max, census.min)
                });
                let run = greedy_run(n, r, group, &Policy::Deterministic)?;
                let mut state = CellState::new(n, r)?;
                let mut chosen = Vec::new();
                for alpha in run.base() {
                    let stab = pointwise_stabiliser(&g, &dom, &chosen, &caps)?;
                    let idx = dom.index_of(&[alpha.points().to_vec()]).expect("point of the domain");
                    let orbit = orbits_on(&stab, &dom, &caps)?.into_iter().find(|o| o.contains(&idx)).map_or(0, |o| o.len());
                    let ok = state.stabiliser_order_in(group) == BigUint::from(stab.order())
                        && state.orbit_size_in(alpha, group)? == BigUint::from(orbit);
                    orders.case(ok, || format!("{group} ({n}, {r}) before {alpha}"));
                    chosen.push(idx);
                    state.push(alpha.clone())?;
                }
            }
        }
    }
    greedy.finish(rep);
    orders.finish(rep);

    let mut parts = Tally::new("partition actions: orbit-stabiliser and b <= greedy");
    for (k, l) in [(2usize, 3usize), (3, 2), (2, 4), (4, 2), (3, 3)] {
        for group in [GroupKind::Sym, GroupKind::Alt] {
            let g = ExplicitGroup::full(k * l, group)?;
            let dom = Domain::new(k * l, Action::Partitions { k, l })?;
            let orbits = orbits_on(&g, &dom, &caps)?;
            let sum: usize = orbits.iter().map(Vec::len).sum();
            let stab = pointwise_stabiliser(&g, &dom, &[0], &caps)?;
            let orbit_stab = stab.order() * orbits[0].len() == g.order();
            let census = exhaustive_greedy(&g, &dom, &caps)?;
            let b = min_base_size(&g, &dom, &caps)?;
            parts.case(sum == dom.len() && orbit_stab && census.min >= b, || {
                format!("{group} ({k}, {l}): orbits sum {sum}, |G_ω||ω^G| ok {orbit_stab}, min greedy {} vs b {b}", census.min)
            });
        }
    }
    parts.finish(rep);
    Ok(())
}
