use super::families::{base_lower_bound, blaha_ratio, classify, family_bound, Family};
use super::RunReport;
use crate::arith::log2_big;
use crate::error::{Error, Result};
use crate::oracle::{exhaustive_greedy, min_base_size, Action, Domain, ExplicitGroup, OracleCaps};
use crate::partitions::{
    canonical_representative, iterate_key, lemma_key_check, min_2array, min_3array, named_array, IntersectionTensor, KeyState,
    NamedFamily,
};
use crate::GroupKind;
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionsMode {
    /// Oracle for `kl <= 9`, arrays for covered pairs with `k <= 6`, else Blaha.
    Auto,
    /// Every greedy run, enumerated by the oracle.
    Exhaustive,
    /// Minimal arrays plus the continuation construction.
    Arrays,
    /// Only the general ratio bound.
    Blaha,
}

impl std::str::FromStr for PartitionsMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(PartitionsMode::Auto),
            "exhaustive" => Ok(PartitionsMode::Exhaustive),
            "arrays" => Ok(PartitionsMode::Arrays),
            "blaha" => Ok(PartitionsMode::Blaha),
            other => Err(Error::invalid(format!("unknown partitions mode `{other}` (auto, exhaustive, arrays, blaha)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionsArgs {
    pub k: usize,
    pub l: usize,
    pub group: GroupKind,
    pub mode: PartitionsMode,
    /// Node budget for the array searches and the oracle.
    pub budget: u64,
}

/// Largest `kl` the oracle path is chosen for automatically.
pub const AUTO_ORACLE_DEGREE: usize = 9;

pub fn cmd_partitions(args: &PartitionsArgs) -> Result<RunReport> {
    let PartitionsArgs { k, l, group, .. } = *args;
    if k < 2 || l < 2 {
        return Err(Error::invalid(format!("need k, l >= 2, got k = {k}, l = {l}")));
    }
    let family = classify(k as u64, l as u64);
    let mode = match args.mode {
        PartitionsMode::Auto if k * l <= AUTO_ORACLE_DEGREE => PartitionsMode::Exhaustive,
        PartitionsMode::Auto if family.is_some() && k <= 6 => PartitionsMode::Arrays,
        PartitionsMode::Auto => PartitionsMode::Blaha,
        m => m,
    };
    let mut rep = RunReport::new("partitions");
    rep.param("k", k).param("l", l).param("group", group.name()).param("mode", serde_json::to_value(mode).expect("mode"));
    match family {
        Some(f) => {
            rep.computed("family", f.name());
            rep.expected("family_bound", family_bound(f, k as u64, l as u64, group));
        }
        None => {
            rep.flag("(k, l) not covered by a family bound");
        }
    }
    rep.computed("base_lower_bound", base_lower_bound(k as u64, l as u64));
    match mode {
        PartitionsMode::Exhaustive => exhaustive(&mut rep, k, l, group, family, args.budget)?,
        PartitionsMode::Arrays => arrays(&mut rep, k, l, group, family, args.budget)?,
        PartitionsMode::Blaha | PartitionsMode::Auto => blaha(&mut rep, k, l),
    }
    Ok(rep)
}

fn exhaustive(rep: &mut RunReport, k: usize, l: usize, group: GroupKind, family: Option<Family>, budget: u64) -> Result<()> {
    let caps = OracleCaps { max_nodes: budget, ..OracleCaps::default() };
    let g = ExplicitGroup::full(k * l, group)?;
    let dom = Domain::new(k * l, Action::Partitions { k, l })?;
    rep.computed("group_order", g.order()).computed("domain_size", dom.len());
    let census = match exhaustive_greedy(&g, &dom, &caps) {
        Ok(c) => c,
        Err(Error::BudgetExhausted { budget, lower_bound }) => {
            rep.computed("max_greedy_lower_bound", lower_bound);
            rep.exhaust(format!("oracle node budget {budget} exhausted"));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    rep.computed("max_greedy", census.max).computed("min_greedy", census.min).computed("runs", census.runs.to_string());
    if let Some(f) = family {
        let bound = family_bound(f, k as u64, l as u64, group) as usize;
        if f == Family::PartsOfTwo {
            rep.check("greedy size", census.max == bound, format!("{} == {bound}", census.max));
        } else {
            rep.check("family bound", census.max <= bound, format!("{} <= {bound}", census.max));
        }
    }
    let b = min_base_size(&g, &dom, &caps)?;
    rep.computed("min_base_size", b);
    rep.check("greedy at least minimum", census.min >= b, format!("{} >= {b}", census.min));
    let ratio = (g.order() as f64).ln() / (dom.len() as f64).ln();
    rep.computed("log_order_over_log_degree", ratio);
    rep.check("base size lower bound", b as f64 + 1e-9 >= ratio, format!("{b} >= {ratio:.4}"));
    Ok(())
}

/// The named array a minimiser is expected to match, where one is claimed.
pub fn expected_minimiser(k: usize, l: u32) -> Option<NamedFamily> {
    let (q, r) = (l / k as u32, l % k as u32);
    match k {
        2 if l >= 10 => Some(NamedFamily::K2 { l }),
        3 if r == 0 && q >= 5 => Some(NamedFamily::K3 { q }),
        3 | 4 => {
            let (q, eps) = if r == 1 { (q, 1) } else if r == k as u32 - 1 { (q + 1, -1) } else { return None };
            (q >= 5).then_some(NamedFamily::Other3 { k, q, eps })
        }
        _ => None,
    }
}

/// Greedy steps after the arrays `tensor` describes, by the continuation
/// construction, or `None` when its hypotheses fail.
fn continuation(tensor: &IntersectionTensor, group: GroupKind) -> Result<Option<(u32, u32)>> {
    let check = lemma_key_check(tensor)?;
    if !check.holds {
        return Ok(None);
    }
    let state = KeyState::from_tensor(tensor)?;
    let it = iterate_key(&state)?;
    let steps = match group {
        GroupKind::Sym => it.sym_steps,
        GroupKind::Alt => it.alt_steps,
    };
    Ok(Some((steps, it.predicted)))
}

fn arrays(rep: &mut RunReport, k: usize, l: usize, group: GroupKind, family: Option<Family>, budget: u64) -> Result<()> {
    let l32 = l as u32;
    let res = min_2array(k, l32, budget)?;
    rep.computed("min_2array_nodes", res.nodes).computed("min_2array_window", res.window);
    if !res.complete {
        rep.exhaust(format!("min_2array budget {budget} exhausted"));
        return Ok(());
    }
    let reps: Vec<_> = res.classes.iter().map(|c| json!({"rows": c.representative.rows(), "k_order": c.k_order})).collect();
    rep.computed("minimisers", json!(reps));
    rep.computed("min_stab_order", res.min_order().map(|o| o.to_string()).unwrap_or_default());
    if let Some(named) = expected_minimiser(k, l32) {
        let want = canonical_representative(&named_array(&named)?);
        rep.expected("named_minimiser", json!({"family": named.name(), "rows": want.rows()}));
        let got: Vec<_> = res.classes.iter().map(|c| &c.representative).collect();
        rep.check(
            "minimiser matches named array",
            got == [&want],
            format!("{} class(es), first {:?}", got.len(), got.first().map(|t| t.rows())),
        );
    }
    let mut prediction: Option<u32> = None;
    let mut unresolved = Vec::new();
    for class in &res.classes {
        let n = &class.representative;
        let pred = match continuation(n, group)? {
            Some((steps, predicted)) => {
                rep.check(
                    format!("continuation from {:?}", n.rows()),
                    steps == predicted,
                    format!("{steps} steps, ⌈log_k max⌉ = {predicted}"),
                );
                Some(2 + steps)
            }
            None => {
                let third = min_3array(n, budget)?;
                if !third.complete {
                    rep.exhaust(format!("min_3array budget {budget} exhausted"));
                    return Ok(());
                }
                let mut best: Option<u32> = None;
                for w in &third.classes {
                    match continuation(&w.representative, group)? {
                        Some((steps, _)) => best = Some(best.map_or(3 + steps, |b: u32| b.max(3 + steps))),
                        None => {
                            best = None;
                            break;
                        }
                    }
                }
                best
            }
        };
        match pred {
            Some(p) => prediction = Some(prediction.map_or(p, |q| q.max(p))),
            None => unresolved.push(n.rows()),
        }
    }
    if !unresolved.is_empty() {
        rep.flag(format!("continuation hypotheses fail after three partitions for {unresolved:?}"));
        return Ok(());
    }
    let prediction = prediction.expect("at least one minimiser");
    rep.computed("predicted_greedy", prediction);
    rep.computed("ratio_to_lower_bound", prediction as f64 / base_lower_bound(k as u64, l as u64));
    if let Some(f) = family {
        let bound = family_bound(f, k as u64, l as u64, group);
        rep.check("family bound", prediction <= bound, format!("{prediction} <= {bound}"));
    }
    Ok(())
}

fn blaha(rep: &mut RunReport, k: usize, l: usize) {
    let ratio = blaha_ratio(k as u64, l as u64);
    let n_bits = {
        use crate::arith::factorial;
        let num = factorial((k * l) as u64);
        let den = factorial(l as u64).pow(k as u32) * factorial(k as u64);
        log2_big(&(num / den))
    };
    rep.computed("log2_degree", n_bits);
    rep.computed("blaha_ratio", ratio);
    rep.check("ratio bound", ratio <= 11.0, format!("{ratio:.4} <= 11"));
}
