use super::RunReport;
use crate::error::{Error, Result};
use crate::oracle::{exhaustive_greedy, min_base_size, orbits_on, Action, Domain, ExplicitGroup, OracleCaps};
use crate::partitions::{lemma_key_check, min_2array, min_3array, named_array, NamedFamily};
use crate::GroupKind;
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinArrayArgs {
    pub k: usize,
    pub l: u32,
    pub budget: u64,
    /// Also minimise over 3-arrays arising from each 2-array minimiser.
    pub third: bool,
}

pub fn cmd_min_array(args: &MinArrayArgs) -> Result<RunReport> {
    let mut rep = RunReport::new("min-array");
    rep.param("k", args.k).param("l", args.l).param("budget", args.budget).param("third", args.third);
    let res = min_2array(args.k, args.l, args.budget)?;
    rep.computed("nodes", res.nodes).computed("window", res.window).computed("complete", res.complete);
    if !res.complete {
        rep.exhaust(format!("node budget {} exhausted; classes are best found", args.budget));
    }
    rep.computed("min_stab_order", res.min_order().map(|o| o.to_string()).unwrap_or_default());
    let mut classes = Vec::new();
    for c in &res.classes {
        let key = lemma_key_check(&c.representative)?;
        let mut entry = json!({
            "rows": c.representative.rows(),
            "k_order": c.k_order,
            "stab_order": c.stab_order.to_string(),
            "continuation_holds": key.holds,
            "witness": key.witness,
        });
        if args.third {
            let w = min_3array(&c.representative, args.budget)?;
            if !w.complete {
                rep.exhaust("min_3array node budget exhausted");
            }
            entry["min_3array"] = json!(w
                .classes
                .iter()
                .map(|x| json!({"entries": x.representative, "k_order": x.k_order, "stab_order": x.stab_order.to_string()}))
                .collect::<Vec<_>>());
        }
        classes.push(entry);
    }
    rep.computed("classes", json!(classes));
    Ok(rep)
}

/// Shows one named array with its symmetry and continuation data.
pub fn cmd_named(family: &NamedFamily) -> Result<RunReport> {
    let mut rep = RunReport::new("named");
    rep.param("family", json!(family));
    let a = named_array(family)?;
    let key = lemma_key_check(&a)?;
    rep.computed("rows", json!(a.rows()))
        .computed("k_order", key.k_order)
        .expected("claimed_k_order", family.claimed_k_order())
        .computed("stab_order", crate::partitions::stab_order(&a)?.to_string());
    rep.check("|K| as claimed", key.k_order == family.claimed_k_order(), format!("{} vs {}", key.k_order, family.claimed_k_order()));
    Ok(rep)
}

/// What the oracle acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "lowercase")]
pub enum OracleAction {
    Points { n: usize },
    Subsets { n: usize, r: usize },
    Partitions { k: usize, l: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleArgs {
    pub action: OracleAction,
    pub group: GroupKind,
    pub caps: OracleCaps,
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<RunReport> {
    let mut rep = RunReport::new("oracle");
    let (degree, action) = match args.action {
        OracleAction::Points { n } => (n, Action::Points),
        OracleAction::Subsets { n, r } => (n, Action::Subsets { r }),
        OracleAction::Partitions { k, l } => (k * l, Action::Partitions { k, l }),
    };
    rep.param("action", json!(args.action)).param("group", args.group.name());
    let g = ExplicitGroup::full(degree, args.group)?;
    let dom = Domain::new(degree, action)?;
    rep.computed("group_order", g.order()).computed("domain_size", dom.len());
    let orbits = orbits_on(&g, &dom, &args.caps)?;
    rep.computed("orbits", orbits.len());
    match exhaustive_greedy(&g, &dom, &args.caps) {
        Ok(c) => {
            rep.computed("max_greedy", c.max).computed("min_greedy", c.min).computed("runs", c.runs.to_string());
            let b = min_base_size(&g, &dom, &args.caps)?;
            rep.computed("min_base_size", b);
            rep.check("greedy at least minimum", c.min >= b, format!("{} >= {b}", c.min));
            if dom.len() > 1 {
                let lower = (g.order() as f64).ln() / (dom.len() as f64).ln();
                rep.check("base size lower bound", b as f64 + 1e-9 >= lower, format!("{b} >= {lower:.4}"));
            }
        }
        Err(Error::BudgetExhausted { budget, lower_bound }) => {
            rep.computed("max_greedy_lower_bound", lower_bound);
            rep.exhaust(format!("oracle node budget {budget} exhausted"));
        }
        Err(e) => return Err(e),
    }
    Ok(rep)
}
