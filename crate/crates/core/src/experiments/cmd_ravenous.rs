use super::families::{base_lower_bound, blaha_ratio, classify, family_bound, Family};
use super::RunReport;
use crate::GroupKind;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RavenousArgs {
    pub max_k: u64,
    pub max_l: u64,
}

impl Default for RavenousArgs {
    fn default() -> Self {
        RavenousArgs { max_k: 64, max_l: 400 }
    }
}

/// The pair the general ratio bound is largest at.
pub const BLAHA_WORST: (u64, u64) = (6, 60);

struct Acc {
    l_min: u64,
    l_max: u64,
    count: u64,
    worst: f64,
    worst_l: u64,
    worst_bound: u32,
}

pub fn cmd_ravenous_table(args: &RavenousArgs) -> RunReport {
    let mut rep = RunReport::new("ravenous-table");
    rep.param("max_k", args.max_k).param("max_l", args.max_l);
    let mut acc: BTreeMap<(u64, &'static str), Acc> = BTreeMap::new();
    let mut overall = (0.0f64, 0u64, 0u64);
    for k in 2..=args.max_k {
        for l in 2..=args.max_l {
            let Some(f) = classify(k, l) else { continue };
            let bound = bound_for(f, k, l);
            let ratio = bound as f64 / base_lower_bound(k, l);
            let a = acc.entry((k, f.name())).or_insert(Acc { l_min: l, l_max: l, count: 0, worst: 0.0, worst_l: l, worst_bound: bound });
            a.l_max = l;
            a.count += 1;
            if ratio > a.worst {
                (a.worst, a.worst_l, a.worst_bound) = (ratio, l, bound);
            }
            if ratio > overall.0 {
                overall = (ratio, k, l);
            }
        }
    }
    for ((k, name), a) in &acc {
        let row: BTreeMap<String, Value> = [
            ("k", json!(k)),
            ("family", json!(name)),
            ("l_min", json!(a.l_min)),
            ("l_max", json!(a.l_max)),
            ("pairs", json!(a.count)),
            ("worst_l", json!(a.worst_l)),
            ("bound", json!(a.worst_bound)),
            ("lower_bound", json!(base_lower_bound(*k, a.worst_l))),
            ("ratio", json!(a.worst)),
        ]
        .into_iter()
        .map(|(s, v)| (s.to_string(), v))
        .collect();
        rep.row(row);
    }
    rep.computed("pairs", acc.values().map(|a| a.count).sum::<u64>());
    rep.computed("max_ratio", overall.0).computed("max_ratio_at", json!([overall.1, overall.2]));
    rep.check("max ratio", overall.0 <= 11.0, format!("{:.4} at (k, l) = ({}, {})", overall.0, overall.1, overall.2));
    let (bk, bl) = BLAHA_WORST;
    let blaha = blaha_ratio(bk, bl);
    rep.computed("blaha_ratio_6_60", blaha);
    rep.check("blaha ratio at (6, 60)", blaha <= 11.0, format!("{blaha:.4} <= 11"));
    rep
}

/// The bound used in the sweep: the larger of the two groups' bounds.
fn bound_for(f: Family, k: u64, l: u64) -> u32 {
    family_bound(f, k, l, GroupKind::Sym).max(family_bound(f, k, l, GroupKind::Alt))
}
