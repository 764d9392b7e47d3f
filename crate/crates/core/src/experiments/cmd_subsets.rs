use super::{RunReport, Status};
use crate::error::{Error, Result};
use crate::subsets::{check_section2_lemmas, greedy_run, max_greedy_size, GreedyRun, Policy};
use crate::GroupKind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsetsMode {
    /// One deterministic run.
    Single,
    /// Every greedy run, by state-space search.
    Exhaustive,
    /// A deterministic run plus seeded runs, each checked structurally.
    Diagnostics,
}

impl std::str::FromStr for SubsetsMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(SubsetsMode::Single),
            "exhaustive" => Ok(SubsetsMode::Exhaustive),
            "diagnostics" => Ok(SubsetsMode::Diagnostics),
            other => Err(Error::invalid(format!("unknown subsets mode `{other}` (single, exhaustive, diagnostics)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetsArgs {
    pub n: usize,
    pub r: usize,
    pub group: GroupKind,
    pub mode: SubsetsMode,
    pub budget: u64,
    pub seed: u64,
    /// Seeded runs in diagnostics mode.
    pub runs: usize,
}

/// Known exact values: `(n, r, group) -> greedy base size`.
const KNOWN: &[(usize, usize, GroupKind, usize)] = &[(16, 2, GroupKind::Alt, 10)];

fn bound(n: usize, r: usize) -> usize {
    2 * n / r + 1
}

fn in_range(n: usize, r: usize) -> bool {
    r >= 2 && n >= 4 * r * r
}

fn base_json(run: &GreedyRun) -> serde_json::Value {
    json!(run.base().iter().map(|b| b.points().to_vec()).collect::<Vec<_>>())
}

pub fn cmd_subsets(args: &SubsetsArgs) -> Result<RunReport> {
    let SubsetsArgs { n, r, group, mode, .. } = *args;
    let mut rep = RunReport::new("subsets");
    rep.param("n", n).param("r", r).param("group", group.name()).param("mode", serde_json::to_value(mode).expect("mode"));
    if n <= 2 * r {
        rep.flag("n <= 2r: outside the analysed range");
    }
    let hyp = in_range(n, r);
    if !hyp {
        rep.flag("outside n >= 4r^2 >= 16: size bound not asserted");
    }
    let known = KNOWN.iter().find(|&&(kn, kr, kg, _)| (kn, kr, kg) == (n, r, group)).map(|x| x.3);
    match mode {
        SubsetsMode::Single => {
            let run = greedy_run(n, r, group, &Policy::Deterministic)?;
            rep.computed("base_size", run.len()).computed("base", base_json(&run));
            if hyp {
                rep.expected("size_bound", bound(n, r));
                rep.check("size bound", run.len() <= bound(n, r), format!("{} <= {}", run.len(), bound(n, r)));
            }
        }
        SubsetsMode::Exhaustive => match max_greedy_size(n, r, group, args.budget) {
            Ok(out) => {
                rep.computed("max_greedy", out.max)
                    .computed("min_greedy", out.min)
                    .computed("runs", out.runs.to_string())
                    .computed("states", out.states);
                if hyp {
                    rep.expected("size_bound", bound(n, r));
                    rep.check("size bound", out.max <= bound(n, r), format!("{} <= {}", out.max, bound(n, r)));
                }
                if let Some(b) = known {
                    rep.expected("min_base_size", b);
                    rep.check("every greedy base is minimum", out.max == b && out.min == b, format!("sizes {}..={}, b = {b}", out.min, out.max));
                    let ratio = out.max as f64 / b as f64;
                    rep.computed("ratio", ratio);
                    if hyp {
                        let ceiling = bound(n, r) as f64 / b as f64;
                        rep.check("ratio", ratio <= ceiling, format!("{ratio} <= {}/{b}", bound(n, r)));
                    }
                }
            }
            Err(Error::BudgetExhausted { budget, lower_bound }) => {
                rep.computed("max_greedy_lower_bound", lower_bound);
                rep.exhaust(format!("state budget {budget} exhausted"));
            }
            Err(e) => return Err(e),
        },
        SubsetsMode::Diagnostics => {
            rep.seed = Some(args.seed);
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let mut policies = vec![("deterministic".to_string(), Policy::Deterministic)];
            for _ in 0..args.runs {
                let s: u64 = rng.gen();
                policies.push((format!("seeded {s}"), Policy::Seeded(s)));
            }
            let mut sizes = Vec::new();
            for (label, policy) in &policies {
                let run = greedy_run(n, r, group, policy)?;
                sizes.push(run.len());
                if hyp {
                    rep.check(format!("{label}: size bound"), run.len() <= bound(n, r), format!("{} <= {}", run.len(), bound(n, r)));
                    match check_section2_lemmas(&run.diagnostics) {
                        Ok(report) => {
                            let bad: Vec<String> =
                                report.violations().map(|v| format!("{} at step {:?}: {}", v.name, v.step, v.detail)).collect();
                            rep.check(format!("{label}: structural checks"), bad.is_empty(), bad.join("; "));
                        }
                        Err(e) => {
                            rep.flag(format!("{label}: {e}"));
                        }
                    }
                }
                if group == GroupKind::Alt {
                    let sym = greedy_run(n, r, GroupKind::Sym, policy)?;
                    let same = sym.base().starts_with(run.base());
                    let gap = sym.len() - run.len().min(sym.len());
                    rep.check(format!("{label}: alt follows sym"), same && gap <= 1, format!("sym {} alt {}", sym.len(), run.len()));
                }
            }
            rep.computed("runs", sizes.len())
                .computed("min_size", *sizes.iter().min().expect("at least one run"))
                .computed("max_size", *sizes.iter().max().expect("at least one run"));
        }
    }
    if rep.status == Status::Pass && rep.checks.is_empty() && rep.exhausted.is_none() && !hyp {
        rep.flag("no assertions apply");
    }
    Ok(rep)
}
