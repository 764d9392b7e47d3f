use super::{CellState, RSet};
use crate::error::{Error, Result};
use serde::Serialize;

/// Quantities recorded after step `i` of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepDiagnostics {
    pub i: usize,
    /// Number of points in no chosen set so far.
    pub e: usize,
    /// Points lying in more than one chosen set.
    pub f: Vec<usize>,
    /// The common residue size, when one exists (never for `i = 1`).
    pub u: Option<usize>,
    /// Indices `j <= i` whose residue `α_j \ F_i` has size `u` or `u - 1`.
    pub o: Vec<usize>,
    /// `excessive[j - 1]` flags `|α_j \ F_i| > u`.
    pub excessive: Vec<bool>,
}

impl StepDiagnostics {
    pub fn is_excessive(&self) -> bool {
        self.excessive.iter().any(|&x| x)
    }
}

/// Post-hoc statistics of a greedy run on `r`-sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyDiagnostics {
    pub n: usize,
    pub r: usize,
    pub base: Vec<RSet>,
    /// Length of the longest pairwise-disjoint prefix.
    pub s: usize,
    pub steps: Vec<StepDiagnostics>,
    /// `|N(u)|` for every point `u`, in order, at the end of the run.
    pub final_neighbourhood_sizes: Vec<usize>,
    /// `n <= 2r`: the run is well defined but outside the analysed range.
    pub degenerate: bool,
    /// `n >= 4r^2 >= 16`, the range in which the checks apply.
    pub in_range: bool,
}

fn residue(alpha: &RSet, multi: &[bool]) -> usize {
    alpha.points().iter().filter(|&&p| !multi[p - 1]).count()
}

impl GreedyDiagnostics {
    pub fn from_base(n: usize, r: usize, base: Vec<RSet>) -> Result<Self> {
        let state = CellState::new(n, r)?;
        let mut cover = vec![0usize; n];
        let mut s = 0;
        let mut disjoint = true;
        let mut steps = Vec::with_capacity(base.len());
        for (idx, alpha) in base.iter().enumerate() {
            state.check_set(alpha)?;
            let i = idx + 1;
            if disjoint && alpha.points().iter().all(|&p| cover[p - 1] == 0) {
                s = i;
            } else {
                disjoint = false;
            }
            for &p in alpha.points() {
                cover[p - 1] += 1;
            }
            let multi: Vec<bool> = cover.iter().map(|&c| c > 1).collect();
            let sizes: Vec<usize> = base[..i].iter().map(|a| residue(a, &multi)).collect();
            let prefix = i.min(s);
            let u = (i > 1)
                .then(|| {
                    (0..=r).rev().find(|&u| {
                        let band = |x: usize| x == u || x + 1 == u;
                        sizes[..prefix].iter().all(|&x| band(x)) && (1..i).any(|j| sizes[j - 1] == u)
                    })
                })
                .flatten();
            let (o, excessive) = match u {
                Some(u) => (
                    (1..=i).filter(|&j| sizes[j - 1] == u || sizes[j - 1] + 1 == u).collect(),
                    sizes.iter().map(|&x| x > u).collect(),
                ),
                None => (Vec::new(), vec![false; i]),
            };
            steps.push(StepDiagnostics {
                i,
                e: cover.iter().filter(|&&c| c == 0).count(),
                f: (1..=n).filter(|&p| multi[p - 1]).collect(),
                u,
                o,
                excessive,
            });
        }
        Ok(GreedyDiagnostics {
            n,
            r,
            base,
            s,
            steps,
            final_neighbourhood_sizes: cover,
            degenerate: n <= 2 * r,
            in_range: n >= 4 * r * r && 4 * r * r >= 16,
        })
    }

    pub fn step(&self, i: usize) -> &StepDiagnostics {
        &self.steps[i - 1]
    }
}

/// Result of one assertion of [`check_section2_lemmas`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// First step at which the assertion fails.
    pub step: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<CheckOutcome>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Checker {
    checks: Vec<CheckOutcome>,
}

impl Checker {
    fn record(&mut self, name: &'static str, failure: Option<(usize, String)>) {
        let (passed, step, detail) = match failure {
            None => (true, None, String::new()),
            Some((step, detail)) => (false, Some(step), detail),
        };
        self.checks.push(CheckOutcome { name, passed, step, detail });
    }
}

/// Verifies the structural statements about greedy runs with `n >= 4r^2 >= 16`
/// on a recorded trace:
///
/// * `s >= 3r`;
/// * the orbit comparison `(|Δ₁ \ α| + 1)(|Δ₂ ∩ α| + 1) >= |Δ₂ \ α| · |Δ₁ ∩ α|`
///   for every pair of cells before each step with `Δ₁ ∩ α ≠ ∅`;
/// * `u_2 = r` and `u_i ∈ {u_{i-1}, u_{i-1} - 1}`;
/// * at least `3r` residues of size `u_i` or `u_i - 1` once `i >= s`;
/// * when `B_{i+1}` is the first excessive prefix after a clean one, `α_{i+1}`
///   is its only excessive set, and if `u_i > 2` one of `B_{i+2}`, `B_{i+3}`
///   is clean again;
/// * at the end every neighbourhood has size at most 2, apart from at most `r`
///   points with neighbourhood size 3;
/// * `e_i` never increases and `F_i` never shrinks.
pub fn check_section2_lemmas(trace: &GreedyDiagnostics) -> Result<LemmaReport> {
    if !trace.in_range {
        return Err(Error::hypothesis("n >= 4r^2 >= 16", format!("n = {}, r = {}", trace.n, trace.r)));
    }
    let (n, r) = (trace.n, trace.r);
    let len = trace.steps.len();
    let mut ck = Checker { checks: Vec::new() };

    ck.record("disjoint-prefix", (trace.s < 3 * r).then(|| (trace.s, format!("s = {} < 3r = {}", trace.s, 3 * r))));

    let mut state = CellState::new(n, r)?;
    let mut failure = None;
    for (idx, alpha) in trace.base.iter().enumerate() {
        if failure.is_none() {
            let counts = state.counts(alpha)?;
            let cells = state.cells();
            'pairs: for (c1, &a1) in cells.iter().zip(&counts) {
                if a1 == 0 {
                    continue;
                }
                for (c2, &a2) in cells.iter().zip(&counts) {
                    if (c1.size - a1 + 1) * (a2 + 1) < (c2.size - a2) * a1 {
                        failure = Some((
                            idx + 1,
                            format!("cells {:?} and {:?} violate the orbit comparison", c1.signature, c2.signature),
                        ));
                        break 'pairs;
                    }
                }
            }
        }
        state.push(alpha.clone())?;
    }
    ck.record("orbit-comparison", failure);

    let mut failure = None;
    if len >= 2 && trace.step(2).u != Some(r) {
        failure = Some((2, format!("u_2 = {:?}, expected {r}", trace.step(2).u)));
    }
    for i in 3..=len {
        if failure.is_some() {
            break;
        }
        let (prev, cur) = (trace.step(i - 1).u, trace.step(i).u);
        let ok = matches!((prev, cur), (Some(p), Some(c)) if c == p || c + 1 == p);
        if !ok {
            failure = Some((i, format!("u_{} = {prev:?}, u_{i} = {cur:?}", i - 1)));
        }
    }
    ck.record("residue-rank", failure);

    let failure = (trace.s.max(2)..=len).find_map(|i| {
        let o = trace.step(i).o.len();
        (o < 3 * r).then(|| (i, format!("|O_{i}| = {o} < {}", 3 * r)))
    });
    ck.record("residue-count", failure);

    let excessive = |i: usize| i >= 1 && i <= len && trace.step(i).is_excessive();
    let mut unique = None;
    let mut recovery = None;
    for i in 1..len {
        if excessive(i) || !excessive(i + 1) {
            continue;
        }
        let flags = &trace.step(i + 1).excessive;
        if unique.is_none() && flags.iter().enumerate().any(|(j, &x)| x && j != i) {
            unique = Some((i + 1, format!("B_{} has excessive sets other than its last", i + 1)));
        }
        let big = trace.step(i).u.is_some_and(|u| u > 2);
        let settles = (i + 2..=i + 3).any(|j| j > len || !excessive(j));
        if recovery.is_none() && big && !settles {
            recovery = Some((i + 1, format!("B_{} and B_{} are still excessive", i + 2, i + 3)));
        }
    }
    ck.record("unique-excessive", unique);
    ck.record("excess-recovers", recovery);

    let sizes = &trace.final_neighbourhood_sizes;
    let threes = sizes.iter().filter(|&&x| x == 3).count();
    let worst = sizes.iter().copied().max().unwrap_or(0);
    ck.record(
        "final-neighbourhoods",
        (worst > 3 || threes > r).then(|| (len, format!("max |N| = {worst}, {threes} points with |N| = 3"))),
    );

    let failure = (2..=len).find_map(|i| {
        let (a, b) = (trace.step(i - 1), trace.step(i));
        if b.e > a.e {
            Some((i, format!("e_{i} = {} > e_{} = {}", b.e, i - 1, a.e)))
        } else if !a.f.iter().all(|p| b.f.contains(p)) {
            Some((i, format!("F_{} is not contained in F_{i}", i - 1)))
        } else {
            None
        }
    });
    ck.record("monotone", failure);

    Ok(LemmaReport { checks: ck.checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[usize]) -> RSet {
        RSet::new(points.to_vec()).unwrap()
    }

    #[test]
    fn prefix_quantities() {
        let base = vec![set(&[1, 2]), set(&[3, 4]), set(&[1, 3]), set(&[5, 6])];
        let d = GreedyDiagnostics::from_base(16, 2, base).unwrap();
        assert_eq!(d.s, 2);
        assert_eq!(d.step(1).u, None);
        assert_eq!(d.step(2).u, Some(2));
        assert_eq!(d.step(3).f, vec![1, 3]);
        assert_eq!(d.step(3).e, 12);
        // Residues after step 3: {2}, {4}, {} with s = 2, so u_3 = 1.
        assert_eq!(d.step(3).u, Some(1));
        assert_eq!(d.step(3).o, vec![1, 2, 3]);
        // {5,6} has residue 2 > u_4 = 1.
        assert_eq!(d.step(4).u, Some(1));
        assert_eq!(d.step(4).excessive, vec![false, false, false, true]);
    }
}
