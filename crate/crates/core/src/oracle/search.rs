use super::domain::Domain;
use super::group::ExplicitGroup;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Size limits for the brute-force searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCaps {
    pub max_domain: usize,
    pub max_group: usize,
    /// Largest `|G| * |Ω|` for which an image table is precomputed.
    pub max_table: usize,
    /// Node limit for [`exhaustive_greedy`].
    pub max_nodes: u64,
    /// Explore one point per largest orbit instead of every point. Run lengths
    /// are unchanged (points of one orbit give conjugate continuations) but
    /// the run count then counts orbit representatives only.
    pub dedup_orbits: bool,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_domain: 100_000,
            max_group: 1_000_000,
            max_table: 20_000_000,
            max_nodes: 50_000_000,
            dedup_orbits: false,
        }
    }
}

/// Outcome of enumerating every greedy run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyCensus {
    /// Largest greedy base size.
    pub max: usize,
    /// Smallest greedy base size.
    pub min: usize,
    /// Number of complete runs enumerated.
    pub runs: u128,
}

struct Ctx<'a> {
    group: &'a ExplicitGroup,
    domain: &'a Domain,
    table: Option<Vec<u32>>,
}

impl<'a> Ctx<'a> {
    fn new(group: &'a ExplicitGroup, domain: &'a Domain, caps: &OracleCaps) -> Result<Self> {
        if group.degree() != domain.degree() {
            return Err(Error::invalid(format!(
                "group of degree {} cannot act on a domain of degree {}",
                group.degree(),
                domain.degree()
            )));
        }
        if domain.len() > caps.max_domain {
            return Err(Error::cap("domain size", domain.len() as u128, caps.max_domain as u128));
        }
        if group.order() > caps.max_group {
            return Err(Error::cap("group order", group.order() as u128, caps.max_group as u128));
        }
        let cells = group.order() * domain.len();
        let table = (cells <= caps.max_table).then(|| {
            let mut t = Vec::with_capacity(cells);
            for g in group.elements() {
                for w in 0..domain.len() {
                    t.push(domain.image(g, w) as u32);
                }
            }
            t
        });
        Ok(Ctx { group, domain, table })
    }

    #[inline]
    fn image(&self, g: u32, w: usize) -> usize {
        match &self.table {
            Some(t) => t[g as usize * self.domain.len() + w] as usize,
            None => self.domain.image(&self.group.elements()[g as usize], w),
        }
    }

    fn orbits(&self, sub: &[u32]) -> Vec<Vec<usize>> {
        let n = self.domain.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for w in 0..n {
            if seen[w] {
                continue;
            }
            let mut orbit = Vec::new();
            for &g in sub {
                let x = self.image(g, w);
                if !seen[x] {
                    seen[x] = true;
                    orbit.push(x);
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    fn stabiliser(&self, sub: &[u32], w: usize) -> Vec<u32> {
        sub.iter().copied().filter(|&g| self.image(g, w) == w).collect()
    }

    fn all(&self) -> Vec<u32> {
        (0..self.group.order() as u32).collect()
    }
}

/// Orbits of `group` on `domain`, each sorted, listed by least point.
pub fn orbits_on(group: &ExplicitGroup, domain: &Domain, caps: &OracleCaps) -> Result<Vec<Vec<usize>>> {
    let ctx = Ctx::new(group, domain, caps)?;
    Ok(ctx.orbits(&ctx.all()))
}

/// The subgroup fixing every listed point of `domain`.
pub fn pointwise_stabiliser(
    group: &ExplicitGroup,
    domain: &Domain,
    points: &[usize],
    caps: &OracleCaps,
) -> Result<ExplicitGroup> {
    if let Some(&bad) = points.iter().find(|&&p| p >= domain.len()) {
        return Err(Error::invalid(format!("point index {bad} outside a domain of {}", domain.len())));
    }
    let mut caps = *caps;
    caps.max_table = 0;
    let ctx = Ctx::new(group, domain, &caps)?;
    let elements = group
        .elements()
        .iter()
        .enumerate()
        .filter(|(i, _)| points.iter().all(|&p| ctx.image(*i as u32, p) == p))
        .map(|(_, g)| g.clone())
        .collect();
    ExplicitGroup::from_elements(group.degree(), elements)
}

/// Enumerate every greedy run: at each step any point of any largest orbit of
/// the current pointwise stabiliser, until the stabiliser is trivial.
pub fn exhaustive_greedy(group: &ExplicitGroup, domain: &Domain, caps: &OracleCaps) -> Result<GreedyCensus> {
    let ctx = Ctx::new(group, domain, caps)?;
    let mut census = GreedyCensus { max: 0, min: usize::MAX, runs: 0 };
    let mut nodes = 0u64;
    greedy_dfs(&ctx, &ctx.all(), 0, caps, &mut nodes, &mut census)?;
    Ok(census)
}

fn greedy_dfs(
    ctx: &Ctx<'_>,
    sub: &[u32],
    depth: usize,
    caps: &OracleCaps,
    nodes: &mut u64,
    census: &mut GreedyCensus,
) -> Result<()> {
    *nodes += 1;
    if *nodes > caps.max_nodes {
        return Err(Error::BudgetExhausted { budget: caps.max_nodes, lower_bound: census.max });
    }
    if sub.len() == 1 {
        census.max = census.max.max(depth);
        census.min = census.min.min(depth);
        census.runs += 1;
        return Ok(());
    }
    let orbits = ctx.orbits(sub);
    let largest = orbits.iter().map(Vec::len).max().unwrap_or(0);
    if largest <= 1 {
        return Err(Error::invalid("the group does not act faithfully on the domain"));
    }
    for orbit in orbits.iter().filter(|o| o.len() == largest) {
        let picks: &[usize] = if caps.dedup_orbits { &orbit[..1] } else { orbit };
        for &w in picks {
            let stab = ctx.stabiliser(sub, w);
            greedy_dfs(ctx, &stab, depth + 1, caps, nodes, census)?;
        }
    }
    Ok(())
}

/// Exact minimum base size by iterative deepening over orbit representatives.
///
/// Searches without a depth limit when `|Ω| <= 40`, otherwise to depth 5.
pub fn min_base_size(group: &ExplicitGroup, domain: &Domain, caps: &OracleCaps) -> Result<usize> {
    let ctx = Ctx::new(group, domain, caps)?;
    let limit = if domain.len() <= 40 { domain.degree().max(1) * 2 } else { 5 };
    let all = ctx.all();
    for depth in 0..=limit {
        if base_within(&ctx, &all, depth) {
            return Ok(depth);
        }
    }
    Err(Error::cap("base search depth", (limit + 1) as u128, limit as u128))
}

fn base_within(ctx: &Ctx<'_>, sub: &[u32], depth: usize) -> bool {
    if sub.len() == 1 {
        return true;
    }
    if depth == 0 {
        return false;
    }
    ctx.orbits(sub)
        .iter()
        .filter(|o| o.len() > 1)
        .any(|o| base_within(ctx, &ctx.stabiliser(sub, o[0]), depth - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Action;

    #[test]
    fn transitive_on_pairs() {
        let g = ExplicitGroup::symmetric(4).unwrap();
        let d = Domain::new(4, Action::Subsets { r: 2 }).unwrap();
        let orbits = orbits_on(&g, &d, &OracleCaps::default()).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].len(), 6);
    }

    #[test]
    fn stabiliser_of_nothing_is_everything() {
        let g = ExplicitGroup::alternating(5).unwrap();
        let d = Domain::new(5, Action::Points).unwrap();
        let h = pointwise_stabiliser(&g, &d, &[], &OracleCaps::default()).unwrap();
        assert_eq!(h.order(), 60);
    }

    #[test]
    fn natural_action_bases() {
        for n in 2..=6 {
            let d = Domain::new(n, Action::Points).unwrap();
            let s = ExplicitGroup::symmetric(n).unwrap();
            let census = exhaustive_greedy(&s, &d, &OracleCaps::default()).unwrap();
            assert_eq!((census.max, census.min), (n - 1, n - 1));
            assert_eq!(min_base_size(&s, &d, &OracleCaps::default()).unwrap(), n - 1);
            if n >= 3 {
                let a = ExplicitGroup::alternating(n).unwrap();
                let census = exhaustive_greedy(&a, &d, &OracleCaps::default()).unwrap();
                assert_eq!(census.max, n - 2);
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let g = ExplicitGroup::symmetric(6).unwrap();
        let d = Domain::new(6, Action::Points).unwrap();
        let caps = OracleCaps { max_group: 100, ..OracleCaps::default() };
        assert!(matches!(orbits_on(&g, &d, &caps), Err(Error::CapExceeded { .. })));
    }
}
