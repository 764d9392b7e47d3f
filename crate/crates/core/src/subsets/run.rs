use super::metagreedy::{deterministic_choice, meta_greedy_candidates, realise};
use super::{validate_nr, CellState, GreedyDiagnostics, RSet};
use crate::error::{Error, Result};
use crate::GroupKind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// How a run resolves the choice between equally good sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Smallest signature first; see [`deterministic_choice`](super::deterministic_choice).
    Deterministic,
    /// Step `i` takes candidate `seq[i]` of [`meta_greedy_candidates`](super::meta_greedy_candidates);
    /// steps past the end of `seq` fall back to [`Policy::Deterministic`].
    Choices(Vec<usize>),
    /// Uniform choice among candidates, driven by a ChaCha8 stream.
    Seeded(u64),
}

#[derive(Clone, Debug, Serialize)]
pub struct GreedyRun {
    pub group: GroupKind,
    pub diagnostics: GreedyDiagnostics,
}

impl GreedyRun {
    pub fn base(&self) -> &[RSet] {
        &self.diagnostics.base
    }

    pub fn len(&self) -> usize {
        self.diagnostics.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagnostics.base.is_empty()
    }
}

/// Runs the greedy algorithm for `group` on `r`-subsets of `[n]` until the
/// chosen sets form a base.
///
/// Both groups make the same choices: while the stabiliser in `S_n` is
/// non-trivial it contains a transposition, so its orbits on sets agree with
/// those of its even part. The alternating run may therefore end one step
/// earlier, and never later.
pub fn greedy_run(n: usize, r: usize, group: GroupKind, policy: &Policy) -> Result<GreedyRun> {
    validate_nr(n, r)?;
    let mut state = CellState::new(n, r)?;
    let mut rng = match policy {
        Policy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    while !state.is_base(group) {
        let step = state.chosen().len();
        let counts = match (policy, rng.as_mut()) {
            (Policy::Choices(seq), _) if step < seq.len() => {
                let mut cands = meta_greedy_candidates(&state);
                let index = seq[step];
                if index >= cands.len() {
                    return Err(Error::InvalidPolicy { step: step + 1, index, available: cands.len() });
                }
                cands.swap_remove(index)
            }
            (Policy::Seeded(_), Some(rng)) => {
                let mut cands = meta_greedy_candidates(&state);
                let index = rng.gen_range(0..cands.len());
                cands.swap_remove(index)
            }
            _ => deterministic_choice(&state),
        };
        let alpha = realise(&state, &counts);
        state.push(alpha)?;
    }
    let diagnostics = GreedyDiagnostics::from_base(n, r, state.chosen().to_vec())?;
    Ok(GreedyRun { group, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_action() {
        let sym = greedy_run(5, 1, GroupKind::Sym, &Policy::Deterministic).unwrap();
        assert_eq!(sym.len(), 4);
        let alt = greedy_run(5, 1, GroupKind::Alt, &Policy::Deterministic).unwrap();
        assert_eq!(alt.len(), 3);
        assert_eq!(alt.base(), &sym.base()[..3]);
    }

    #[test]
    fn bad_policy_names_step() {
        let err = greedy_run(8, 2, GroupKind::Sym, &Policy::Choices(vec![0, 0, 99])).unwrap_err();
        assert!(matches!(err, Error::InvalidPolicy { step: 3, index: 99, .. }), "{err}");
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = greedy_run(20, 2, GroupKind::Sym, &Policy::Seeded(7)).unwrap();
        let b = greedy_run(20, 2, GroupKind::Sym, &Policy::Seeded(7)).unwrap();
        assert_eq!(a.base(), b.base());
    }
}
