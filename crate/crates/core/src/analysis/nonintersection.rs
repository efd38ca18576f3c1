//! Non-intersection of two planar random walks.

use super::Estimate;
use crate::error::{invalid, Result};
use crate::lattice::{srw_direction_stream, SQUARE_STEPS};
use crate::rng::derive_trial_seed;
use rustc_hash::FxHashSet;

/// First `k` at which the ranges of two `k`-step walks started at `(0, 0)`
/// and `(1, 0)` meet, or `None` if they are still disjoint after `max_steps`.
/// Both walks advance one step at a time, so the ranges up to every `n` are
/// decided by one run.
pub fn first_meeting(max_steps: usize, seed_a: u64, seed_b: u64) -> Option<usize> {
    let mut a = (0, 0);
    let mut b = (1, 0);
    let mut range_a = FxHashSet::default();
    let mut range_b = FxHashSet::default();
    range_a.insert(a);
    range_b.insert(b);
    let mut steps_a = srw_direction_stream(seed_a);
    let mut steps_b = srw_direction_stream(seed_b);
    for k in 1..=max_steps {
        let (da, db) = (SQUARE_STEPS[steps_a.next().unwrap()], SQUARE_STEPS[steps_b.next().unwrap()]);
        a = (a.0 + da.0, a.1 + da.1);
        b = (b.0 + db.0, b.1 + db.1);
        range_a.insert(a);
        range_b.insert(b);
        if range_b.contains(&a) || range_a.contains(&b) {
            return Some(k);
        }
    }
    None
}

fn walk_seeds(seed: u64, trial: usize) -> (u64, u64) {
    (derive_trial_seed(seed, 2 * trial as u64), derive_trial_seed(seed, 2 * trial as u64 + 1))
}

/// Probability that two independent `n`-step walks from adjacent sites have
/// disjoint ranges.
pub fn nonintersection_probability(n: usize, trials: usize, seed: u64) -> Result<Estimate> {
    Ok(nonintersection_curve(&[n], trials, seed)?.remove(0))
}

/// [`nonintersection_probability`] at several lengths from the same walks,
/// so the estimates are nonincreasing in `n`.
pub fn nonintersection_curve(ns: &[usize], trials: usize, seed: u64) -> Result<Vec<Estimate>> {
    if ns.is_empty() || ns.contains(&0) {
        return invalid("walk lengths must be at least 1");
    }
    let max = *ns.iter().max().unwrap();
    let meetings: Vec<Option<usize>> = (0..trials)
        .map(|i| {
            let (a, b) = walk_seeds(seed, i);
            first_meeting(max, a, b)
        })
        .collect();
    ns.iter()
        .map(|&n| {
            let disjoint = meetings.iter().filter(|m| m.is_none_or(|k| k > n)).count();
            Estimate::proportion(disjoint, trials)
        })
        .collect()
}
