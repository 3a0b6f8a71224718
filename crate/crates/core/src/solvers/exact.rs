//! Exact solver by enumerating role assignments.
//!
//! Dissolved sets of the forced size are enumerated as bitmasks. Each one is
//! first checked with no winners; surviving sets then grow a winning set by
//! include/exclude search, where every include is confirmed with a max-flow.
//! Realizability is monotone under shrinking the winning set, so a failed
//! include prunes its whole subtree.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::SolveError;
use crate::flow::{build_role_network, extract_biased_solution, max_flow};
use crate::model::{BiasedDissolution, Instance};
use crate::par;

use super::SolveOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Largest number of districts accepted.
    pub max_n: usize,
    /// Worker threads; 0 uses every core and 1 stays on the calling thread.
    pub threads: usize,
    /// Stop as soon as a witness reaches the instance target instead of
    /// maximizing the winning set.
    pub stop_at_target: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            max_n: 18,
            threads: 0,
            stop_at_target: false,
        }
    }
}

impl ExactOptions {
    pub fn sequential() -> Self {
        ExactOptions {
            threads: 1,
            ..ExactOptions::default()
        }
    }
}

fn realize(
    inst: &Instance,
    dissolved: &BTreeSet<usize>,
    winning: &BTreeSet<usize>,
) -> Option<BiasedDissolution> {
    let rn = build_role_network(inst, dissolved, winning).ok()?;
    let flow = max_flow(&rn.network);
    extract_biased_solution(&rn, &flow).ok()
}

/// Best result found so far, shared across workers. Ties keep the smallest
/// dissolved mask when several workers finish with the same size.
struct Best {
    size: AtomicUsize,
    found: AtomicBool,
    slot: Mutex<Option<(usize, u32, BiasedDissolution)>>,
}

impl Best {
    fn offer(&self, size: usize, mask: u32, witness: BiasedDissolution) {
        let mut slot = self.slot.lock().expect("poisoned");
        let better = match &*slot {
            None => true,
            Some((s, m, _)) => size > *s || (size == *s && mask < *m),
        };
        if better {
            *slot = Some((size, mask, witness));
            self.size.fetch_max(size, Ordering::SeqCst);
            self.found.store(true, Ordering::SeqCst);
        }
    }
}

struct Search<'a> {
    inst: &'a Instance,
    mask: u32,
    dissolved: BTreeSet<usize>,
    candidates: Vec<usize>,
    best: &'a Best,
    stop: &'a AtomicBool,
    goal: Option<usize>,
}

impl Search<'_> {
    fn beaten(&self, bound: usize) -> bool {
        // strict while nothing is recorded so that size-zero witnesses count
        let best = self.best.size.load(Ordering::SeqCst);
        self.best.found.load(Ordering::SeqCst) && bound <= best
    }

    fn dfs(&self, i: usize, winning: &mut BTreeSet<usize>, current: &BiasedDissolution) {
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        if self.beaten(winning.len() + self.candidates.len() - i) {
            return;
        }
        if i == self.candidates.len() {
            self.best.offer(winning.len(), self.mask, current.clone());
            if self.goal.is_some_and(|g| winning.len() >= g) {
                self.stop.store(true, Ordering::SeqCst);
            }
            return;
        }
        let c = self.candidates[i];
        winning.insert(c);
        if let Some(w) = realize(self.inst, &self.dissolved, winning) {
            self.dfs(i + 1, winning, &w);
        }
        winning.remove(&c);
        self.dfs(i + 1, winning, current);
    }
}

/// Remaining districts that could win next to this dissolved set, and an
/// upper bound on how many can win simultaneously.
fn candidates(inst: &Instance, dissolved: &BTreeSet<usize>) -> (Vec<usize>, usize) {
    let supply: u64 = dissolved.iter().map(|&d| inst.alpha_of(d)).sum();
    let mut cands = Vec::new();
    let mut demands = Vec::new();
    for v in (0..inst.n()).filter(|v| !dissolved.contains(v)) {
        let kappa = inst.demand(v);
        if kappa > inst.delta_s() {
            continue;
        }
        let reach: u64 = inst
            .graph()
            .neighbors(v)
            .filter(|u| dissolved.contains(u))
            .map(|u| inst.alpha_of(u))
            .sum();
        if kappa <= reach {
            cands.push(v);
            demands.push(kappa);
        }
    }
    demands.sort_unstable();
    let mut used = 0;
    let bound = demands
        .iter()
        .take_while(|&&k| {
            used += k;
            used <= supply
        })
        .count();
    (cands, bound)
}

/// Exact solver. Plain instances return the witness of the smallest
/// feasible dissolved mask; biased instances maximize the winning set.
pub fn solve_exact(inst: &Instance, opts: &ExactOptions) -> Result<SolveOutcome, SolveError> {
    let n = inst.n();
    if n > opts.max_n || n > 32 {
        return Err(SolveError::TooLarge {
            n,
            cap: opts.max_n.min(32),
        });
    }
    let Some(split) = inst.derived_counts().split else {
        return Ok(SolveOutcome::infeasible(0));
    };
    let masks = par::subsets_of_size(n, split.dissolved);
    let best = Best {
        size: AtomicUsize::new(0),
        found: AtomicBool::new(false),
        slot: Mutex::new(None),
    };
    let stop = AtomicBool::new(false);
    let empty = BTreeSet::new();

    if !inst.is_biased() {
        // any witness will do; keep the smallest mask for determinism
        let first = AtomicUsize::new(usize::MAX);
        par::for_each(&masks, opts.threads, |&mask| {
            if (mask as usize) > first.load(Ordering::Relaxed) {
                return;
            }
            let dissolved = par::mask_to_set(mask);
            if let Some(w) = realize(inst, &dissolved, &empty) {
                first.fetch_min(mask as usize, Ordering::SeqCst);
                best.offer(0, mask, w);
            }
        });
    } else {
        let goal = opts.stop_at_target.then(|| inst.target());
        par::for_each(&masks, opts.threads, |&mask| {
            if stop.load(Ordering::Relaxed) {
                return;
            }
            let dissolved = par::mask_to_set(mask);
            let Some(base) = realize(inst, &dissolved, &empty) else {
                return;
            };
            let (cands, bound) = candidates(inst, &dissolved);
            let search = Search {
                inst,
                mask,
                dissolved,
                candidates: cands,
                best: &best,
                stop: &stop,
                goal,
            };
            if search.beaten(bound) {
                return;
            }
            search.dfs(0, &mut BTreeSet::new(), &base);
        });
    }

    match best.slot.into_inner().expect("poisoned") {
        Some((_, _, witness)) => SolveOutcome::checked(inst, witness),
        None => Ok(SolveOutcome::infeasible(0)),
    }
}
