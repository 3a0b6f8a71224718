//! Brute-force reference solvers for small instances.
//!
//! Nothing here touches the flow or matching code: voter movements are found
//! by exhaustive search over integral assignments, dissolved districts in id
//! order, with supply/demand pruning and a memo of failed states.

use std::collections::{BTreeSet, HashSet};

use crate::error::OracleError;
use crate::graph::Graph;
use crate::model::{BiasedDissolution, Dissolution, Instance};
use crate::par;
use crate::solvers::{SolveOutcome, Star};

/// Largest instance accepted by the plain oracle.
pub const DISSOLUTION_CAP: usize = 10;
/// Largest instance accepted by the biased oracle.
pub const BIASED_CAP: usize = 10;

struct Search<'a> {
    inst: &'a Instance,
    dissolved: Vec<usize>,
    winner: Vec<bool>,
    kappa: Vec<u64>,
    /// Surviving neighbors of each dissolved district.
    targets: Vec<Vec<usize>>,
    /// Index of the last dissolved neighbor, per surviving district.
    last_source: Vec<Option<usize>>,
    suffix_alpha: Vec<u64>,
    received: Vec<u64>,
    got_a: Vec<u64>,
    x: Vec<Vec<u64>>,
    a: Vec<Vec<u64>>,
    failed: HashSet<(usize, Vec<u64>, Vec<u64>)>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, dissolved: &BTreeSet<usize>, winning: &BTreeSet<usize>) -> Self {
        let n = inst.n();
        let dissolved: Vec<usize> = dissolved.iter().copied().collect();
        let mut winner = vec![false; n];
        let mut kappa = vec![0; n];
        for &w in winning {
            winner[w] = true;
            kappa[w] = inst.demand(w);
        }
        let mut is_d = vec![false; n];
        for &d in &dissolved {
            is_d[d] = true;
        }
        let targets: Vec<Vec<usize>> = dissolved
            .iter()
            .map(|&d| inst.graph().neighbors(d).filter(|&v| !is_d[v]).collect())
            .collect();
        let mut last_source = vec![None; n];
        for (i, ts) in targets.iter().enumerate() {
            for &v in ts {
                last_source[v] = Some(i);
            }
        }
        let mut suffix_alpha = vec![0; dissolved.len() + 1];
        for i in (0..dissolved.len()).rev() {
            suffix_alpha[i] = suffix_alpha[i + 1] + inst.alpha_of(dissolved[i]);
        }
        let x = targets.iter().map(|t| vec![0; t.len()]).collect();
        let a = targets.iter().map(|t| vec![0; t.len()]).collect();
        Search {
            inst,
            dissolved,
            winner,
            kappa,
            targets,
            last_source,
            suffix_alpha,
            received: vec![0; n],
            got_a: vec![0; n],
            x,
            a,
            failed: HashSet::new(),
        }
    }

    fn is_survivor(&self, v: usize) -> bool {
        self.dissolved.binary_search(&v).is_err()
    }

    fn run(&mut self, i: usize) -> bool {
        let (s, delta_s) = (self.inst.s(), self.inst.delta_s());
        let n = self.inst.n();
        let open: u64 = (0..n)
            .filter(|&v| self.is_survivor(v))
            .map(|v| delta_s - self.received[v])
            .sum();
        if open != s * (self.dissolved.len() - i) as u64 {
            return false;
        }
        let missing_a: u64 = (0..n)
            .filter(|&v| self.winner[v])
            .map(|v| self.kappa[v] - self.got_a[v])
            .sum();
        if missing_a > self.suffix_alpha[i] {
            return false;
        }
        let unreachable = (0..n).any(|v| {
            self.is_survivor(v)
                && self.received[v] < delta_s
                && self.last_source[v].is_none_or(|j| j < i)
        });
        if unreachable {
            return false;
        }
        if i == self.dissolved.len() {
            return true;
        }
        let key = (i, self.received.clone(), self.got_a.clone());
        if self.failed.contains(&key) {
            return false;
        }
        if self.place(i, 0, s) {
            return true;
        }
        self.failed.insert(key);
        false
    }

    /// Distributes the `left` voters of dissolved district `i` over its
    /// targets `k..`.
    fn place(&mut self, i: usize, k: usize, left: u64) -> bool {
        let len = self.targets[i].len();
        if k == len {
            return left == 0 && self.split(i, 0, self.inst.alpha_of(self.dissolved[i]));
        }
        let v = self.targets[i][k];
        let cap = left.min(self.inst.delta_s() - self.received[v]);
        let lo = if k + 1 == len { left } else { 0 };
        if lo > cap {
            return false;
        }
        for x in (lo..=cap).rev() {
            self.received[v] += x;
            self.x[i][k] = x;
            if self.place(i, k + 1, left - x) {
                return true;
            }
            self.received[v] -= x;
        }
        self.x[i][k] = 0;
        false
    }

    /// Chooses how many of the `left` A-supporters of district `i` go to
    /// each winning target; the rest can ride along any remaining voters.
    fn split(&mut self, i: usize, k: usize, left: u64) -> bool {
        if k == self.targets[i].len() {
            return self.run(i + 1);
        }
        let v = self.targets[i][k];
        let top = if self.winner[v] {
            self.x[i][k].min(left).min(self.kappa[v] - self.got_a[v])
        } else {
            0
        };
        for a in (0..=top).rev() {
            self.got_a[v] += a;
            self.a[i][k] = a;
            if self.split(i, k + 1, left - a) {
                return true;
            }
            self.got_a[v] -= a;
        }
        self.a[i][k] = 0;
        false
    }

    fn witness(&self, winning: &BTreeSet<usize>) -> BiasedDissolution {
        let mut sol = BiasedDissolution {
            base: Dissolution::new(self.dissolved.iter().copied(), []),
            winning: winning.clone(),
            ..BiasedDissolution::default()
        };
        for (i, &d) in self.dissolved.iter().enumerate() {
            let mut left = self.inst.alpha_of(d) - self.a[i].iter().sum::<u64>();
            for (k, &v) in self.targets[i].iter().enumerate() {
                let (x, a) = (self.x[i][k], self.a[i][k]);
                let extra = left.min(x - a);
                left -= extra;
                sol.base.add_move((d, v), x);
                if a + extra > 0 {
                    sol.a_moves.insert((d, v), a + extra);
                }
            }
        }
        sol
    }
}

fn sizes_balance(inst: &Instance, dissolved: usize) -> bool {
    let n = inst.n() as u64;
    let d = dissolved as u64;
    d <= n && inst.s() * d == inst.delta_s() * (n - d)
}

fn check_cap(inst: &Instance, cap: usize) -> Result<(), OracleError> {
    if inst.n() > cap {
        Err(OracleError::TooLarge { n: inst.n(), cap })
    } else {
        Ok(())
    }
}

/// Realizes the given roles by exhaustive search, ignoring the instance
/// target. `None` when no movement fits.
pub fn brute_force_fixed_roles(
    inst: &Instance,
    dissolved: &BTreeSet<usize>,
    winning: &BTreeSet<usize>,
) -> Result<Option<BiasedDissolution>, OracleError> {
    check_cap(inst, BIASED_CAP)?;
    if !winning.is_empty() && !inst.is_biased() {
        return Err(OracleError::MissingAlpha);
    }
    let n = inst.n();
    let invalid = dissolved.iter().chain(winning).any(|&v| v >= n)
        || dissolved.intersection(winning).next().is_some()
        || winning.iter().any(|&w| !inst.is_winnable(w));
    if invalid || !sizes_balance(inst, dissolved.len()) {
        return Ok(None);
    }
    let mut search = Search::new(inst, dissolved, winning);
    Ok(search.run(0).then(|| search.witness(winning)))
}

/// Plain feasibility: is there any dissolution? The instance target is
/// ignored; a biased instance gets a witness with an empty winning set.
pub fn brute_force_dissolution(inst: &Instance) -> Result<SolveOutcome, OracleError> {
    check_cap(inst, DISSOLUTION_CAP)?;
    let Some(split) = inst.derived_counts().split else {
        return Ok(SolveOutcome::infeasible(0));
    };
    let none = BTreeSet::new();
    for mask in par::subsets_of_size(inst.n(), split.dissolved) {
        let dissolved = par::mask_to_set(mask);
        let mut search = Search::new(inst, &dissolved, &none);
        if search.run(0) {
            return Ok(SolveOutcome {
                feasible: true,
                witness: Some(search.witness(&none)),
                achieved_r_alpha: 0,
            });
        }
    }
    Ok(SolveOutcome::infeasible(0))
}

fn best_for(inst: &Instance, dissolved: &BTreeSet<usize>) -> Option<BiasedDissolution> {
    let mut base = Search::new(inst, dissolved, &BTreeSet::new());
    if !base.run(0) {
        return None;
    }
    let supply: u64 = dissolved.iter().map(|&d| inst.alpha_of(d)).sum();
    let cands: Vec<usize> = (0..inst.n())
        .filter(|v| !dissolved.contains(v) && inst.is_winnable(*v))
        .collect();
    for size in (1..=cands.len()).rev() {
        for mask in par::subsets_of_size(cands.len(), size) {
            let winning: BTreeSet<usize> = par::mask_to_set(mask).into_iter().map(|i| cands[i]).collect();
            if winning.iter().map(|&w| inst.demand(w)).sum::<u64>() > supply {
                continue;
            }
            let mut search = Search::new(inst, dissolved, &winning);
            if search.run(0) {
                return Some(search.witness(&winning));
            }
        }
    }
    Some(base.witness(&BTreeSet::new()))
}

/// Maximum achievable winning set over all dissolved sets and all winning
/// sets, with `threads` as in [`crate::solvers::ExactOptions`].
pub fn brute_force_biased_with(inst: &Instance, threads: usize) -> Result<SolveOutcome, OracleError> {
    check_cap(inst, BIASED_CAP)?;
    if !inst.is_biased() {
        return Err(OracleError::MissingAlpha);
    }
    let Some(split) = inst.derived_counts().split else {
        return Ok(SolveOutcome::infeasible(0));
    };
    let masks = par::subsets_of_size(inst.n(), split.dissolved);
    let per_mask = par::map(&masks, threads, |&mask| best_for(inst, &par::mask_to_set(mask)));
    let mut best: Option<BiasedDissolution> = None;
    for w in per_mask.into_iter().flatten() {
        if best.as_ref().is_none_or(|b| w.winning.len() > b.winning.len()) {
            best = Some(w);
        }
    }
    Ok(match best {
        Some(w) if w.winning.len() >= inst.target() => SolveOutcome {
            feasible: true,
            achieved_r_alpha: w.winning.len(),
            witness: Some(w),
        },
        Some(w) => SolveOutcome::infeasible(w.winning.len()),
        None => SolveOutcome::infeasible(0),
    })
}

pub fn brute_force_biased(inst: &Instance) -> Result<SolveOutcome, OracleError> {
    brute_force_biased_with(inst, 0)
}

/// A partition of the vertices into `t`-stars, found by trying every
/// `(t + 1)`-set around the lowest uncovered vertex.
pub fn brute_force_star_partition(g: &Graph, t: usize) -> Option<Vec<Star>> {
    fn rec(g: &Graph, t: usize, free: &mut Vec<bool>, out: &mut Vec<Star>) -> bool {
        let Some(first) = free.iter().position(|&f| f) else {
            return true;
        };
        let rest: Vec<usize> = (first + 1..free.len()).filter(|&v| free[v]).collect();
        if rest.len() < t {
            return false;
        }
        for mask in par::subsets_of_size(rest.len(), t) {
            let mut part = vec![first];
            part.extend(par::mask_to_set(mask).into_iter().map(|i| rest[i]));
            let Some(&center) = part
                .iter()
                .find(|&&c| part.iter().all(|&v| v == c || g.has_edge(c, v)))
            else {
                continue;
            };
            for &v in &part {
                free[v] = false;
            }
            out.push(Star {
                center,
                leaves: part.iter().copied().filter(|&v| v != center).collect(),
            });
            if rec(g, t, free, out) {
                return true;
            }
            out.pop();
            for &v in &part {
                free[v] = true;
            }
        }
        false
    }
    if t == 0 {
        return None;
    }
    let mut out = Vec::new();
    rec(g, t, &mut vec![true; g.vertex_count()], &mut out).then_some(out)
}
