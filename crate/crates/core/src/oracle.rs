//! Exhaustive reference solvers for small instances.

use std::thread;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::fkso::BudgetProblem;
use crate::instance::Instance;
use crate::metric::{candidate_radii, service_distance};

pub const DEFAULT_MAX_SUBSETS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration needs {needed} subsets, limit is {limit}")]
    BudgetExceeded { needed: u64, limit: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub opt_radius: f64,
    /// Lexicographically first facility set attaining the optimum.
    pub witness_open: Vec<usize>,
    /// The `m` clients it serves best (ties by id).
    pub witness_served: Vec<usize>,
    /// Best coverage at every candidate radius.
    pub coverage_curve: Vec<(f64, usize)>,
    pub subsets: u64,
}

/// Clients `v` with `d_{ℓ_v}(v, open) <= r`.
pub fn coverage_at(inst: &Instance, open: &[usize], r: f64) -> usize {
    inst.clients().filter(|&v| service_distance(inst, v, open) <= r).count()
}

/// `C(n, k)`, saturating.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

struct Partial {
    best: Option<(f64, u64, Vec<usize>)>,
    curve: Vec<usize>,
}

fn scan(inst: &Instance, size: usize, radii: &[f64], worker: usize, jobs: usize) -> Partial {
    let m = inst.m();
    let mut partial = Partial {
        best: None,
        curve: vec![0; radii.len()],
    };
    for (idx, open) in inst.facilities().combinations(size).enumerate() {
        if idx % jobs != worker {
            continue;
        }
        let mut dist: Vec<f64> = inst.clients().map(|v| service_distance(inst, v, &open)).collect();
        dist.sort_by(f64::total_cmp);
        for (slot, &r) in partial.curve.iter_mut().zip(radii) {
            *slot = (*slot).max(dist.partition_point(|&d| d <= r));
        }
        let radius = dist[m - 1];
        let better = match &partial.best {
            None => true,
            Some((b, _, _)) => radius < *b,
        };
        if better && radius.is_finite() {
            partial.best = Some((radius, idx as u64, open));
        }
    }
    partial
}

/// Minimum over `|S| = min(k, |F|)` of the `m`-th smallest service distance.
/// Larger sets never hurt, so smaller sizes need not be enumerated.
pub fn exact_opt(inst: &Instance, max_subsets: u64, jobs: usize) -> Result<OracleResult, OracleError> {
    let size = inst.k().min(inst.f());
    let needed = binomial(inst.f(), size);
    if needed > max_subsets {
        return Err(OracleError::BudgetExceeded {
            needed,
            limit: max_subsets,
        });
    }
    let radii = candidate_radii(inst);
    let jobs = jobs.max(1);
    let partials: Vec<Partial> = thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let radii = radii.values();
                s.spawn(move || scan(inst, size, radii, w, jobs))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("oracle worker panicked"))
            .collect()
    });
    let mut curve = vec![0; radii.len()];
    let mut best: Option<(f64, u64, Vec<usize>)> = None;
    for p in partials {
        for (slot, c) in curve.iter_mut().zip(&p.curve) {
            *slot = (*slot).max(*c);
        }
        if let Some(cand) = p.best {
            let replace = match &best {
                None => true,
                Some(b) => (cand.0, cand.1) < (b.0, b.1),
            };
            if replace {
                best = Some(cand);
            }
        }
    }
    let coverage_curve = radii.values().iter().copied().zip(curve).collect();
    // ℓ_v <= k <= |F| on valid instances, so every client is servable
    let (opt_radius, _, witness_open) = best.expect("valid instances have an optimum");
    let mut by_dist: Vec<(f64, usize)> = inst
        .clients()
        .map(|v| (service_distance(inst, v, &witness_open), v))
        .collect();
    by_dist.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut witness_served: Vec<usize> = by_dist.iter().take(inst.m()).map(|&(_, v)| v).collect();
    witness_served.sort_unstable();
    Ok(OracleResult {
        opt_radius,
        witness_open,
        witness_served,
        coverage_curve,
        subsets: needed,
    })
}

/// Best objective of the budget problem by enumerating every allocation.
pub fn budget_brute(problem: &BudgetProblem, k: usize, limit: u64) -> Result<usize, OracleError> {
    let needed = problem
        .parts
        .iter()
        .map(|p| p.cap.min(k) as u64 + 1)
        .fold(1u64, |a, b| a.saturating_mul(b));
    if needed > limit {
        return Err(OracleError::BudgetExceeded { needed, limit });
    }
    let ranges = problem.parts.iter().map(|p| 0..=p.cap.min(k));
    let best = ranges
        .multi_cartesian_product()
        .filter(|alloc| alloc.iter().sum::<usize>() <= k)
        .map(|alloc| problem.objective(&alloc))
        .max();
    // an empty product yields nothing; zero parts serve nobody
    Ok(best.unwrap_or(0))
}

/// Largest `Σ λ_v` over clients served within `r` by some `k`-subset of
/// facilities: the best left-hand side an integral point can reach.
pub fn max_cut_weight(inst: &Instance, r: f64, lambda: &[u64], max_subsets: u64) -> Result<u64, OracleError> {
    let size = inst.k().min(inst.f());
    let needed = binomial(inst.f(), size);
    if needed > max_subsets {
        return Err(OracleError::BudgetExceeded {
            needed,
            limit: max_subsets,
        });
    }
    Ok(inst
        .facilities()
        .combinations(size)
        .map(|open| {
            inst.clients()
                .filter(|&v| service_distance(inst, v, &open) <= r)
                .map(|v| lambda.get(v).copied().unwrap_or(0))
                .sum()
        })
        .max()
        .unwrap_or(0))
}
