//! Fault-tolerant k-supplier without outliers: greedy filtering in
//! decreasing fault-tolerance order, opening `ℓ_j` facilities next to each
//! representative.

use crate::error::SolveError;
use crate::instance::Instance;
use crate::metric::{candidate_radii, dist_rank_all, nearest_facilities};
use crate::solution::Solution;

/// Why a radius guess was rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum FksShortfall {
    /// Representative `rep` has fewer than `ℓ_rep` facilities within `r`.
    Ball { rep: usize, ell: usize },
    /// The representatives together demand more than `k` facilities.
    Demand { demand: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FksRun {
    pub r: f64,
    /// Representatives in pick order.
    pub reps: Vec<usize>,
    /// `children[a]` is the child set of `reps[a]`.
    pub children: Vec<Vec<usize>>,
    pub open: Vec<usize>,
    pub feasible: bool,
    pub shortfall: Option<FksShortfall>,
}

/// One pass of the greedy at radius `r`. Picks the remaining client with the
/// largest tolerance (ties: smallest id), adopts everything within `2r`.
pub fn solve_fks_at_radius(inst: &Instance, r: f64) -> FksRun {
    let mut order: Vec<usize> = inst.clients().collect();
    order.sort_by(|&a, &b| inst.ell(b).cmp(&inst.ell(a)).then(a.cmp(&b)));

    let mut assigned = vec![false; inst.n()];
    let mut reps = Vec::new();
    let mut children = Vec::new();
    let mut open = Vec::new();
    let mut shortfall = None;
    let mut demand = 0;

    for &j in &order {
        if assigned[j] {
            continue;
        }
        let ell = inst.ell(j);
        demand += ell;
        if shortfall.is_none() && dist_rank_all(inst, j, ell) > r {
            shortfall = Some(FksShortfall::Ball { rep: j, ell });
        }
        open.extend(nearest_facilities(inst, j, ell));
        let child: Vec<usize> = inst
            .clients()
            .filter(|&v| !assigned[v] && inst.cc(v, j) <= 2.0 * r)
            .collect();
        for &v in &child {
            assigned[v] = true;
        }
        reps.push(j);
        children.push(child);
    }
    if shortfall.is_none() && demand > inst.k() {
        shortfall = Some(FksShortfall::Demand { demand, k: inst.k() });
    }
    open.sort_unstable();
    open.dedup();
    FksRun {
        r,
        reps,
        children,
        open,
        feasible: shortfall.is_none(),
        shortfall,
    }
}

/// Feasibility of the greedy at every candidate radius, ascending.
pub fn feasibility_profile(inst: &Instance) -> Vec<(f64, bool)> {
    candidate_radii(inst)
        .values()
        .iter()
        .map(|&r| (r, solve_fks_at_radius(inst, r).feasible))
        .collect()
}

/// True if a feasible radius is followed by an infeasible larger one.
pub fn is_monotone(profile: &[(f64, bool)]) -> bool {
    profile.windows(2).all(|w| !w[0].1 || w[1].1)
}

/// Smallest candidate radius at which the greedy succeeds, and its solution.
///
/// The scan is linear: greedy feasibility is not monotone in `r`, and a
/// bisection could land above the optimum. The greedy is always feasible at
/// the optimal radius, so the first feasible candidate is at most optimal
/// and the result is within `3·opt`.
pub fn solve_fks(inst: &Instance) -> Result<Solution, SolveError> {
    for &r in candidate_radii(inst).values() {
        let run = solve_fks_at_radius(inst, r);
        if run.feasible {
            let served: Vec<usize> = inst.clients().collect();
            return Ok(Solution::new(inst, run.open, served, r));
        }
    }
    Err(SolveError::Infeasible)
}
