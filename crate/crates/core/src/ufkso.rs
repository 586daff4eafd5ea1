//! Uniform fault tolerance: LP-guided filtering, opening `ℓ` nearest
//! facilities at the `⌊k/ℓ⌋` representatives with the largest child sets,
//! and separation of the floor inequality over well-separated sets.

use crate::error::SolveError;
use crate::instance::Instance;
use crate::lp::{build_weak_lp, solve_lp, CoverageVector, Cut, CutPool, CutTag, LpOutcome, EPS_LP};
use crate::metric::{candidate_radii, nearest_facilities};
use crate::solution::Solution;

#[derive(Debug, Clone, PartialEq)]
pub struct RepAssignment {
    /// Representatives in pick order.
    pub reps: Vec<usize>,
    /// `children[a]` belongs to `reps[a]`.
    pub children: Vec<Vec<usize>>,
    pub cov: CoverageVector,
    pub r: f64,
}

impl RepAssignment {
    pub fn child_of(&self, rep: usize) -> Option<&[usize]> {
        self.reps
            .iter()
            .position(|&j| j == rep)
            .map(|a| self.children[a].as_slice())
    }
}

/// Greedy filtering over clients with positive coverage, in decreasing
/// coverage order; each pick adopts the unassigned clients within `2r`.
pub fn filter_reps(inst: &Instance, cov: &CoverageVector, r: f64) -> RepAssignment {
    let support = cov.support();
    let mut unassigned = vec![false; inst.n()];
    for &v in &support {
        unassigned[v] = true;
    }
    let mut reps = Vec::new();
    let mut children = Vec::new();
    for j in cov.order_by_coverage(&support) {
        if !unassigned[j] {
            continue;
        }
        let child: Vec<usize> = support
            .iter()
            .copied()
            .filter(|&v| unassigned[v] && inst.cc(v, j) <= 2.0 * r)
            .collect();
        for &v in &child {
            unassigned[v] = false;
        }
        reps.push(j);
        children.push(child);
    }
    RepAssignment {
        reps,
        children,
        cov: cov.clone(),
        r,
    }
}

/// Opens `N_ℓ(j, F)` for the `⌊k/ℓ⌋` representatives with the largest child
/// sets (ties: smallest id). Returns the open set and the chosen reps.
pub fn open_facilities_uniform(inst: &Instance, rep: &RepAssignment, k: usize, ell: usize) -> (Vec<usize>, Vec<usize>) {
    let slots = k / ell;
    let mut order: Vec<usize> = (0..rep.reps.len()).collect();
    order.sort_by(|&a, &b| {
        rep.children[b]
            .len()
            .cmp(&rep.children[a].len())
            .then(rep.reps[a].cmp(&rep.reps[b]))
    });
    let chosen: Vec<usize> = order.into_iter().take(slots).map(|a| rep.reps[a]).collect();
    let mut open: Vec<usize> = chosen.iter().flat_map(|&j| nearest_facilities(inst, j, ell)).collect();
    open.sort_unstable();
    open.dedup();
    (open, chosen)
}

/// The floor cut over the representatives when their coverage sums past
/// `⌊k/ℓ⌋`.
pub fn check_wlcut(rep: &RepAssignment, k: usize, ell: usize) -> Option<Cut> {
    let floor = k / ell;
    let total: f64 = rep.reps.iter().map(|&j| rep.cov.get(j)).sum();
    if total <= floor as f64 + EPS_LP {
        return None;
    }
    let mut lambda = vec![0; rep.cov.len()];
    for &j in &rep.reps {
        lambda[j] = 1;
    }
    Some(Cut {
        lambda,
        rhs: floor as i64,
        tag: CutTag::WlCut,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum UfksoRadiusOutcome {
    Rounded(Solution),
    RadiusTooSmall,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct UfksoStats {
    pub lp_solves: usize,
    pub cuts: usize,
    pub radii_tried: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UfksoRun {
    pub outcome: UfksoRadiusOutcome,
    /// Every cut emitted at this radius, in order.
    pub cuts: Vec<Cut>,
    pub lp_solves: usize,
}

/// Round-or-cut at a single radius.
pub fn solve_ufkso_at_radius(inst: &Instance, r: f64) -> Result<UfksoRun, SolveError> {
    let ell = inst.uniform_ell().ok_or(SolveError::NotUniform { t: inst.t() })?;
    let model = build_weak_lp(inst, r);
    let mut pool = CutPool::new();
    let cap = (inst.n() * inst.n()).max(1);
    for lp_solves in 1..=cap {
        let point = match solve_lp(&model, pool.cuts())? {
            LpOutcome::Infeasible => {
                return Ok(UfksoRun {
                    outcome: UfksoRadiusOutcome::RadiusTooSmall,
                    cuts: pool.cuts().to_vec(),
                    lp_solves,
                })
            }
            LpOutcome::Feasible(p) => p,
        };
        let cov = point.coverage(inst.n());
        let rep = filter_reps(inst, &cov, r);
        if let Some(cut) = check_wlcut(&rep, inst.k(), ell) {
            // a repeated cut would mean the solver ignored it
            assert!(pool.add(cut), "WLCut re-emitted at radius {r}");
            continue;
        }
        let (open, chosen) = open_facilities_uniform(inst, &rep, inst.k(), ell);
        let served: Vec<usize> = chosen
            .iter()
            .flat_map(|&j| rep.child_of(j).unwrap_or_default().to_vec())
            .collect();
        if served.len() < inst.m() {
            return Err(SolveError::RoundingShortfall {
                served: served.len(),
                m: inst.m(),
            });
        }
        return Ok(UfksoRun {
            outcome: UfksoRadiusOutcome::Rounded(Solution::new(inst, open, served, r)),
            cuts: pool.cuts().to_vec(),
            lp_solves,
        });
    }
    Err(SolveError::IterationCapExceeded { radius: r, cap })
}

/// Ascending scan of the candidate radii; the first radius that rounds wins.
pub fn solve_ufkso(inst: &Instance) -> Result<(Solution, UfksoStats), SolveError> {
    if inst.uniform_ell().is_none() {
        return Err(SolveError::NotUniform { t: inst.t() });
    }
    let mut stats = UfksoStats::default();
    for &r in candidate_radii(inst).values() {
        let run = solve_ufkso_at_radius(inst, r)?;
        stats.radii_tried += 1;
        stats.lp_solves += run.lp_solves;
        stats.cuts += run.cuts.len();
        if let UfksoRadiusOutcome::Rounded(sol) = run.outcome {
            return Ok((sol, stats));
        }
    }
    Err(SolveError::Infeasible)
}
