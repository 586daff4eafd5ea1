//! Rounding a good partition, or separating it from the integral hull.

use thiserror::Error;

use super::budget::{budget_dp, BudgetAllocation, BudgetPart, BudgetProblem};
use super::partition::GoodPartition;
use crate::instance::Instance;
use crate::lp::{Cut, CutTag};
use crate::metric::nearest_facilities;
use crate::solution::Solution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoundError {
    #[error("allocation serves {opt} clients but rounding needs {m}")]
    TooFewServed { opt: usize, m: usize },
    #[error("allocation serves {opt} clients, at least m = {m}; no cut separates it")]
    Roundable { opt: usize, m: usize },
    #[error("allocation has {got} entries for {parts} parts")]
    Shape { got: usize, parts: usize },
}

impl GoodPartition {
    /// The per-part budget problem this partition induces.
    pub fn budget_problem(&self) -> BudgetProblem {
        let parts = (0..self.num_parts())
            .map(|p| BudgetPart {
                cap: self.part_ell[p],
                reps: self
                    .reps_in_part(p)
                    .map(|a| (self.rep_ell[a], self.children[a].len()))
                    .collect(),
            })
            .collect();
        BudgetProblem { parts }
    }

    /// Best allocation of `k` facilities over the parts.
    pub fn allocate(&self, k: usize) -> BudgetAllocation {
        budget_dp(&self.budget_problem(), k)
    }
}

/// Opens `N_{k_P}(j_P, F)` in every part and serves the children of every
/// representative with `ℓ_j <= k_P`.
pub fn round_from_allocation(
    inst: &Instance,
    gp: &GoodPartition,
    alloc: &BudgetAllocation,
) -> Result<Solution, RoundError> {
    if alloc.k_parts.len() != gp.num_parts() {
        return Err(RoundError::Shape {
            got: alloc.k_parts.len(),
            parts: gp.num_parts(),
        });
    }
    if alloc.opt < inst.m() {
        return Err(RoundError::TooFewServed {
            opt: alloc.opt,
            m: inst.m(),
        });
    }
    let mut open = Vec::new();
    for (p, &kp) in alloc.k_parts.iter().enumerate() {
        open.extend(nearest_facilities(inst, gp.heads[p], kp));
    }
    let served: Vec<usize> = (0..gp.reps.len())
        .filter(|&a| gp.rep_ell[a] <= alloc.k_parts[gp.part_of_rep[a]])
        .flat_map(|a| gp.children[a].iter().copied())
        .collect();
    Ok(Solution::new(inst, open, served, gp.r))
}

/// `Σ_{j ∈ R} |child(j)| · cov_j <= m − 1`, valid for the integral hull
/// whenever the budget optimum falls short of `m`.
pub fn make_cut(gp: &GoodPartition, k: usize, m: usize) -> Result<Cut, RoundError> {
    let opt = gp.allocate(k).opt;
    if opt >= m {
        return Err(RoundError::Roundable { opt, m });
    }
    let mut lambda = vec![0u64; gp.n];
    for (a, &j) in gp.reps.iter().enumerate() {
        lambda[j] = gp.children[a].len() as u64;
    }
    Ok(Cut {
        lambda,
        rhs: m as i64 - 1,
        tag: CutTag::LambdaCut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fkso::partition::{build_partition_chain, build_partition_forest};
    use crate::instance::{gen_limit_instance, gen_random_instance, limit_instance_cov};
    use crate::lp::{coverage_forced_zero, CoverageVector};
    use crate::metric::service_distance;

    #[test]
    fn limit_instance_rounds_from_the_head() {
        for t in 2..=4 {
            let inst = gen_limit_instance(t, t, 1.0).unwrap();
            let gp = build_partition_chain(&inst, &CoverageVector(limit_instance_cov(t)), 1.0);
            let alloc = gp.allocate(inst.k());
            assert_eq!(alloc.k_parts, vec![t]);
            assert_eq!(alloc.opt, t);
            let sol = round_from_allocation(&inst, &gp, &alloc).unwrap();
            // the head v_t opens its own group F_t
            assert_eq!(sol.open, ((t - 1) * t..t * t).collect::<Vec<_>>());
            assert_eq!(sol.achieved, 2.0 * (t as f64 - 1.0) + 1.0);
        }
    }

    #[test]
    fn limit_instance_cut_when_target_unreachable() {
        let inst = gen_limit_instance(3, 3, 1.0).unwrap().with_m(3).unwrap();
        let gp = build_partition_chain(&inst, &CoverageVector(limit_instance_cov(3)), 1.0);
        assert!(matches!(
            make_cut(&gp, inst.k(), inst.m()),
            Err(RoundError::Roundable { .. })
        ));
        let cut = make_cut(&gp, 2, 4).unwrap();
        assert_eq!(cut.lambda, vec![1, 1, 1]);
        assert_eq!(cut.rhs, 3);
    }

    #[test]
    fn shortfall_is_rejected() {
        let inst = gen_limit_instance(2, 2, 1.0).unwrap();
        let gp = build_partition_chain(&inst, &CoverageVector(vec![1.0, 1.0]), 1.0);
        let alloc = BudgetAllocation {
            k_parts: vec![0],
            opt: 0,
        };
        assert_eq!(
            round_from_allocation(&inst, &gp, &alloc),
            Err(RoundError::TooFewServed { opt: 0, m: 1 })
        );
        let bad = BudgetAllocation {
            k_parts: vec![],
            opt: 2,
        };
        assert!(matches!(
            round_from_allocation(&inst, &gp, &bad),
            Err(RoundError::Shape { .. })
        ));
    }

    #[test]
    fn rounding_meets_rho_plus_one() {
        for seed in 0..30 {
            let t = 1 + (seed % 3) as usize;
            let inst = gen_random_instance(seed, 9, 6, 4, 5, t).unwrap();
            for &r in &[10.0, 25.0, 60.0] {
                // clients that cannot reach ℓ_v facilities carry no coverage
                let cov = CoverageVector(
                    (0..9)
                        .map(|v| match coverage_forced_zero(&inst, v, r) {
                            true => 0.0,
                            false => ((v * 3 + seed as usize) % 4 + 1) as f64 / 4.0,
                        })
                        .collect(),
                );
                for gp in [
                    build_partition_chain(&inst, &cov, r),
                    build_partition_forest(&inst, &cov, r),
                ] {
                    let alloc = gp.allocate(inst.k());
                    match round_from_allocation(&inst, &gp, &alloc) {
                        Ok(sol) => {
                            assert!(sol.open.len() <= inst.k());
                            assert_eq!(sol.served.len(), alloc.opt);
                            for &v in &sol.served {
                                assert!(service_distance(&inst, v, &sol.open) <= (gp.rho + 1.0) * r + 1e-9);
                            }
                        }
                        Err(RoundError::TooFewServed { .. }) => {
                            let cut = make_cut(&gp, inst.k(), inst.m()).unwrap();
                            assert_eq!(cut.rhs, inst.m() as i64 - 1);
                            assert_eq!(cut.lambda.iter().sum::<u64>() as usize, gp.clients.len());
                        }
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}
