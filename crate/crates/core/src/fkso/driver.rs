//! Round-or-cut over the coverage polytope for arbitrary tolerances.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::partition::{build_partition_chain, build_partition_forest, GoodPartition, PartitionKind};
use super::round::{make_cut, round_from_allocation};
use crate::error::SolveError;
use crate::instance::Instance;
use crate::lp::{build_cov_polytope, coverage_forced_zero, solve_lp, CoverageVector, Cut, CutPool, LpOutcome};
use crate::metric::candidate_radii;
use crate::solution::Solution;

/// Which partition builder(s) drive the loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    Chain,
    Forest,
    Best,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Chain => "chain",
            Strategy::Forest => "forest",
            Strategy::Best => "best",
        }
    }

    fn kinds(self) -> &'static [PartitionKind] {
        match self {
            Strategy::Chain => &[PartitionKind::Chain],
            Strategy::Forest => &[PartitionKind::Forest],
            Strategy::Best => &[PartitionKind::Chain, PartitionKind::Forest],
        }
    }

    /// Approximation factor guaranteed for `t` tolerance levels.
    pub fn factor(self, t: usize) -> f64 {
        self.kinds()
            .iter()
            .map(|k| k.rho(t) + 1.0)
            .fold(f64::INFINITY, f64::min)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chain" => Ok(Strategy::Chain),
            "forest" => Ok(Strategy::Forest),
            "best" => Ok(Strategy::Best),
            other => Err(format!("unknown strategy {other:?} (expected chain, forest or best)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    /// This partition's rounding was returned.
    Round,
    /// Rounded, but another partition's rounding was preferred.
    Rounded,
    /// Budget optimum below `m`; its cut was added.
    Cut,
    /// Rounded, but the result exceeded the accepted radius; a cut from
    /// another partition was added instead.
    Rejected,
}

impl Decision {
    pub fn name(self) -> &'static str {
        match self {
            Decision::Round => "round",
            Decision::Rounded => "rounded",
            Decision::Cut => "cut",
            Decision::Rejected => "rejected",
        }
    }
}

/// One partition considered in one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub partition: GoodPartition,
    pub opt_b: usize,
    pub decision: Decision,
    pub cut: Option<Cut>,
    pub rounding: Option<Solution>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Iteration {
    pub index: usize,
    /// `None` when the LP was infeasible.
    pub cov: Option<CoverageVector>,
    pub evaluations: Vec<Evaluation>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FksoRadiusOutcome {
    Rounded {
        solution: Solution,
        kind: PartitionKind,
        rho: f64,
    },
    RadiusTooSmall,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FksoRadiusRun {
    pub r: f64,
    pub outcome: FksoRadiusOutcome,
    pub iterations: Vec<Iteration>,
    pub cuts: Vec<Cut>,
    pub lp_solves: usize,
}

impl FksoRadiusRun {
    /// Tab-separated lines: radius, iteration, lp status, partition kind,
    /// rho, budget optimum, decision.
    pub fn trace_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for it in &self.iterations {
            if it.cov.is_none() {
                lines.push(format!("{}\t{}\tinfeasible\t-\t-\t-\tstop", self.r, it.index));
            }
            for ev in &it.evaluations {
                lines.push(format!(
                    "{}\t{}\tfeasible\t{}\t{}\t{}\t{}",
                    self.r,
                    it.index,
                    ev.partition.kind.name(),
                    ev.partition.rho,
                    ev.opt_b,
                    ev.decision.name()
                ));
            }
        }
        lines
    }
}

const ROUND_TOL: f64 = 1e-9;

/// Round-or-cut at one radius.
///
/// With [`Strategy::Best`] both partitions are built every iteration. A
/// rounding is accepted only if it achieves at most `(ρ_min + 1)·r`, where
/// `ρ_min` is the smaller of the two radius parameters; among accepted
/// roundings the smaller achieved radius wins (then the smaller ρ). When
/// none is accepted, every partition whose budget optimum is below `m`
/// contributes its cut.
pub fn solve_fkso_at_radius(inst: &Instance, r: f64, strategy: Strategy) -> Result<FksoRadiusRun, SolveError> {
    let n = inst.n();
    let mut run = FksoRadiusRun {
        r,
        outcome: FksoRadiusOutcome::RadiusTooSmall,
        iterations: Vec::new(),
        cuts: Vec::new(),
        lp_solves: 0,
    };
    // Fewer than m clients can carry coverage: the polytope is empty.
    if inst.clients().filter(|&v| !coverage_forced_zero(inst, v, r)).count() < inst.m() {
        run.iterations.push(Iteration {
            index: 0,
            cov: None,
            evaluations: Vec::new(),
        });
        return Ok(run);
    }
    let model = build_cov_polytope(inst, r, &[]);
    let mut pool = CutPool::new();
    let cap = (n * n * n).max(1);
    let rho_min = strategy
        .kinds()
        .iter()
        .map(|k| k.rho(inst.t()))
        .fold(f64::INFINITY, f64::min);
    let accept = (rho_min + 1.0) * r;
    for index in 0..cap {
        run.lp_solves += 1;
        let point = match solve_lp(&model, pool.cuts())? {
            LpOutcome::Infeasible => {
                run.iterations.push(Iteration {
                    index,
                    cov: None,
                    evaluations: Vec::new(),
                });
                run.cuts = pool.cuts().to_vec();
                return Ok(run);
            }
            LpOutcome::Feasible(p) => p,
        };
        let cov = point.coverage(n);
        let mut evaluations: Vec<Evaluation> = strategy
            .kinds()
            .iter()
            .map(|&kind| {
                let partition = match kind {
                    PartitionKind::Chain => build_partition_chain(inst, &cov, r),
                    PartitionKind::Forest => build_partition_forest(inst, &cov, r),
                };
                let alloc = partition.allocate(inst.k());
                let rounding = round_from_allocation(inst, &partition, &alloc).ok();
                Evaluation {
                    opt_b: alloc.opt,
                    decision: Decision::Cut,
                    cut: None,
                    rounding,
                    partition,
                }
            })
            .collect();

        let winner = evaluations
            .iter()
            .enumerate()
            .filter_map(|(i, ev)| ev.rounding.as_ref().map(|s| (i, s.achieved, ev.partition.rho)))
            .filter(|&(_, achieved, _)| achieved <= accept + ROUND_TOL * accept.max(1.0))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.2.total_cmp(&b.2)).then(a.0.cmp(&b.0)));

        if let Some((w, _, _)) = winner {
            for (i, ev) in evaluations.iter_mut().enumerate() {
                ev.decision = match (i == w, ev.rounding.is_some()) {
                    (true, _) => Decision::Round,
                    (false, true) => Decision::Rounded,
                    (false, false) => Decision::Cut,
                };
            }
            let ev = &evaluations[w];
            let solution = ev.rounding.clone().expect("winner has a rounding");
            if solution.served.len() < inst.m() {
                return Err(SolveError::RoundingShortfall {
                    served: solution.served.len(),
                    m: inst.m(),
                });
            }
            run.outcome = FksoRadiusOutcome::Rounded {
                solution,
                kind: ev.partition.kind,
                rho: ev.partition.rho,
            };
            run.iterations.push(Iteration {
                index,
                cov: Some(cov),
                evaluations,
            });
            run.cuts = pool.cuts().to_vec();
            return Ok(run);
        }

        let mut added = false;
        for ev in evaluations.iter_mut() {
            if ev.rounding.is_some() {
                ev.decision = Decision::Rejected;
                continue;
            }
            let cut = make_cut(&ev.partition, inst.k(), inst.m()).expect("budget optimum below m");
            added |= pool.add(cut.clone());
            ev.cut = Some(cut);
        }
        // A cut already in the pool is satisfied by the LP point, which the
        // budget argument says cannot happen; a missing cut means no
        // partition fell short even though none was accepted.
        assert!(added, "no new cut at radius {r}, iteration {index}");
        run.iterations.push(Iteration {
            index,
            cov: Some(cov),
            evaluations,
        });
    }
    Err(SolveError::IterationCapExceeded { radius: r, cap })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FksoResult {
    pub solution: Solution,
    pub kind: PartitionKind,
    pub rho: f64,
    /// One run per radius tried, in ascending radius order.
    pub runs: Vec<FksoRadiusRun>,
}

impl FksoResult {
    pub fn lp_solves(&self) -> usize {
        self.runs.iter().map(|r| r.lp_solves).sum()
    }

    pub fn cuts(&self) -> usize {
        self.runs.iter().map(|r| r.cuts.len()).sum()
    }

    pub fn partitions(&self) -> impl Iterator<Item = &GoodPartition> {
        self.runs
            .iter()
            .flat_map(|r| &r.iterations)
            .flat_map(|it| &it.evaluations)
            .map(|ev| &ev.partition)
    }
}

/// Ascending scan of the candidate radii.
pub fn solve_fkso(inst: &Instance, strategy: Strategy) -> Result<FksoResult, SolveError> {
    let mut runs = Vec::new();
    for &r in candidate_radii(inst).values() {
        let run = solve_fkso_at_radius(inst, r, strategy)?;
        if let FksoRadiusOutcome::Rounded { solution, kind, rho } = &run.outcome {
            let (solution, kind, rho) = (solution.clone(), *kind, *rho);
            runs.push(run);
            return Ok(FksoResult {
                solution,
                kind,
                rho,
                runs,
            });
        }
        runs.push(run);
    }
    Err(SolveError::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fkso::partition::verify_good_partition;
    use crate::instance::{gen_gap_instance, gen_limit_instance, gen_random_instance};

    #[test]
    fn strategy_parsing_and_factors() {
        assert_eq!("best".parse::<Strategy>().unwrap(), Strategy::Best);
        assert!("greedy".parse::<Strategy>().is_err());
        assert_eq!(Strategy::Chain.factor(1), 3.0);
        assert_eq!(Strategy::Forest.factor(1), 3.0);
        assert_eq!(Strategy::Best.factor(2), 5.0);
        assert_eq!(Strategy::Best.factor(3), 9.0);
        assert_eq!(Strategy::Best.factor(4), 15.0);
        assert_eq!(Strategy::Best.factor(5), 19.0);
    }

    #[test]
    fn trivial_instance() {
        let inst = Instance::new(1, 1, 1, 1, vec![1], vec![0.0, 2.0, 2.0, 0.0]).unwrap();
        let res = solve_fkso(&inst, Strategy::Best).unwrap();
        assert_eq!(res.solution.open, vec![0]);
        assert_eq!(res.solution.served, vec![0]);
        assert_eq!(res.solution.achieved, 2.0);
    }

    #[test]
    fn below_nearest_facility_is_too_small() {
        let inst = gen_limit_instance(2, 2, 1.0).unwrap();
        let run = solve_fkso_at_radius(&inst, 0.5, Strategy::Best).unwrap();
        assert_eq!(run.outcome, FksoRadiusOutcome::RadiusTooSmall);
        assert_eq!(run.lp_solves, 0);
        assert_eq!(run.trace_lines(), vec!["0.5\t0\tinfeasible\t-\t-\t-\tstop".to_string()]);
    }

    #[test]
    fn gap_instance_rounds_at_far_distance_only() {
        let inst = gen_gap_instance(2, 1000.0).unwrap();
        let run = solve_fkso_at_radius(&inst, 1.0, Strategy::Best).unwrap();
        assert!(matches!(
            run.outcome,
            FksoRadiusOutcome::RadiusTooSmall | FksoRadiusOutcome::Rounded { .. }
        ));
        let res = solve_fkso(&inst, Strategy::Best).unwrap();
        res.solution.verify(&inst).unwrap();
        assert!(res.solution.served.len() >= inst.m());
        assert!(res.solution.achieved <= Strategy::Best.factor(inst.t()) * res.solution.radius_guess + 1e-9);
    }

    #[test]
    fn every_partition_is_good_and_every_cut_fresh() {
        for seed in 0..12 {
            let t = 1 + (seed % 3) as usize;
            let inst = gen_random_instance(seed, 7, 5, 3, 4, t).unwrap();
            for strategy in [Strategy::Chain, Strategy::Forest, Strategy::Best] {
                let res = solve_fkso(&inst, strategy).unwrap();
                res.solution.verify(&inst).unwrap();
                assert!(res.solution.open.len() <= inst.k());
                assert!(res.solution.served.len() >= inst.m());
                assert!(res.solution.achieved <= strategy.factor(inst.t()) * res.solution.radius_guess + 1e-9);
                for gp in res.partitions() {
                    verify_good_partition(&inst, gp, gp.rho).unwrap();
                }
                for run in &res.runs {
                    let mut seen = std::collections::HashSet::new();
                    assert!(run.cuts.iter().all(|c| seen.insert(c.clone())));
                    // each cut separates the point it was generated from
                    for it in &run.iterations {
                        for ev in &it.evaluations {
                            if let (Some(cut), Some(cov)) = (&ev.cut, &it.cov) {
                                assert!(cut.is_violated_by(cov.values(), 0.0));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trace_has_seven_columns() {
        let inst = gen_random_instance(4, 6, 4, 3, 3, 2).unwrap();
        let res = solve_fkso(&inst, Strategy::Best).unwrap();
        let lines: Vec<String> = res.runs.iter().flat_map(|r| r.trace_lines()).collect();
        assert!(!lines.is_empty());
        for line in &lines {
            assert_eq!(line.split('\t').count(), 7, "{line}");
        }
        assert!(lines.last().unwrap().ends_with("round"));
    }
}
