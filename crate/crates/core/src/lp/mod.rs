//! LP models over coverage variables: the weak relaxation (with facility
//! variables) and the coverage-only polytope that round-or-cut iterates on,
//! plus the exact solver and the cut pool.

mod cuts;
mod model;
pub mod simplex;

pub use cuts::{Cut, CutPool, CutTag};
pub use model::{Constraint, LpModel, Objective, Sense, Variable};

use num::BigRational;
use thiserror::Error;

use crate::instance::Instance;
use crate::metric::{dist_rank_all, facilities_within};
use simplex::{rational_to_f64, SimplexResult};

/// Feasibility tolerance for rechecks, and the support threshold for
/// `cov_v > 0`.
pub const EPS_LP: f64 = 1e-7;

/// Per-client fractional coverage, indexed by client id.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageVector(pub Vec<f64>);

impl CoverageVector {
    pub fn get(&self, v: usize) -> f64 {
        self.0[v]
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Clients with `cov_v > EPS_LP`, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v] > EPS_LP).collect()
    }

    /// Clients sorted by decreasing coverage, ties by ascending id.
    pub fn order_by_coverage(&self, clients: &[usize]) -> Vec<usize> {
        let mut order = clients.to_vec();
        order.sort_by(|&a, &b| self.0[b].total_cmp(&self.0[a]).then(a.cmp(&b)));
        order
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error("LP backend could not certify an outcome: {0}")]
    NumericalFailure(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpPoint {
    pub values: Vec<f64>,
    pub exact: Vec<BigRational>,
}

impl LpPoint {
    /// The first `n` variables, which every model here reserves for `cov`.
    pub fn coverage(&self, n: usize) -> CoverageVector {
        CoverageVector(self.values[..n].to_vec())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Feasible(LpPoint),
    Infeasible,
}

/// Name of the coverage variable of client `v`.
pub fn cov_name(v: usize) -> String {
    format!("cov_{v}")
}

/// Appends `cut` as a row; coverage variable `v` must have index `v`.
pub fn add_cut_row(model: &mut LpModel, cut: &Cut, index: usize) {
    let coeffs = cut
        .lambda
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 0)
        .map(|(v, &l)| (v, l as f64))
        .collect();
    let tag = match cut.tag {
        CutTag::WlCut => "wlcut",
        CutTag::LambdaCut => "lambda",
    };
    model.add_row(format!("{tag}_{index}"), coeffs, Sense::Le, cut.rhs as f64);
}

const PIVOT_LIMIT: usize = 200_000;

/// Solves `model` together with `cuts`. Feasible points are rechecked
/// against every row in floating point before being returned.
pub fn solve_lp(model: &LpModel, cuts: &[Cut]) -> Result<LpOutcome, LpError> {
    let mut full = model.clone();
    for (idx, cut) in cuts.iter().enumerate() {
        if cut.lambda.len() > full.num_vars() {
            return Err(LpError::Malformed(format!(
                "cut {idx} has {} coefficients but the model has {} variables",
                cut.lambda.len(),
                full.num_vars()
            )));
        }
        add_cut_row(&mut full, cut, idx);
    }
    full.check().map_err(LpError::Malformed)?;
    match simplex::solve(&full, PIVOT_LIMIT) {
        SimplexResult::Optimal(exact) => {
            let values: Vec<f64> = exact.iter().map(rational_to_f64).collect();
            if let Some(row) = full.first_violated(&values, EPS_LP) {
                return Err(LpError::NumericalFailure(format!(
                    "returned point violates {row} beyond tolerance"
                )));
            }
            Ok(LpOutcome::Feasible(LpPoint { values, exact }))
        }
        SimplexResult::Infeasible => Ok(LpOutcome::Infeasible),
        SimplexResult::Unbounded => Err(LpError::NumericalFailure("unbounded bounded model".into())),
        SimplexResult::PivotLimit => Err(LpError::NumericalFailure(format!("pivot limit {PIVOT_LIMIT} exceeded"))),
    }
}

/// True when `d_{ℓ_v}(v, F) > r`, forcing `cov_v = 0`.
pub fn coverage_forced_zero(inst: &Instance, v: usize, r: f64) -> bool {
    dist_rank_all(inst, v, inst.ell(v)) > r
}

/// The weak relaxation at radius `r`: variables `cov_v` (index `v`) then
/// `x_i` (index `n + i`).
///
/// ```text
/// Σ cov_v >= m
/// Σ x_i <= k
/// Σ_{i ∈ B(v,r)} x_i >= ℓ_v cov_v        for every client v
/// cov_v = 0                              when d_{ℓ_v}(v,F) > r
/// 0 <= cov, x <= 1
/// ```
///
/// The objective maximizes total coverage so that solves pick a
/// deterministic vertex.
pub fn build_weak_lp(inst: &Instance, r: f64) -> LpModel {
    let n = inst.n();
    let mut lp = LpModel::new();
    for v in inst.clients() {
        let upper = if coverage_forced_zero(inst, v, r) { 0.0 } else { 1.0 };
        lp.add_var(cov_name(v), upper);
    }
    for i in inst.facilities() {
        lp.add_var(format!("x_{i}"), 1.0);
    }
    lp.add_row(
        "inliers",
        inst.clients().map(|v| (v, 1.0)).collect(),
        Sense::Ge,
        inst.m() as f64,
    );
    lp.add_row(
        "budget",
        inst.facilities().map(|i| (n + i, 1.0)).collect(),
        Sense::Le,
        inst.k() as f64,
    );
    for v in inst.clients() {
        let mut coeffs: Vec<(usize, f64)> = facilities_within(inst, v, r)
            .into_iter()
            .map(|i| (n + i, 1.0))
            .collect();
        coeffs.push((v, -(inst.ell(v) as f64)));
        lp.add_row(format!("ball_{v}"), coeffs, Sense::Ge, 0.0);
    }
    lp.objective = Objective::Maximize(inst.clients().map(|v| (v, 1.0)).collect());
    lp
}

/// The coverage-only polytope at radius `r` with target `inst.m()`.
pub fn build_cov_polytope(inst: &Instance, r: f64, cuts: &[Cut]) -> LpModel {
    build_cov_polytope_with_target(inst, r, inst.m(), cuts)
}

/// `Σ cov >= target`, `0 <= cov <= 1`, `cov_v = 0` where `d_{ℓ_v}(v,F) > r`,
/// and one row per cut.
pub fn build_cov_polytope_with_target(inst: &Instance, r: f64, target: usize, cuts: &[Cut]) -> LpModel {
    let mut lp = LpModel::new();
    for v in inst.clients() {
        let upper = if coverage_forced_zero(inst, v, r) { 0.0 } else { 1.0 };
        lp.add_var(cov_name(v), upper);
    }
    lp.add_row(
        "inliers",
        inst.clients().map(|v| (v, 1.0)).collect(),
        Sense::Ge,
        target as f64,
    );
    for (idx, cut) in cuts.iter().enumerate() {
        add_cut_row(&mut lp, cut, idx);
    }
    lp.objective = Objective::Maximize(inst.clients().map(|v| (v, 1.0)).collect());
    lp
}
