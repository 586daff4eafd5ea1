use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::Instance;
use crate::metric::service_distance;

/// Open facilities, served clients and the radius they are served within.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub open: Vec<usize>,
    pub served: Vec<usize>,
    pub radius_guess: f64,
    pub achieved: f64,
    pub dilation: f64,
}

impl Solution {
    /// Builds a solution, computing `achieved` from the distance table.
    pub fn new(inst: &Instance, mut open: Vec<usize>, mut served: Vec<usize>, radius_guess: f64) -> Self {
        open.sort_unstable();
        open.dedup();
        served.sort_unstable();
        served.dedup();
        let achieved = achieved_radius(inst, &open, &served);
        Solution {
            open,
            served,
            radius_guess,
            achieved,
            dilation: dilation(achieved, radius_guess),
        }
    }

    /// Independent recheck against the instance.
    pub fn verify(&self, inst: &Instance) -> Result<f64, VerifyError> {
        check_solution(inst, &self.open, &self.served, Some(self.achieved))
    }
}

pub fn dilation(achieved: f64, radius: f64) -> f64 {
    if radius > 0.0 {
        achieved / radius
    } else if achieved == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

/// `max_{v ∈ T} d_{ℓ_v}(v, S)`; zero for empty `T`.
pub fn achieved_radius(inst: &Instance, open: &[usize], served: &[usize]) -> f64 {
    served
        .iter()
        .map(|&v| service_distance(inst, v, open))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("unknown facility id {0}")]
    UnknownFacility(usize),
    #[error("unknown client id {0}")]
    UnknownClient(usize),
    #[error("duplicate id {0} in solution")]
    Duplicate(usize),
    #[error("{open} facilities opened, budget is {k}")]
    OverBudget { open: usize, k: usize },
    #[error("{served} clients served, target is {m}")]
    TooFewServed { served: usize, m: usize },
    #[error("client {client} needs {ell} open facilities but only {open} are open")]
    Unservable { client: usize, ell: usize, open: usize },
    #[error("claimed radius {claimed} but recomputed {actual} (witness client {witness})")]
    RadiusMismatch { claimed: f64, actual: f64, witness: usize },
}

const RADIUS_TOL: f64 = 1e-9;

/// Rechecks `|S| <= k`, `|T| >= m` and, when given, the claimed radius.
/// Returns the recomputed radius.
pub fn check_solution(
    inst: &Instance,
    open: &[usize],
    served: &[usize],
    claimed: Option<f64>,
) -> Result<f64, VerifyError> {
    let mut seen = std::collections::BTreeSet::new();
    for &i in open {
        if i >= inst.f() {
            return Err(VerifyError::UnknownFacility(i));
        }
        if !seen.insert(i) {
            return Err(VerifyError::Duplicate(i));
        }
    }
    seen.clear();
    for &v in served {
        if v >= inst.n() {
            return Err(VerifyError::UnknownClient(v));
        }
        if !seen.insert(v) {
            return Err(VerifyError::Duplicate(v));
        }
    }
    if open.len() > inst.k() {
        return Err(VerifyError::OverBudget {
            open: open.len(),
            k: inst.k(),
        });
    }
    if served.len() < inst.m() {
        return Err(VerifyError::TooFewServed {
            served: served.len(),
            m: inst.m(),
        });
    }
    let mut actual = 0.0;
    let mut witness = served.first().copied().unwrap_or(0);
    for &v in served {
        if inst.ell(v) > open.len() {
            return Err(VerifyError::Unservable {
                client: v,
                ell: inst.ell(v),
                open: open.len(),
            });
        }
        let d = service_distance(inst, v, open);
        if d > actual {
            actual = d;
            witness = v;
        }
    }
    if let Some(claimed) = claimed {
        if (claimed - actual).abs() > RADIUS_TOL * actual.max(1.0) {
            return Err(VerifyError::RadiusMismatch {
                claimed,
                actual,
                witness,
            });
        }
    }
    Ok(actual)
}
