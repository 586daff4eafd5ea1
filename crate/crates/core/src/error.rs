use thiserror::Error;

use crate::lp::LpError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("no candidate radius admits a solution")]
    Infeasible,
    #[error("instance is not uniform (found {t} distinct fault tolerances)")]
    NotUniform { t: usize },
    #[error("round-or-cut loop at radius {radius} exceeded {cap} iterations")]
    IterationCapExceeded { radius: f64, cap: usize },
    #[error("rounding served {served} clients, target is {m}")]
    RoundingShortfall { served: usize, m: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
}
