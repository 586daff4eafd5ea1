//! Round-or-cut for outlier k-supplier with arbitrary fault tolerances.

mod budget;
mod driver;
mod partition;
mod round;

pub use budget::{budget_dp, BudgetAllocation, BudgetPart, BudgetProblem};
pub use driver::{
    solve_fkso, solve_fkso_at_radius, Decision, Evaluation, FksoRadiusOutcome, FksoRadiusRun, FksoResult, Iteration,
    Strategy,
};
pub use partition::{
    build_partition_chain, build_partition_forest, verify_good_partition, GoodPartition, PartitionKind,
    PartitionViolation,
};
pub use round::{make_cut, round_from_allocation, RoundError};
