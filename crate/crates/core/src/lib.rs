//! Fault-tolerant k-supplier with outliers: instances, metric helpers, the
//! greedy solver without outliers, LP round-or-cut solvers for uniform and
//! general tolerances, and an exhaustive oracle for small instances.

pub mod error;
pub mod fks;
pub mod fkso;
pub mod instance;
pub mod lp;
pub mod metric;
pub mod oracle;
pub mod solution;
pub mod ufkso;

pub use error::SolveError;
pub use instance::{load_instance, save_instance, Instance, InstanceError, ValidationError};
pub use solution::{check_solution, Solution, VerifyError};
