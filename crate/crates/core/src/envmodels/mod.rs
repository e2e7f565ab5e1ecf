//! Percolation in a column random environment, and exact k-wise
//! independence of finite binary families.

mod column;
mod pmf;

pub use column::{
    column_crossing, column_percolation_mc, iid_crossing_mc, ColumnEnvironment, Mixture,
};
pub use pmf::{kwise_test, JointPmf, KwiseReport, OutcomeViolation};
