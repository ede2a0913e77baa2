//! Run aggregation and significance testing.

mod compare;
pub mod special;
mod ttest;

pub use compare::{compare_systems, ComparisonReport, RunScores, SystemSummary};
pub use ttest::{significance_stars, t_test, t_test_two_sided, SignificanceResult, VarianceModel};
