//! Tests of asymptotic independence between two groups of components.

mod gfunc;
mod pairwise;
mod projection;
mod split;
mod statistic;

pub use gfunc::{build_g, GFunction};
pub use pairwise::{dependence_graph, pairwise_dependence, DependenceGraph, Edge};
pub use projection::{h1, h2, h3, midpoints, project_to_segment, projection_matrix, reduce_to_pair, FacePartition};
pub use split::{split_transform, SplitTransformed};
pub use statistic::{
    estimate_interval_masses, g_moments, test_statistic, two_sided_tail, IntervalMassEstimate, TestResult,
};
