//! Support estimation for the angular measure of multivariate heavy-tailed
//! data, and tests of asymptotic independence between groups of components.
//!
//! The core is generic over the scalar type ([`Real`], implemented for `f32`
//! and `f64`). Every generic type defaults to `f64`; `*32` aliases name the
//! single-precision variants.
//!
//! ```
//! use angular_support::{estimate_support, simulate_mixture, threshold_top_k, MixtureSpec};
//!
//! let spec = MixtureSpec { signal_count: 2_000, noise_count: 4_000, ..MixtureSpec::disk_preset(7) };
//! let sample = simulate_mixture(&spec).unwrap();
//! let cloud = threshold_top_k(&sample, 500).unwrap();
//! let estimate = estimate_support(&cloud, 36, 0.01).unwrap();
//! assert!(!estimate.cells().is_empty());
//! ```

pub mod angular;
pub mod error;
pub mod geometry;
pub mod independence;
pub mod json;
pub mod pipeline;
pub mod rng;
pub mod sample;
pub mod scalar;
pub mod simulation;
pub mod workflow;

pub use angular::{
    empirical_angular_measure, estimate_support, mapped_points, polar_decompose, reflect_quadrant, threshold_top_k,
    AngularCloud, EmpiricalMeasure, Mass, Reflected, SupportEstimate,
};
pub use error::{Error, ErrorClass, Result};
pub use geometry::{
    cell_of, cellset_hausdorff, cellset_hausdorff_with, hausdorff_distance, rasterize, simplex_map, simplex_unmap,
    Cell, CellSet, GridSpec, MappedPoint, Metric, SimplexMapping, SimplexPoint,
};
pub use independence::{
    build_g, dependence_graph, midpoints, pairwise_dependence, project_to_segment, projection_matrix,
    reduce_to_pair, split_transform, test_statistic, DependenceGraph, FacePartition, GFunction, TestResult,
};
pub use pipeline::{
    hill_estimate, ingest_csv, log_returns, rank_transform, split_sample, tail_index_report, RankBasis, SplitPlan,
    TailIndexReport, TailSide,
};
pub use sample::Sample;
pub use scalar::Real;
pub use simulation::{
    simulate_face_independent, simulate_interval_support, simulate_mixture, simulate_sector_portfolio,
    AngularRegion, MixtureSpec, NoiseRadial,
};
pub use workflow::{run_estimate, run_test, EstimateParams, TestParams, TestReport};

pub type Sample32 = Sample<f32>;
pub type SimplexPoint32 = SimplexPoint<f32>;
pub type MappedPoint32 = MappedPoint<f32>;
pub type SimplexMapping32 = SimplexMapping<f32>;
pub type AngularCloud32 = AngularCloud<f32>;
pub type SupportEstimate32 = SupportEstimate<f32>;
pub type FacePartition32 = FacePartition<f32>;
pub type GFunction32 = GFunction<f32>;
