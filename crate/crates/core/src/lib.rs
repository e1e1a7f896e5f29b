//! Approximate best proximity points of cyclic maps on metric spaces with a
//! directed graph.
//!
//! An [`Instance`] bundles a metric space (a distance table or Euclidean
//! space with sampled regions), two subsets A and B, a directed graph G on
//! `A∪B` whose edges include every self-loop, and either one cyclic map `T`
//! or a pair `(T, S)`. On top of that the crate provides
//!
//! * validation of the metric, graph and map axioms ([`validate_metric`],
//!   [`validate_graph`], [`validate_cyclic`]);
//! * classification of maps as G-contractions or CRR operators
//!   ([`min_contraction_factor`], [`crr_params_feasible`]);
//! * Picard and two-map iterations with stopping rules
//!   ([`find_proximity_point`], [`two_map_alternating`]);
//! * exact enumeration of approximate proximity sets and their diameters
//!   ([`enumerate_proximity_set`], [`enumerate_pair_set`]);
//! * the worked examples, seeded generators and a TOML instance format
//!   ([`instances`]);
//! * the text reports behind the `bestprox` command line tool ([`report`]).
//!
//! ```
//! use bestprox::instances::interval_example;
//! use bestprox::{enumerate_proximity_set, Membership, Tolerance};
//!
//! let inst = interval_example(0.5).unwrap();
//! let set = enumerate_proximity_set(&inst, inst.single_map().unwrap(), 0.0, Membership::Strict, Tolerance::DEFAULT)
//!     .unwrap();
//! assert_eq!(set.members.len(), 2);
//! ```

pub mod analysis;
mod error;
pub mod graph;
mod instance;
pub mod instances;
pub mod metric;
pub mod operators;
pub mod report;
pub mod solver;
mod validation;

pub use analysis::{
    contraction_diam_bound, enumerate_pair_set, enumerate_proximity_set, minimizer_report, pair_diameter,
    proximity_diameter, two_map_diam_bound, two_map_hypothesis_factor, Membership, MinimizerReport, PairProximitySet,
    ProximitySet,
};
pub use error::{Error, Result};
pub use graph::{contains_edge, preserved_core, preserves_edges, validate_graph, DirectedGraph, Preservation};
pub use instance::{Instance, Maps};
pub use metric::{
    pair_distance, set_diameter, validate_metric, DistanceMatrix, MetricSpace, Point, PointSet, Region, SetDistance,
    SubsetPair, Tolerance,
};
pub use operators::{
    crr_params_feasible, is_crr_2map, is_crr_moh, is_edge_nonexpansive, is_g_contraction, min_alternating_factor,
    min_contraction_factor, validate_cyclic, validate_pair, Affine, ContractionFactor, CrrParams, CyclicMap, EdgeSlack,
    MapPair, Verdict,
};
pub use solver::{
    crr_iteration_bound, epsilon_fixed_point, find_proximity_point, is_gt_minimizing, picard_orbit,
    two_map_alternating, two_map_parallel, AlternatingResult, BoundRecord, GtMinimizing, IterationTrace, SolveConfig,
    SolveResult, SolveStatus,
};
pub use validation::{ValidationReport, Violation};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/metric.md")]
    mod metric {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/iteration.md")]
    mod iteration {}
    #[doc = include_str!("../../../book/src/proximity-sets.md")]
    mod proximity_sets {}
    #[doc = include_str!("../../../book/src/file-format.md")]
    mod file_format {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
