//! Fréchet distance between straight-line embedded trees and graphs.
//!
//! Graphs are first contracted along their degree-2 paths, so that each edge
//! carries a polyline. Two contracted graphs are then compared over all
//! isomorphisms: the cost of an isomorphism is the largest vertex
//! displacement or edge-curve Fréchet distance it induces, and the distance
//! is the minimum cost, or undefined if the graphs are not isomorphic.
//!
//! Trees are solved exactly in quadratic time (bounded degree) by a
//! bottom-up dynamic program over bottleneck matchings. General graphs are
//! solved by binary search over candidate distances with an exact
//! backtracking decision procedure.

pub mod bench;
pub mod embedded_graph;
pub mod format;
pub mod general_graph;
pub mod geometry;
pub mod isomorphism;
pub mod matching;
pub mod oracle;
pub mod scalar;
pub mod tree_frechet;

pub use embedded_graph::{
    contract_degree2, edge_curve_table, tree_center, ContractedGraph, CurveEdge, EdgeCurveTable,
    EmbeddedGraph, GraphError, VertexId,
};
pub use geometry::{
    curve_frechet, discrete_frechet, free_space_interval, frechet_critical_values, frechet_decision,
    point_distance, ExtendedDistance, GeometryError, Interval, Point, Polyline,
};
pub use scalar::Scalar;
pub use general_graph::{graph_frechet, graph_frechet_contracted};
pub use format::{load_graph, save_graph};
pub use isomorphism::{EdgeImage, FrechetResult, Isomorphism};
pub use matching::{bottleneck_matching, perfect_matching_under, Matching, WeightMatrix};
pub use tree_frechet::{tree_frechet_rooted_graphs, tree_frechet_unrooted, TreeError};

/// Double-precision graph.
pub type Graph = EmbeddedGraph<f64>;
/// Single-precision graph.
pub type Graph32 = EmbeddedGraph<f32>;
pub type Curve = Polyline<f64>;
pub type Curve32 = Polyline<f32>;
pub type Distance = ExtendedDistance<f64>;
pub type Distance32 = ExtendedDistance<f32>;
