use std::collections::BTreeMap;

use crate::embedded_graph::{ContractedGraph, EdgeCurveTable, VertexId};
use crate::geometry::{ExtendedDistance, Polyline};
use crate::scalar::Scalar;

/// Image of one edge under an isomorphism. `reversed` is set when the
/// stored orientations of the two curves disagree under the vertex map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeImage {
    pub edge1: usize,
    pub edge2: usize,
    pub reversed: bool,
}

/// Vertex bijection between two contracted graphs that preserves adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    map: Vec<usize>,
    vertex_map: BTreeMap<VertexId, VertexId>,
    edges: Vec<EdgeImage>,
}

impl Isomorphism {
    /// Checks that `map` (vertex index of `g1` to vertex index of `g2`) is
    /// a graph isomorphism and derives the edge images.
    pub fn from_index_map<T: Scalar>(g1: &ContractedGraph<T>, g2: &ContractedGraph<T>, map: Vec<usize>) -> Option<Self> {
        let n = g1.vertex_count();
        if map.len() != n || g2.vertex_count() != n || g1.edge_count() != g2.edge_count() {
            return None;
        }
        let mut hit = vec![false; n];
        for &w in &map {
            if w >= n || std::mem::replace(&mut hit[w], true) {
                return None;
            }
        }
        let mut edges = Vec::with_capacity(g1.edge_count());
        for (k, e) in g1.edges().iter().enumerate() {
            let (a, b) = (map[e.u], map[e.v]);
            let k2 = g2.edge_between(a, b)?;
            edges.push(EdgeImage {
                edge1: k,
                edge2: k2,
                reversed: g2.edge(k2).u != a,
            });
        }
        let vertex_map = map
            .iter()
            .enumerate()
            .map(|(v, &w)| (g1.id(v).clone(), g2.id(w).clone()))
            .collect();
        Some(Self { map, vertex_map, edges })
    }

    /// Vertex index of `g2` that vertex index `v` of `g1` maps to.
    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn index_map(&self) -> &[usize] {
        &self.map
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_map
    }

    pub fn edges(&self) -> &[EdgeImage] {
        &self.edges
    }

    /// Largest vertex displacement or matched edge-curve distance, using
    /// precomputed curve distances.
    pub fn cost<T: Scalar>(&self, g1: &ContractedGraph<T>, g2: &ContractedGraph<T>, table: &EdgeCurveTable<T>) -> T {
        let vertices = (0..g1.vertex_count()).map(|v| g1.point(v).dist(g2.point(self.map[v])));
        let edges = self.edges.iter().map(|e| table.get(e.edge1, e.edge2, e.reversed));
        vertices.chain(edges).fold(T::zero(), T::max)
    }

    /// Same as [`Isomorphism::cost`] but recomputes every curve distance
    /// from the curves themselves.
    pub fn cost_direct<T: Scalar>(&self, g1: &ContractedGraph<T>, g2: &ContractedGraph<T>) -> T {
        let vertices = (0..g1.vertex_count()).map(|v| g1.point(v).dist(g2.point(self.map[v])));
        let edges = self.edges.iter().map(|e| {
            let c1 = &g1.edge(e.edge1).curve;
            let c2 = &g2.edge(e.edge2).curve;
            let c2: Polyline<T> = if e.reversed { c2.reversed() } else { c2.clone() };
            crate::geometry::frechet_unchecked(c1, &c2)
        });
        vertices.chain(edges).fold(T::zero(), T::max)
    }
}

/// A distance together with an isomorphism realizing it, when finite.
#[derive(Debug, Clone, PartialEq)]
pub struct FrechetResult<T: Scalar = f64> {
    pub distance: ExtendedDistance<T>,
    pub witness: Option<Isomorphism>,
}

impl<T: Scalar> FrechetResult<T> {
    pub fn undefined() -> Self {
        Self {
            distance: ExtendedDistance::Undefined,
            witness: None,
        }
    }
}
