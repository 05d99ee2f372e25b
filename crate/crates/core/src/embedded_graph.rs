//! Straight-line embedded graphs, degree-2 path contraction and the table of
//! pairwise edge-curve distances.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{frechet_unchecked, GeometryError, Point, Polyline};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph dimension must be at least 1")]
    ZeroDimension,
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFiniteCoordinate(VertexId),
    #[error("vertex {id} has {found} coordinates, expected {expected}")]
    DimensionMismatch { id: VertexId, expected: usize, found: usize },
    #[error("edge {edge} references unknown vertex {id}")]
    UnknownEndpoint { edge: usize, id: VertexId },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0} - {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge {0} - {1} has coincident endpoints")]
    DegenerateEdge(VertexId, VertexId),
    #[error("root {0} is not a vertex")]
    UnknownRoot(VertexId),
    #[error("contraction joins {0} - {1} by more than one edge")]
    MultiEdge(VertexId, VertexId),
    #[error("contraction closes a loop at vertex {0}")]
    ContractionLoop(VertexId),
    #[error("curve of edge {0} - {1} does not connect its endpoints")]
    CurveEndpoints(VertexId, VertexId),
    #[error("graphs have different dimensions: {0} vs {1}")]
    DimensionsDiffer(usize, usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid field {field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Opaque vertex identifier. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

/// Input graph: points for vertices, straight segments for edges.
///
/// Construction is unchecked so that malformed input can be represented and
/// reported by [`EmbeddedGraph::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedGraph<T: Scalar = f64> {
    dimension: usize,
    vertices: Vec<(VertexId, Point<T>)>,
    edges: Vec<(VertexId, VertexId)>,
    root: Option<VertexId>,
}

impl<T: Scalar> EmbeddedGraph<T> {
    pub fn new(dimension: usize) -> Self {
        Self {
            dimension,
            vertices: Vec::new(),
            edges: Vec::new(),
            root: None,
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<VertexId>, coords: Vec<T>) -> &mut Self {
        self.vertices.push((id.into(), Point::from_raw(coords)));
        self
    }

    pub fn add_edge(&mut self, a: impl Into<VertexId>, b: impl Into<VertexId>) -> &mut Self {
        self.edges.push((a.into(), b.into()));
        self
    }

    pub fn set_root(&mut self, root: Option<VertexId>) -> &mut Self {
        self.root = root;
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[(VertexId, Point<T>)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn root(&self) -> Option<&VertexId> {
        self.root.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn point(&self, id: &VertexId) -> Option<&Point<T>> {
        self.vertices.iter().find(|(v, _)| v == id).map(|(_, p)| p)
    }

    /// Same graph with every vertex moved by `offset`.
    pub fn translated(&self, offset: &[T]) -> Self {
        let mut out = self.clone();
        for (_, p) in &mut out.vertices {
            *p = p.translated(offset);
        }
        out
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if self.dimension == 0 {
            return Err(GraphError::ZeroDimension);
        }
        let mut index = HashMap::with_capacity(self.vertices.len());
        for (i, (id, p)) in self.vertices.iter().enumerate() {
            if index.insert(id, i).is_some() {
                return Err(GraphError::DuplicateVertex(id.clone()));
            }
            if p.dim() != self.dimension {
                return Err(GraphError::DimensionMismatch {
                    id: id.clone(),
                    expected: self.dimension,
                    found: p.dim(),
                });
            }
            if !p.is_finite() {
                return Err(GraphError::NonFiniteCoordinate(id.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for (k, (a, b)) in self.edges.iter().enumerate() {
            for id in [a, b] {
                if !index.contains_key(id) {
                    return Err(GraphError::UnknownEndpoint { edge: k, id: id.clone() });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a.clone()));
            }
            let key = if a < b { (a, b) } else { (b, a) };
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0.clone(), key.1.clone()));
            }
            if self.vertices[index[a]].1 == self.vertices[index[b]].1 {
                return Err(GraphError::DegenerateEdge(a.clone(), b.clone()));
            }
        }
        if let Some(root) = &self.root {
            if !index.contains_key(root) {
                return Err(GraphError::UnknownRoot(root.clone()));
            }
        }
        Ok(())
    }

    fn adjacency(&self) -> (HashMap<&VertexId, usize>, Vec<Vec<usize>>) {
        let index: HashMap<&VertexId, usize> =
            self.vertices.iter().enumerate().map(|(i, (id, _))| (id, i)).collect();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, b) in &self.edges {
            let (a, b) = (index[a], index[b]);
            adj[a].push(b);
            adj[b].push(a);
        }
        (index, adj)
    }
}

/// One edge of a contracted graph. `curve` runs from vertex `u` to vertex
/// `v`, where `u < v` in vertex-id order.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveEdge<T: Scalar = f64> {
    pub u: usize,
    pub v: usize,
    pub curve: Polyline<T>,
}

impl<T: Scalar> CurveEdge<T> {
    /// True iff the edge stands for a contracted path of degree-2 vertices.
    pub fn is_marked(&self) -> bool {
        self.curve.len() > 2
    }

    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    /// The curve read starting at endpoint `from`.
    pub fn curve_from(&self, from: usize) -> Polyline<T> {
        if from == self.u {
            self.curve.clone()
        } else {
            self.curve.reversed()
        }
    }
}

/// A simple graph whose edges carry polyline curves. Vertices are indexed
/// densely in ascending id order.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractedGraph<T: Scalar = f64> {
    dimension: usize,
    ids: Vec<VertexId>,
    points: Vec<Point<T>>,
    edges: Vec<CurveEdge<T>>,
    incident: Vec<Vec<usize>>,
}

impl<T: Scalar> ContractedGraph<T> {
    /// Assembles a curve graph. Each edge's curve must run from the point of
    /// its first id to the point of its second id.
    pub fn from_parts(
        dimension: usize,
        vertices: Vec<(VertexId, Point<T>)>,
        edges: Vec<(VertexId, VertexId, Polyline<T>)>,
    ) -> Result<Self, GraphError> {
        let mut vertices = vertices;
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        for w in vertices.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(GraphError::DuplicateVertex(w[0].0.clone()));
            }
        }
        let (ids, points): (Vec<_>, Vec<_>) = vertices.into_iter().unzip();
        let position = |id: &VertexId| ids.binary_search(id).ok();
        let mut out_edges = Vec::with_capacity(edges.len());
        for (k, (a, b, curve)) in edges.into_iter().enumerate() {
            let ia = position(&a).ok_or_else(|| GraphError::UnknownEndpoint { edge: k, id: a.clone() })?;
            let ib = position(&b).ok_or_else(|| GraphError::UnknownEndpoint { edge: k, id: b.clone() })?;
            if ia == ib {
                return Err(GraphError::ContractionLoop(a));
            }
            if curve.dim() != dimension {
                return Err(GraphError::DimensionsDiffer(dimension, curve.dim()));
            }
            if curve.first() != &points[ia] || curve.last() != &points[ib] {
                return Err(GraphError::CurveEndpoints(a, b));
            }
            let edge = if ia < ib {
                CurveEdge { u: ia, v: ib, curve }
            } else {
                CurveEdge { u: ib, v: ia, curve: curve.reversed() }
            };
            out_edges.push(edge);
        }
        out_edges.sort_by_key(|e| (e.u, e.v));
        for w in out_edges.windows(2) {
            if (w[0].u, w[0].v) == (w[1].u, w[1].v) {
                return Err(GraphError::MultiEdge(ids[w[0].u].clone(), ids[w[0].v].clone()));
            }
        }
        let mut incident = vec![Vec::new(); ids.len()];
        for (k, e) in out_edges.iter().enumerate() {
            incident[e.u].push(k);
            incident[e.v].push(k);
        }
        Ok(Self {
            dimension,
            ids,
            points,
            edges: out_edges,
            incident,
        })
    }

    /// The input graph with every edge as a two-point curve.
    fn from_embedded(g: &EmbeddedGraph<T>) -> Result<Self, GraphError> {
        let points: HashMap<&VertexId, &Point<T>> = g.vertices.iter().map(|(id, p)| (id, p)).collect();
        let mut edges = Vec::with_capacity(g.edges.len());
        for (a, b) in &g.edges {
            let curve = Polyline::new(vec![points[a].clone(), points[b].clone()])?;
            edges.push((a.clone(), b.clone(), curve));
        }
        Self::from_parts(g.dimension, g.vertices.clone(), edges)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &VertexId {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &VertexId) -> Option<usize> {
        self.ids.binary_search(id).ok()
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn point(&self, v: usize) -> &Point<T> {
        &self.points[v]
    }

    pub fn edges(&self) -> &[CurveEdge<T>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &CurveEdge<T> {
        &self.edges[e]
    }

    /// Indices of the edges incident to `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    /// Index of the edge joining `a` and `b`, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by_key(&(u, v), |e| (e.u, e.v))
            .ok()
    }

    pub fn is_tree(&self) -> bool {
        let n = self.ids.len();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in &self.incident[v] {
                let w = self.edges[e].other(v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Center vertices (one, or two adjacent) of a tree, in index order.
    pub fn tree_centers(&self) -> Result<Vec<usize>, GraphError> {
        if !self.is_tree() {
            return Err(GraphError::NotATree);
        }
        let adj: Vec<Vec<usize>> = (0..self.ids.len())
            .map(|v| self.incident[v].iter().map(|&e| self.edges[e].other(v)).collect())
            .collect();
        Ok(peel_leaves(&adj))
    }

    /// Replaces every maximal path through unprotected degree-2 vertices by
    /// a single edge carrying the concatenated curve.
    ///
    /// A path is only replaced when the new edge keeps the graph simple:
    /// paths that would close a loop or join two already adjacent vertices
    /// stay as they are, and so do cycles made only of degree-2 vertices.
    pub fn contract(&self, protected: &BTreeSet<VertexId>) -> Result<Self, GraphError> {
        let n = self.ids.len();
        let anchor: Vec<bool> = (0..n)
            .map(|v| self.degree(v) != 2 || protected.contains(&self.ids[v]))
            .collect();

        struct Walk {
            start: usize,
            end: usize,
            edges: Vec<usize>,
        }

        let mut consumed = vec![false; self.edges.len()];
        let mut walks = Vec::new();
        for start in (0..n).filter(|&v| anchor[v]) {
            for &first in &self.incident[start] {
                if consumed[first] {
                    continue;
                }
                consumed[first] = true;
                let mut path = vec![first];
                let mut at = self.edges[first].other(start);
                while !anchor[at] {
                    let via = *path.last().expect("non-empty walk");
                    let next = self.incident[at]
                        .iter()
                        .copied()
                        .find(|&e| e != via)
                        .expect("degree-2 vertex has a second edge");
                    consumed[next] = true;
                    path.push(next);
                    at = self.edges[next].other(at);
                }
                walks.push(Walk { start, end: at, edges: path });
            }
        }

        let mut pair_count: HashMap<(usize, usize), usize> = HashMap::new();
        for w in &walks {
            *pair_count.entry((w.start.min(w.end), w.start.max(w.end))).or_default() += 1;
        }

        // Vertices on pure degree-2 cycles were never reached from an anchor.
        let mut keep = anchor;
        let mut new_edges = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if !consumed[e] {
                keep[edge.u] = true;
                keep[edge.v] = true;
                new_edges.push((self.ids[edge.u].clone(), self.ids[edge.v].clone(), edge.curve.clone()));
            }
        }
        for w in walks {
            let key = (w.start.min(w.end), w.start.max(w.end));
            if w.edges.len() > 1 && (w.start == w.end || pair_count[&key] > 1) {
                for &e in &w.edges {
                    let edge = &self.edges[e];
                    keep[edge.u] = true;
                    keep[edge.v] = true;
                    new_edges.push((self.ids[edge.u].clone(), self.ids[edge.v].clone(), edge.curve.clone()));
                }
                continue;
            }
            let mut at = w.start;
            let mut curve: Option<Polyline<T>> = None;
            for &e in &w.edges {
                let piece = self.edges[e].curve_from(at);
                curve = Some(match curve {
                    Some(c) => c.joined(&piece),
                    None => piece,
                });
                at = self.edges[e].other(at);
            }
            let curve = curve.expect("walk has at least one edge");
            new_edges.push((self.ids[w.start].clone(), self.ids[w.end].clone(), curve));
        }
        let kept = (0..n)
            .filter(|&v| keep[v])
            .map(|v| (self.ids[v].clone(), self.points[v].clone()))
            .collect();
        Self::from_parts(self.dimension, kept, new_edges)
    }
}

/// Iteratively strips leaves; what remains is the center of the tree.
fn peel_leaves(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let layer = queue.len();
        remaining -= layer;
        for _ in 0..layer {
            let leaf = queue.pop_front().expect("layer size");
            for &w in &adj[leaf] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    let mut centers: Vec<usize> = queue.into_iter().collect();
    centers.sort_unstable();
    centers
}

/// Contracts every maximal path of degree-2 vertices not in `protected`,
/// subject to the simplicity rule of [`ContractedGraph::contract`].
pub fn contract_degree2<T: Scalar>(
    g: &EmbeddedGraph<T>,
    protected: &BTreeSet<VertexId>,
) -> Result<ContractedGraph<T>, GraphError> {
    g.validate()?;
    ContractedGraph::from_embedded(g)?.contract(protected)
}

/// Center vertex id(s) of a tree.
pub fn tree_center<T: Scalar>(t: &EmbeddedGraph<T>) -> Result<Vec<VertexId>, GraphError> {
    t.validate()?;
    let n = t.vertex_count();
    if n == 0 || t.edges.len() != n - 1 {
        return Err(GraphError::NotATree);
    }
    let (_, adj) = t.adjacency();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(GraphError::NotATree);
    }
    let mut centers: Vec<VertexId> = peel_leaves(&adj)
        .into_iter()
        .map(|v| t.vertices[v].0.clone())
        .collect();
    centers.sort();
    Ok(centers)
}

/// Curve Fréchet distances between every edge of one contracted graph and
/// every edge of another, for both relative orientations.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCurveTable<T: Scalar = f64> {
    cols: usize,
    forward: Vec<T>,
    reverse: Vec<T>,
}

impl<T: Scalar> EdgeCurveTable<T> {
    pub fn rows(&self) -> usize {
        self.forward.len().checked_div(self.cols).unwrap_or(0)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Both stored curves read `u -> v`.
    pub fn forward(&self, e1: usize, e2: usize) -> T {
        self.forward[e1 * self.cols + e2]
    }

    /// First curve `u -> v`, second read backwards.
    pub fn reverse(&self, e1: usize, e2: usize) -> T {
        self.reverse[e1 * self.cols + e2]
    }

    pub fn get(&self, e1: usize, e2: usize, reversed: bool) -> T {
        if reversed {
            self.reverse(e1, e2)
        } else {
            self.forward(e1, e2)
        }
    }

    /// Distance between edge `e1` read from its endpoint `from1` and edge
    /// `e2` read from its endpoint `from2`.
    pub fn oriented(&self, g1: &ContractedGraph<T>, e1: usize, from1: usize, g2: &ContractedGraph<T>, e2: usize, from2: usize) -> T {
        let same = (g1.edges[e1].u == from1) == (g2.edges[e2].u == from2);
        self.get(e1, e2, !same)
    }

    pub fn values(&self) -> impl Iterator<Item = T> + '_ {
        self.forward.iter().chain(&self.reverse).copied()
    }
}

pub fn edge_curve_table<T: Scalar>(
    g1: &ContractedGraph<T>,
    g2: &ContractedGraph<T>,
) -> Result<EdgeCurveTable<T>, GraphError> {
    if g1.dimension != g2.dimension {
        return Err(GraphError::DimensionsDiffer(g1.dimension, g2.dimension));
    }
    let cols = g2.edges.len();
    let reversed: Vec<Polyline<T>> = g2.edges.iter().map(|e| e.curve.reversed()).collect();
    let rows: Vec<(Vec<T>, Vec<T>)> = g1
        .edges
        .par_iter()
        .map(|e1| {
            let fwd = g2.edges.iter().map(|e2| frechet_unchecked(&e1.curve, &e2.curve)).collect();
            let rev = reversed.iter().map(|c2| frechet_unchecked(&e1.curve, c2)).collect();
            (fwd, rev)
        })
        .collect();
    let mut forward = Vec::with_capacity(g1.edges.len() * cols);
    let mut reverse = Vec::with_capacity(g1.edges.len() * cols);
    for (f, r) in rows {
        forward.extend(f);
        reverse.extend(r);
    }
    Ok(EdgeCurveTable { cols, forward, reverse })
}
