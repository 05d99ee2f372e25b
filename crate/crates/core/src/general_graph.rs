//! Fréchet distance between general embedded graphs.
//!
//! The distance is always one of finitely many candidates: a vertex-vertex
//! distance or an edge-curve distance. Whether some isomorphism respects a
//! given bound is monotone in the bound, so a binary search over the sorted
//! candidates with an exact decision procedure finds the distance. The
//! decision is a complete backtracking search over vertex maps, pruned by
//! degree, adjacency and the bound itself. It is exponential in the worst
//! case and meant for small graphs.

use std::collections::BTreeSet;

use crate::embedded_graph::{contract_degree2, edge_curve_table, ContractedGraph, EdgeCurveTable, EmbeddedGraph, GraphError};
use crate::geometry::ExtendedDistance;
use crate::isomorphism::{FrechetResult, Isomorphism};
use crate::scalar::Scalar;

/// Every value the distance between `g1` and `g2` can take: all
/// vertex-vertex distances and all table entries, sorted and deduplicated.
pub fn candidate_distances<T: Scalar>(g1: &ContractedGraph<T>, g2: &ContractedGraph<T>, table: &EdgeCurveTable<T>) -> Vec<T> {
    let mut out: Vec<T> = g1
        .points()
        .iter()
        .flat_map(|p| g2.points().iter().map(move |q| p.dist(q)))
        .chain(table.values())
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
    out.dedup();
    out
}

struct Search<'a, T: Scalar> {
    g1: &'a ContractedGraph<T>,
    g2: &'a ContractedGraph<T>,
    table: &'a EdgeCurveTable<T>,
    delta: T,
    n: usize,
    /// Edge index between two vertices of `g2`, dense `n * n`.
    adj2: Vec<Option<usize>>,
    /// Order in which vertices of `g1` are assigned.
    order: Vec<usize>,
    /// For each position in `order`, already placed neighbours of that
    /// vertex with the connecting edge.
    back_edges: Vec<Vec<(usize, usize)>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

const UNMAPPED: usize = usize::MAX;

impl<'a, T: Scalar> Search<'a, T> {
    fn new(g1: &'a ContractedGraph<T>, g2: &'a ContractedGraph<T>, table: &'a EdgeCurveTable<T>, delta: T) -> Self {
        let n = g1.vertex_count();
        let mut adj2 = vec![None; n * n];
        for (k, e) in g2.edges().iter().enumerate() {
            adj2[e.u * n + e.v] = Some(k);
            adj2[e.v * n + e.u] = Some(k);
        }
        // Greedy connectivity order: most already placed neighbours first,
        // then highest degree, then lowest index.
        let mut placed = vec![false; n];
        let mut placed_neighbours = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (placed_neighbours[v], g1.degree(v), std::cmp::Reverse(v)))
                .expect("unplaced vertex remains");
            placed[v] = true;
            order.push(v);
            for &e in g1.incident(v) {
                placed_neighbours[g1.edge(e).other(v)] += 1;
            }
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let back_edges = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                g1.incident(v)
                    .iter()
                    .map(|&e| (g1.edge(e).other(v), e))
                    .filter(|&(u, _)| position[u] < i)
                    .collect()
            })
            .collect();
        Self {
            g1,
            g2,
            table,
            delta,
            n,
            adj2,
            order,
            back_edges,
            map: vec![UNMAPPED; n],
            used: vec![false; n],
        }
    }

    fn feasible(&self, pos: usize, v: usize, w: usize) -> bool {
        if self.used[w] || self.g2.degree(w) != self.g1.degree(v) {
            return false;
        }
        if self.g1.point(v).dist(self.g2.point(w)) > self.delta {
            return false;
        }
        let back = &self.back_edges[pos];
        for &(u, e1) in back {
            let Some(e2) = self.adj2[w * self.n + self.map[u]] else {
                return false;
            };
            if self.table.oriented(self.g1, e1, v, self.g2, e2, w) > self.delta {
                return false;
            }
        }
        // No edges of `w` to placed vertices beyond those mirrored above.
        let placed_neighbours_of_w = self
            .g2
            .incident(w)
            .iter()
            .filter(|&&e| self.used[self.g2.edge(e).other(w)])
            .count();
        placed_neighbours_of_w == back.len()
    }

    fn extend(&mut self, pos: usize) -> bool {
        if pos == self.n {
            return true;
        }
        let v = self.order[pos];
        let mut candidates: Vec<(T, usize)> = (0..self.n)
            .filter(|&w| self.feasible(pos, v, w))
            .map(|w| (self.g1.point(v).dist(self.g2.point(w)), w))
            .collect();
        candidates.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
        for (_, w) in candidates {
            self.map[v] = w;
            self.used[w] = true;
            if self.extend(pos + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = UNMAPPED;
        }
        false
    }
}

fn degree_sequence<T: Scalar>(g: &ContractedGraph<T>) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Whether the two graphs can be isomorphic at all.
fn compatible<T: Scalar>(g1: &ContractedGraph<T>, g2: &ContractedGraph<T>) -> bool {
    g1.vertex_count() == g2.vertex_count() && g1.edge_count() == g2.edge_count() && degree_sequence(g1) == degree_sequence(g2)
}

/// An isomorphism under which every vertex moves at most `delta` and every
/// matched pair of edge curves is within Fréchet distance `delta`, if one
/// exists.
pub fn isomorphism_respecting<T: Scalar>(
    g1: &ContractedGraph<T>,
    g2: &ContractedGraph<T>,
    table: &EdgeCurveTable<T>,
    delta: T,
) -> Option<Isomorphism> {
    if !compatible(g1, g2) {
        return None;
    }
    let mut search = Search::new(g1, g2, table, delta);
    if !search.extend(0) {
        return None;
    }
    let map = std::mem::take(&mut search.map);
    Some(Isomorphism::from_index_map(g1, g2, map).expect("search only builds isomorphisms"))
}

/// Distance between two contracted graphs given their edge-curve table.
pub fn graph_frechet_contracted<T: Scalar>(g1: &ContractedGraph<T>, g2: &ContractedGraph<T>, table: &EdgeCurveTable<T>) -> FrechetResult<T> {
    if !compatible(g1, g2) {
        return FrechetResult::undefined();
    }
    if g1.vertex_count() == 0 {
        return FrechetResult {
            distance: ExtendedDistance::Finite(T::zero()),
            witness: Isomorphism::from_index_map(g1, g2, Vec::new()),
        };
    }
    let candidates = candidate_distances(g1, g2, table);
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    let Some(mut witness) = isomorphism_respecting(g1, g2, table, candidates[hi]) else {
        return FrechetResult::undefined();
    };
    while lo < hi {
        let mid = (lo + hi) / 2;
        match isomorphism_respecting(g1, g2, table, candidates[mid]) {
            Some(iso) => {
                witness = iso;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    FrechetResult {
        distance: ExtendedDistance::Finite(candidates[lo]),
        witness: Some(witness),
    }
}

/// Distance between two embedded graphs (contracted without protected
/// vertices).
pub fn graph_frechet<T: Scalar>(g1: &EmbeddedGraph<T>, g2: &EmbeddedGraph<T>) -> Result<FrechetResult<T>, GraphError> {
    let none = BTreeSet::new();
    let c1 = contract_degree2(g1, &none)?;
    let c2 = contract_degree2(g2, &none)?;
    let table = edge_curve_table(&c1, &c2)?;
    Ok(graph_frechet_contracted(&c1, &c2, &table))
}
