//! Fréchet distance between embedded trees.
//!
//! Both trees are rooted and processed level by level from the deepest
//! level upward. For every pair of nodes at the same depth the distance
//! between their subtrees is the larger of the two node displacements and
//! the value of a bottleneck matching between their children, where
//! matching child `i` with child `j` costs the larger of the children's
//! subtree distance and the curve distance of the connecting edges.
//! Non-isomorphic subtrees get an undefined distance.
//!
//! Unrooted trees are rooted at their centers, which every isomorphism must
//! preserve.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::embedded_graph::{contract_degree2, edge_curve_table, ContractedGraph, EdgeCurveTable, EmbeddedGraph, GraphError, VertexId};
use crate::geometry::ExtendedDistance;
use crate::isomorphism::{FrechetResult, Isomorphism};
use crate::matching::{bottleneck_matching, Matching, WeightMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("root vertex {0} is not in the tree")]
    UnknownRoot(VertexId),
    #[error("rooted comparison needs a root in both trees")]
    MissingRoot,
    #[error("no table entry for the child pair ({0}, {1}); levels processed out of order")]
    MissingEntry(usize, usize),
    #[error("the trees are not isomorphic, there is no isomorphism to extract")]
    UndefinedRoot,
}

/// A contracted tree with a designated root and per-node annotations.
#[derive(Debug, Clone)]
pub struct RootedTree<'g, T: Scalar = f64> {
    graph: &'g ContractedGraph<T>,
    root: usize,
    parent: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    height: Vec<usize>,
    levels: Vec<Vec<usize>>,
    level_pos: Vec<usize>,
}

impl<'g, T: Scalar> RootedTree<'g, T> {
    pub fn graph(&self) -> &'g ContractedGraph<T> {
        self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Edge joining `v` to its parent.
    pub fn parent_edge(&self, v: usize) -> Option<usize> {
        self.parent_edge[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Length of the longest downward path from `v`.
    pub fn height(&self, v: usize) -> usize {
        self.height[v]
    }

    /// Nodes grouped by depth, in breadth-first order.
    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn tree_height(&self) -> usize {
        self.height[self.root]
    }
}

/// Roots a contracted tree at vertex index `root`.
pub fn root_tree<T: Scalar>(t: &ContractedGraph<T>, root: usize) -> Result<RootedTree<'_, T>, TreeError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    let n = t.vertex_count();
    if root >= n {
        return Err(TreeError::UnknownRoot(VertexId::new(format!("#{root}"))));
    }
    let mut parent = vec![None; n];
    let mut parent_edge = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![0; n];
    let mut order = Vec::with_capacity(n);
    let mut levels: Vec<Vec<usize>> = vec![vec![root]];
    let mut level_pos = vec![0; n];
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let mut kids: Vec<(usize, usize)> = t
            .incident(v)
            .iter()
            .map(|&e| (t.edge(e).other(v), e))
            .filter(|&(w, _)| Some(w) != parent[v])
            .collect();
        kids.sort_unstable();
        for (w, e) in kids {
            parent[w] = Some(v);
            parent_edge[w] = Some(e);
            depth[w] = depth[v] + 1;
            if levels.len() <= depth[w] {
                levels.push(Vec::new());
            }
            level_pos[w] = levels[depth[w]].len();
            levels[depth[w]].push(w);
            children[v].push(w);
            order.push(w);
        }
    }
    let mut height = vec![0; n];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            height[p] = height[p].max(height[v] + 1);
        }
    }
    Ok(RootedTree {
        graph: t,
        root,
        parent,
        parent_edge,
        children,
        depth,
        height,
        levels,
        level_pos,
    })
}

/// Roots a contracted tree at the vertex with id `root`.
pub fn root_tree_at<'g, T: Scalar>(t: &'g ContractedGraph<T>, root: &VertexId) -> Result<RootedTree<'g, T>, TreeError> {
    let r = t.index_of(root).ok_or_else(|| TreeError::UnknownRoot(root.clone()))?;
    root_tree(t, r)
}

#[derive(Debug, Clone)]
struct Level<T> {
    cols: usize,
    values: Vec<ExtendedDistance<T>>,
    witnesses: Vec<Option<Box<[u32]>>>,
}

/// Subtree distances for all same-depth node pairs of two rooted trees,
/// with the bottleneck matchings that realize them.
#[derive(Debug, Clone)]
pub struct DpTable<T: Scalar = f64> {
    levels: Vec<Option<Level<T>>>,
    pos1: Vec<usize>,
    pos2: Vec<usize>,
    depth1: Vec<usize>,
    depth2: Vec<usize>,
}

impl<T: Scalar> DpTable<T> {
    fn empty<'a>(t1: &RootedTree<'a, T>, t2: &RootedTree<'a, T>) -> Self {
        Self {
            levels: vec![None; t1.levels.len().min(t2.levels.len())],
            pos1: t1.level_pos.clone(),
            pos2: t2.level_pos.clone(),
            depth1: t1.depth.clone(),
            depth2: t2.depth.clone(),
        }
    }

    fn slot(&self, a: usize, b: usize) -> Option<(&Level<T>, usize)> {
        let d = self.depth1[a];
        if self.depth2[b] != d {
            return None;
        }
        let level = self.levels.get(d)?.as_ref()?;
        Some((level, self.pos1[a] * level.cols + self.pos2[b]))
    }

    /// Distance between the subtrees at `a` (first tree) and `b` (second
    /// tree), if that pair has been computed.
    pub fn get(&self, a: usize, b: usize) -> Option<ExtendedDistance<T>> {
        self.slot(a, b).map(|(level, k)| level.values[k])
    }

    /// Bottleneck matching of the children of `a` and `b`, by child
    /// position.
    pub fn witness(&self, a: usize, b: usize) -> Option<&[u32]> {
        self.slot(a, b).and_then(|(level, k)| level.witnesses[k].as_deref())
    }
}

/// Distance between the subtrees rooted at `a` in `t1` and `b` in `t2`,
/// given the entries of all their child pairs in `dp`. Also returns the
/// bottleneck matching of the children when the distance is finite.
pub fn subtree_distance<T: Scalar>(
    t1: &RootedTree<'_, T>,
    a: usize,
    t2: &RootedTree<'_, T>,
    b: usize,
    dp: &DpTable<T>,
    table: &EdgeCurveTable<T>,
) -> Result<(ExtendedDistance<T>, Option<Matching>), TreeError> {
    pair_distance(t1, a, t2, b, table, |x, y| dp.get(x, y).ok_or(TreeError::MissingEntry(x, y)))
}

fn pair_distance<T: Scalar>(
    t1: &RootedTree<'_, T>,
    a: usize,
    t2: &RootedTree<'_, T>,
    b: usize,
    table: &EdgeCurveTable<T>,
    child: impl Fn(usize, usize) -> Result<ExtendedDistance<T>, TreeError>,
) -> Result<(ExtendedDistance<T>, Option<Matching>), TreeError> {
    let (kids1, kids2) = (&t1.children[a], &t2.children[b]);
    if kids1.len() != kids2.len() || t1.height[a] != t2.height[b] {
        return Ok((ExtendedDistance::Undefined, None));
    }
    let here = t1.graph.point(a).dist(t2.graph.point(b));
    if kids1.is_empty() {
        return Ok((ExtendedDistance::Finite(here), Some(Matching(Vec::new()))));
    }
    let k = kids1.len();
    let mut w = WeightMatrix::new(k, k);
    for (i, &c1) in kids1.iter().enumerate() {
        let e1 = t1.parent_edge[c1].expect("child has a parent edge");
        for (j, &c2) in kids2.iter().enumerate() {
            let sub = child(c1, c2)?;
            if let ExtendedDistance::Finite(sub) = sub {
                let e2 = t2.parent_edge[c2].expect("child has a parent edge");
                let curve = table.oriented(t1.graph, e1, a, t2.graph, e2, b);
                w.set(i, j, ExtendedDistance::Finite(sub.max(curve)));
            }
        }
    }
    Ok(match bottleneck_matching(&w) {
        Some((value, m)) => (ExtendedDistance::Finite(value.max(here)), Some(m)),
        None => (ExtendedDistance::Undefined, None),
    })
}

/// A DP entry with the child matching that realizes it.
type Cell<T> = (ExtendedDistance<T>, Option<Box<[u32]>>);

/// Fills the table for all same-depth pairs, deepest level first.
pub fn fill_dp<T: Scalar>(t1: &RootedTree<'_, T>, t2: &RootedTree<'_, T>, table: &EdgeCurveTable<T>) -> DpTable<T> {
    let mut dp = DpTable::empty(t1, t2);
    if t1.tree_height() != t2.tree_height() {
        return dp;
    }
    for d in (0..dp.levels.len()).rev() {
        let (l1, l2) = (&t1.levels[d], &t2.levels[d]);
        let cols = l2.len();
        let rows: Vec<Vec<Cell<T>>> = l1
            .par_iter()
            .map(|&a| {
                l2.iter()
                    .map(|&b| {
                        let (value, m) = pair_distance(t1, a, t2, b, table, |x, y| {
                            dp.get(x, y).ok_or(TreeError::MissingEntry(x, y))
                        })
                        .expect("deeper level is complete");
                        let witness = m
                            .filter(|m| !m.is_empty())
                            .map(|m| m.0.iter().map(|&c| c as u32).collect());
                        (value, witness)
                    })
                    .collect()
            })
            .collect();
        let mut values = Vec::with_capacity(l1.len() * cols);
        let mut witnesses = Vec::with_capacity(l1.len() * cols);
        for row in rows {
            for (v, w) in row {
                values.push(v);
                witnesses.push(w);
            }
        }
        dp.levels[d] = Some(Level { cols, values, witnesses });
    }
    dp
}

/// Replays the stored matchings top-down from the roots, producing the
/// vertex bijection that realizes the root entry.
pub fn extract_isomorphism<T: Scalar>(t1: &RootedTree<'_, T>, t2: &RootedTree<'_, T>, dp: &DpTable<T>) -> Result<Isomorphism, TreeError> {
    match dp.get(t1.root, t2.root) {
        Some(ExtendedDistance::Finite(_)) => {}
        _ => return Err(TreeError::UndefinedRoot),
    }
    let n = t1.graph.vertex_count();
    let mut map = vec![usize::MAX; n];
    let mut stack = vec![(t1.root, t2.root)];
    while let Some((a, b)) = stack.pop() {
        map[a] = b;
        if let Some(m) = dp.witness(a, b) {
            for (i, &j) in m.iter().enumerate() {
                stack.push((t1.children[a][i], t2.children[b][j as usize]));
            }
        }
    }
    Isomorphism::from_index_map(t1.graph, t2.graph, map).ok_or(TreeError::UndefinedRoot)
}

/// Distance between two rooted trees and a witness isomorphism mapping
/// root to root.
pub fn tree_frechet_rooted<T: Scalar>(t1: &RootedTree<'_, T>, t2: &RootedTree<'_, T>, table: &EdgeCurveTable<T>) -> FrechetResult<T> {
    let dp = fill_dp(t1, t2, table);
    match dp.get(t1.root, t2.root) {
        Some(distance @ ExtendedDistance::Finite(_)) => FrechetResult {
            distance,
            witness: Some(extract_isomorphism(t1, t2, &dp).expect("finite root entry")),
        },
        _ => FrechetResult::undefined(),
    }
}

/// Distance between two contracted unrooted trees: the best rooted
/// comparison over the pairings of their centers.
pub fn tree_frechet_unrooted_contracted<T: Scalar>(
    c1: &ContractedGraph<T>,
    c2: &ContractedGraph<T>,
    table: &EdgeCurveTable<T>,
) -> Result<FrechetResult<T>, TreeError> {
    let centers1 = c1.tree_centers()?;
    let centers2 = c2.tree_centers()?;
    if centers1.len() != centers2.len() || c1.vertex_count() != c2.vertex_count() {
        return Ok(FrechetResult::undefined());
    }
    let t1 = root_tree(c1, centers1[0])?;
    let mut best = FrechetResult::undefined();
    for &r2 in &centers2 {
        let t2 = root_tree(c2, r2)?;
        let candidate = tree_frechet_rooted(&t1, &t2, table);
        if candidate.distance < best.distance {
            best = candidate;
        }
    }
    Ok(best)
}

/// Distance between two unrooted embedded trees.
pub fn tree_frechet_unrooted<T: Scalar>(g1: &EmbeddedGraph<T>, g2: &EmbeddedGraph<T>) -> Result<FrechetResult<T>, TreeError> {
    let none = BTreeSet::new();
    let c1 = contract_degree2(g1, &none)?;
    let c2 = contract_degree2(g2, &none)?;
    if !c1.is_tree() || !c2.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    let table = edge_curve_table(&c1, &c2)?;
    tree_frechet_unrooted_contracted(&c1, &c2, &table)
}

/// Contracts a tree keeping its root, even if the root has degree 2.
pub fn contract_rooted<T: Scalar>(g: &EmbeddedGraph<T>) -> Result<ContractedGraph<T>, TreeError> {
    let root = g.root().ok_or(TreeError::MissingRoot)?;
    let protected: BTreeSet<VertexId> = [root.clone()].into_iter().collect();
    let c = contract_degree2(g, &protected)?;
    if !c.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    Ok(c)
}

/// Distance between two embedded trees that both carry a root; the
/// isomorphism must map root to root.
pub fn tree_frechet_rooted_graphs<T: Scalar>(g1: &EmbeddedGraph<T>, g2: &EmbeddedGraph<T>) -> Result<FrechetResult<T>, TreeError> {
    let c1 = contract_rooted(g1)?;
    let c2 = contract_rooted(g2)?;
    let table = edge_curve_table(&c1, &c2)?;
    let t1 = root_tree_at(&c1, g1.root().expect("checked by contract_rooted"))?;
    let t2 = root_tree_at(&c2, g2.root().expect("checked by contract_rooted"))?;
    Ok(tree_frechet_rooted(&t1, &t2, &table))
}
