//! Brute-force reference implementations and seeded instance generators.
//!
//! Everything here is deliberately naive and guarded by hard size limits.
//! The reference distance enumerates every isomorphism of the contracted
//! graphs, with its own contraction routine, and evaluates each one
//! directly from the curves.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::embedded_graph::{ContractedGraph, EmbeddedGraph, GraphError, VertexId};
use crate::geometry::{curve_frechet, frechet_decision, point_distance, ExtendedDistance, Point, Polyline};
use crate::isomorphism::Isomorphism;
use crate::matching::WeightMatrix;
use crate::scalar::Scalar;

/// Largest contracted graph the isomorphism enumeration accepts.
pub const MAX_ORACLE_VERTICES: usize = 9;
/// Largest matrix side the permutation oracle accepts.
pub const MAX_ORACLE_MATRIX: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance of size {size} exceeds the oracle limit {limit}")]
    SizeGuard { size: usize, limit: usize },
    #[error("infeasible instance spec: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Contracts degree-2 paths by collecting connected groups of unprotected
/// degree-2 vertices and splicing each group between its two attachment
/// vertices. A group is left alone when it is a whole cycle, when both
/// ends attach to the same vertex, or when another group or an edge already
/// joins its two attachment vertices.
pub fn reference_contract<T: Scalar>(
    g: &EmbeddedGraph<T>,
    protected: &BTreeSet<VertexId>,
) -> Result<ContractedGraph<T>, OracleError> {
    g.validate()?;
    let points: BTreeMap<VertexId, Point<T>> = g.vertices().iter().cloned().collect();
    let mut nbrs: BTreeMap<&VertexId, BTreeSet<&VertexId>> = points.keys().map(|id| (id, BTreeSet::new())).collect();
    for (a, b) in g.edges() {
        nbrs.get_mut(a).expect("validated").insert(b);
        nbrs.get_mut(b).expect("validated").insert(a);
    }
    let interior = |v: &VertexId| nbrs[v].len() == 2 && !protected.contains(v);

    // Groups of interior vertices, each as an ordered chain with its two
    // outside attachments (None for a closed cycle).
    let mut assigned: BTreeSet<&VertexId> = BTreeSet::new();
    type Group<'a> = (Vec<&'a VertexId>, Option<(&'a VertexId, &'a VertexId)>);
    let mut groups: Vec<Group> = Vec::new();
    for v in points.keys().filter(|v| interior(v)) {
        if assigned.contains(v) {
            continue;
        }
        let mut members = vec![v];
        let mut stack = vec![v];
        assigned.insert(v);
        while let Some(x) = stack.pop() {
            for &y in &nbrs[x] {
                if interior(y) && assigned.insert(y) {
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        let ends: Vec<&VertexId> = members
            .iter()
            .copied()
            .filter(|m| nbrs[m].iter().any(|y| !interior(y)))
            .collect();
        if ends.is_empty() {
            groups.push((members, None));
            continue;
        }
        // Order the chain from the first end.
        let start = ends[0];
        let mut chain = vec![start];
        let mut prev: Option<&VertexId> = None;
        let mut cur = start;
        loop {
            let next = nbrs[cur]
                .iter()
                .copied()
                .find(|&y| interior(y) && Some(y) != prev && !chain.contains(&y));
            match next {
                Some(y) => {
                    chain.push(y);
                    prev = Some(cur);
                    cur = y;
                }
                None => break,
            }
        }
        let outside = |m: &VertexId, skip: Option<&VertexId>| -> Vec<&VertexId> {
            nbrs[m].iter().copied().filter(|y| !interior(y) && Some(*y) != skip).collect()
        };
        let first = chain[0];
        let last = *chain.last().expect("non-empty");
        let (a, b) = if chain.len() == 1 {
            let out = outside(first, None);
            if out.len() == 1 {
                // Both edges go to the same vertex: impossible in a simple graph.
                (out[0], out[0])
            } else {
                (out[0], out[1])
            }
        } else {
            (outside(first, None)[0], outside(last, None)[0])
        };
        groups.push((chain, Some((a, b))));
    }

    let mut joins: BTreeMap<(&VertexId, &VertexId), usize> = BTreeMap::new();
    let key = |a: &'_ VertexId, b: &'_ VertexId| -> (VertexId, VertexId) {
        if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    };
    for (a, b) in g.edges() {
        if !interior(a) && !interior(b) {
            let (x, y) = if a <= b { (a, b) } else { (b, a) };
            *joins.entry((x, y)).or_default() += 1;
        }
    }
    for (_, ends) in &groups {
        if let Some((a, b)) = ends {
            let (x, y) = if a <= b { (*a, *b) } else { (*b, *a) };
            *joins.entry((x, y)).or_default() += 1;
        }
    }

    let mut kept: BTreeSet<VertexId> = points.keys().filter(|v| !interior(v)).cloned().collect();
    let mut edges: Vec<(VertexId, VertexId, Polyline<T>)> = Vec::new();
    let segment = |a: &VertexId, b: &VertexId| Polyline::new(vec![points[a].clone(), points[b].clone()]);
    let mut plain: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for (a, b) in g.edges() {
        if !interior(a) && !interior(b) {
            plain.insert(key(a, b));
        }
    }
    for (chain, ends) in groups {
        let splice = match ends {
            None => false,
            Some((a, b)) => {
                let (x, y) = if a <= b { (a, b) } else { (b, a) };
                a != b && joins[&(x, y)] == 1
            }
        };
        if splice {
            let (a, b) = ends.expect("spliced groups have ends");
            let mut pts = vec![points[a].clone()];
            pts.extend(chain.iter().map(|v| points[*v].clone()));
            pts.push(points[b].clone());
            edges.push((a.clone(), b.clone(), Polyline::new(pts).map_err(GraphError::from)?));
        } else {
            for v in &chain {
                kept.insert((*v).clone());
                for y in &nbrs[*v] {
                    plain.insert(key(v, y));
                }
            }
        }
    }
    for (a, b) in plain {
        let curve = segment(&a, &b).map_err(GraphError::from)?;
        edges.push((a, b, curve));
    }
    let vertices = kept.into_iter().map(|v| {
        let p = points[&v].clone();
        (v, p)
    });
    Ok(ContractedGraph::from_parts(g.dimension(), vertices.collect(), edges)?)
}

fn guard(size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        return Err(OracleError::SizeGuard { size, limit });
    }
    Ok(())
}

/// Every adjacency-preserving bijection between two small contracted
/// graphs, in lexicographic order of the vertex map.
pub fn enumerate_isomorphisms<T: Scalar>(g1: &ContractedGraph<T>, g2: &ContractedGraph<T>) -> Result<Vec<Isomorphism>, OracleError> {
    guard(g1.vertex_count().max(g2.vertex_count()), MAX_ORACLE_VERTICES)?;
    let n = g1.vertex_count();
    if g2.vertex_count() != n || g1.edge_count() != g2.edge_count() {
        return Ok(Vec::new());
    }
    let adj = |g: &ContractedGraph<T>| {
        let mut m = vec![false; n * n];
        for e in g.edges() {
            m[e.u * n + e.v] = true;
            m[e.v * n + e.u] = true;
        }
        m
    };
    let (a1, a2) = (adj(g1), adj(g2));
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let ok = (0..n).all(|i| (0..n).all(|j| a1[i * n + j] == a2[p[i] * n + p[j]]));
        if ok {
            out.push(p.to_vec());
        }
    });
    out.sort();
    Ok(out
        .into_iter()
        .map(|p| Isomorphism::from_index_map(g1, g2, p).expect("adjacency checked"))
        .collect())
}

fn permutations(p: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Cost of a vertex map, recomputed from points and curves.
fn direct_cost<T: Scalar>(g1: &ContractedGraph<T>, g2: &ContractedGraph<T>, map: &[usize]) -> T {
    let mut worst = T::zero();
    for (v, &w) in map.iter().enumerate() {
        worst = worst.max(point_distance(g1.point(v), g2.point(w)).expect("same dimension"));
    }
    for e in g1.edges() {
        let (a, b) = (map[e.u], map[e.v]);
        let e2 = g2
            .edges()
            .iter()
            .find(|f| (f.u == a && f.v == b) || (f.u == b && f.v == a))
            .expect("isomorphism preserves edges");
        let image = if e2.u == a { e2.curve.clone() } else { e2.curve.reversed() };
        worst = worst.max(curve_frechet(&e.curve, &image).expect("same dimension"));
    }
    worst
}

fn min_over<T: Scalar>(
    g1: &ContractedGraph<T>,
    g2: &ContractedGraph<T>,
    accept: impl Fn(&[usize]) -> bool,
) -> Result<ExtendedDistance<T>, OracleError> {
    let mut best = ExtendedDistance::Undefined;
    for iso in enumerate_isomorphisms(g1, g2)? {
        if accept(iso.index_map()) {
            best = best.min(ExtendedDistance::Finite(direct_cost(g1, g2, iso.index_map())));
        }
    }
    Ok(best)
}

/// Minimum over all isomorphisms of the contracted graphs of the largest
/// vertex displacement or matched curve distance.
pub fn brute_force_frechet<T: Scalar>(g1: &EmbeddedGraph<T>, g2: &EmbeddedGraph<T>) -> Result<ExtendedDistance<T>, OracleError> {
    let none = BTreeSet::new();
    let c1 = reference_contract(g1, &none)?;
    let c2 = reference_contract(g2, &none)?;
    brute_force_contracted(&c1, &c2)
}

pub fn brute_force_contracted<T: Scalar>(c1: &ContractedGraph<T>, c2: &ContractedGraph<T>) -> Result<ExtendedDistance<T>, OracleError> {
    if c1.vertex_count() == 0 && c2.vertex_count() == 0 {
        return Ok(ExtendedDistance::Finite(T::zero()));
    }
    min_over(c1, c2, |_| true)
}

/// As [`brute_force_frechet`], restricted to isomorphisms mapping root to
/// root. Both graphs must carry a root, which survives contraction.
pub fn brute_force_frechet_rooted<T: Scalar>(g1: &EmbeddedGraph<T>, g2: &EmbeddedGraph<T>) -> Result<ExtendedDistance<T>, OracleError> {
    let (Some(r1), Some(r2)) = (g1.root(), g2.root()) else {
        return Err(OracleError::Infeasible("both graphs need a root".into()));
    };
    let c1 = reference_contract(g1, &[r1.clone()].into_iter().collect())?;
    let c2 = reference_contract(g2, &[r2.clone()].into_iter().collect())?;
    let (i1, i2) = (c1.index_of(r1).expect("root kept"), c2.index_of(r2).expect("root kept"));
    min_over(&c1, &c2, |map| map[i1] == i2)
}

/// Minimum over all permutations of the largest selected entry.
pub fn brute_force_bottleneck<T: Scalar>(w: &WeightMatrix<T>) -> Result<Option<T>, OracleError> {
    guard(w.rows().max(w.cols()), MAX_ORACLE_MATRIX)?;
    if !w.is_square() {
        return Ok(None);
    }
    if w.rows() == 0 {
        return Ok(Some(T::zero()));
    }
    let mut best: Option<T> = None;
    let mut perm: Vec<usize> = (0..w.rows()).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut worst = Some(T::zero());
        for (i, &j) in p.iter().enumerate() {
            worst = match (worst, w.get(i, j)) {
                (Some(a), ExtendedDistance::Finite(b)) => Some(a.max(b)),
                _ => None,
            };
        }
        if let Some(v) = worst {
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    });
    Ok(best)
}

/// Fréchet distance by bisection on the decision procedure alone.
pub fn bisection_curve_frechet<T: Scalar>(p: &Polyline<T>, q: &Polyline<T>, tol: T) -> T {
    let mut hi = T::zero();
    for a in p.points() {
        for b in q.points() {
            hi = hi.max(point_distance(a, b).expect("same dimension"));
        }
    }
    hi = hi + tol;
    let mut lo = T::zero();
    let two = T::one() + T::one();
    while hi - lo >= tol {
        let mid = (lo + hi) / two;
        if frechet_decision(p, q, mid).expect("valid input") {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// What [`gen_instance`] should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// Uniform random recursive tree under a degree bound.
    Tree,
    /// Random tree plus `extra_edges` random chords.
    Graph,
    /// A tree (or graph, with chords) and a relabelled copy whose vertices
    /// are displaced by at most `eps`.
    PerturbedCopy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub n: usize,
    pub max_degree: usize,
    pub eps: f64,
    pub dimension: usize,
    pub seed: u64,
    pub extra_edges: usize,
    /// Number of edges to subdivide by short chains of degree-2 vertices.
    pub chains: usize,
    /// Root the base graph at its first vertex (and the copy at its image).
    pub rooted: bool,
}

impl Default for InstanceSpec {
    fn default() -> Self {
        Self {
            kind: InstanceKind::Tree,
            n: 8,
            max_degree: 3,
            eps: 0.0,
            dimension: 2,
            seed: 0,
            extra_edges: 0,
            chains: 0,
            rooted: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Single(EmbeddedGraph),
    Pair(EmbeddedGraph, EmbeddedGraph),
}

fn vid(i: usize) -> VertexId {
    VertexId::new(format!("v{i}"))
}

pub fn gen_instance(spec: &InstanceSpec) -> Result<Instance, OracleError> {
    if spec.n == 0 {
        return Err(OracleError::Infeasible("need at least one vertex".into()));
    }
    if spec.dimension == 0 {
        return Err(OracleError::Infeasible("dimension must be at least 1".into()));
    }
    if (spec.n >= 3 && spec.max_degree < 2) || (spec.n == 2 && spec.max_degree < 1) {
        return Err(OracleError::Infeasible(format!(
            "degree bound {} cannot connect {} vertices",
            spec.max_degree, spec.n
        )));
    }
    if !(spec.eps >= 0.0 && spec.eps.is_finite()) {
        return Err(OracleError::Infeasible("eps must be finite and non-negative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let d = spec.dimension;
    let mut coords: Vec<Vec<f64>> = (0..spec.n).map(|_| (0..d).map(|_| rng.gen::<f64>()).collect()).collect();
    let mut degree = vec![0usize; spec.n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 1..spec.n {
        let open: Vec<usize> = (0..i).filter(|&j| degree[j] < spec.max_degree).collect();
        let j = *open.choose(&mut rng).expect("a vertex below the degree bound exists");
        degree[i] += 1;
        degree[j] += 1;
        edges.push((j, i));
    }
    let with_chords = spec.kind == InstanceKind::Graph || (spec.kind == InstanceKind::PerturbedCopy && spec.extra_edges > 0);
    if with_chords {
        let mut present: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
        let mut added = 0;
        let mut attempts = 0;
        while added < spec.extra_edges && attempts < 100 * (spec.extra_edges + 1) {
            attempts += 1;
            let a = rng.gen_range(0..spec.n);
            let b = rng.gen_range(0..spec.n);
            let key = (a.min(b), a.max(b));
            if a == b || present.contains(&key) || degree[a] >= spec.max_degree || degree[b] >= spec.max_degree {
                continue;
            }
            present.insert(key);
            edges.push(key);
            degree[a] += 1;
            degree[b] += 1;
            added += 1;
        }
        if added < spec.extra_edges {
            return Err(OracleError::Infeasible(format!("could only place {added} of {} extra edges", spec.extra_edges)));
        }
    }
    for _ in 0..spec.chains {
        if edges.is_empty() {
            break;
        }
        let k = rng.gen_range(0..edges.len());
        let (a, b) = edges.swap_remove(k);
        let len = rng.gen_range(1..=3usize);
        let mut prev = a;
        for step in 1..=len {
            let t = step as f64 / (len + 1) as f64;
            let p: Vec<f64> = (0..d)
                .map(|c| coords[a][c] + t * (coords[b][c] - coords[a][c]) + 0.05 * (rng.gen::<f64>() - 0.5))
                .collect();
            coords.push(p);
            let v = coords.len() - 1;
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, b));
    }

    let total = coords.len();
    let mut base = EmbeddedGraph::new(d);
    for (i, c) in coords.iter().enumerate() {
        base.add_vertex(vid(i), c.clone());
    }
    for &(a, b) in &edges {
        base.add_edge(vid(a), vid(b));
    }
    if spec.rooted {
        base.set_root(Some(vid(0)));
    }
    if spec.kind != InstanceKind::PerturbedCopy {
        return Ok(Instance::Single(base));
    }

    let mut relabel: Vec<usize> = (0..total).collect();
    relabel.shuffle(&mut rng);
    let mut order: Vec<usize> = (0..total).collect();
    order.shuffle(&mut rng);
    let mut copy = EmbeddedGraph::new(d);
    for &i in &order {
        let offset = ball_sample(&mut rng, d, spec.eps);
        let c: Vec<f64> = coords[i].iter().zip(&offset).map(|(x, o)| x + o).collect();
        copy.add_vertex(vid(relabel[i]), c);
    }
    for &(a, b) in &edges {
        copy.add_edge(vid(relabel[b]), vid(relabel[a]));
    }
    if spec.rooted {
        copy.set_root(Some(vid(relabel[0])));
    }
    Ok(Instance::Pair(base, copy))
}

/// Uniform-ish point in the closed ball of radius `r`, by rejection.
fn ball_sample(rng: &mut ChaCha8Rng, d: usize, r: f64) -> Vec<f64> {
    if r == 0.0 {
        return vec![0.0; d];
    }
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= 1.0 {
            return v.into_iter().map(|x| x * r).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedded_graph::contract_degree2;

    fn triangle() -> EmbeddedGraph {
        let mut g = EmbeddedGraph::new(2);
        g.add_vertex("a", vec![0.0, 0.0])
            .add_vertex("b", vec![4.0, 0.0])
            .add_vertex("c", vec![1.0, 2.0])
            .add_edge("a", "b")
            .add_edge("b", "c")
            .add_edge("c", "a");
        g
    }

    fn path3() -> EmbeddedGraph {
        let mut g = EmbeddedGraph::new(2);
        g.add_vertex("a", vec![0.0, 0.0])
            .add_vertex("b", vec![1.0, 0.0])
            .add_vertex("c", vec![2.0, 0.0])
            .add_edge("a", "b")
            .add_edge("b", "c");
        g
    }

    #[test]
    fn isomorphism_counts() {
        let none = BTreeSet::new();
        let t = reference_contract(&triangle(), &none).unwrap();
        assert_eq!(enumerate_isomorphisms(&t, &t).unwrap().len(), 6);
        let p = reference_contract(&path3(), &none).unwrap();
        assert_eq!(p.vertex_count(), 2);
        assert_eq!(enumerate_isomorphisms(&p, &p).unwrap().len(), 2);
        assert!(enumerate_isomorphisms(&t, &p).unwrap().is_empty());
    }

    #[test]
    fn size_guard() {
        let spec = InstanceSpec { n: 12, max_degree: 2, ..Default::default() };
        let Instance::Single(g) = gen_instance(&spec).unwrap() else { panic!() };
        let protected: BTreeSet<VertexId> = g.vertices().iter().map(|(id, _)| id.clone()).collect();
        let c = reference_contract(&g, &protected).unwrap();
        assert_eq!(enumerate_isomorphisms(&c, &c).unwrap_err(), OracleError::SizeGuard { size: 12, limit: 9 });
        let w = WeightMatrix::<f64>::new(9, 9);
        assert!(matches!(brute_force_bottleneck(&w), Err(OracleError::SizeGuard { .. })));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_frechet(&triangle(), &triangle()).unwrap(), ExtendedDistance::Finite(0.0));
        let shifted = triangle().translated(&[0.0, 1.0]);
        assert_eq!(brute_force_frechet(&triangle(), &shifted).unwrap(), ExtendedDistance::Finite(1.0));
        // A single marked edge against a reversed copy of itself: the
        // identity pairing wins over the swap.
        let mut flipped = EmbeddedGraph::new(2);
        flipped
            .add_vertex("x", vec![2.0, 0.0])
            .add_vertex("y", vec![1.0, 0.0])
            .add_vertex("z", vec![0.0, 0.0])
            .add_edge("x", "y")
            .add_edge("y", "z");
        assert_eq!(brute_force_frechet(&path3(), &flipped).unwrap(), ExtendedDistance::Finite(0.0));
    }

    #[test]
    fn brute_force_bottleneck_examples() {
        let fig = WeightMatrix::from_rows(&[vec![1.0, 2.0, 2.0], vec![2.0, 1.0, 2.0], vec![2.0, 2.0, 1.0]]);
        assert_eq!(brute_force_bottleneck(&fig).unwrap(), Some(1.0));
        assert_eq!(brute_force_bottleneck(&WeightMatrix::from_rows(&[vec![5.0]])).unwrap(), Some(5.0));
        let anti = WeightMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert_eq!(brute_force_bottleneck(&anti).unwrap(), Some(1.0));
        assert_eq!(brute_force_bottleneck(&WeightMatrix::<f64>::new(2, 2)).unwrap(), None);
    }

    #[test]
    fn bisection_examples() {
        let pts = |v: &[(f64, f64)]| Polyline::new(v.iter().map(|&(x, y)| Point::new(vec![x, y]).unwrap()).collect()).unwrap();
        let p = pts(&[(0.0, 0.0), (1.0, 0.0)]);
        let q = pts(&[(0.0, 1.0), (1.0, 1.0)]);
        let tol = 1e-8;
        assert!(bisection_curve_frechet(&p, &p, tol) < tol);
        assert!((bisection_curve_frechet(&p, &q, tol) - 1.0).abs() <= tol);
        let seg = pts(&[(0.0, 0.0), (2.0, 0.0)]);
        let tent = pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert!((bisection_curve_frechet(&seg, &tent, tol) - 1.0).abs() <= tol);
    }

    #[test]
    fn generator_is_deterministic() {
        let spec = InstanceSpec { n: 5, seed: 7, ..Default::default() };
        assert_eq!(gen_instance(&spec).unwrap(), gen_instance(&spec).unwrap());
        let spec = InstanceSpec { kind: InstanceKind::PerturbedCopy, n: 6, seed: 3, eps: 0.1, chains: 2, ..Default::default() };
        assert_eq!(gen_instance(&spec).unwrap(), gen_instance(&spec).unwrap());
    }

    #[test]
    fn generator_rejects_bad_specs() {
        assert!(gen_instance(&InstanceSpec { n: 0, ..Default::default() }).is_err());
        assert!(gen_instance(&InstanceSpec { n: 4, max_degree: 1, ..Default::default() }).is_err());
        assert!(gen_instance(&InstanceSpec { eps: -1.0, ..Default::default() }).is_err());
    }

    #[test]
    fn perturbed_copies_stay_within_eps() {
        for (seed, eps) in [(1u64, 0.0), (2, 0.05), (3, 0.2)] {
            let spec = InstanceSpec { kind: InstanceKind::PerturbedCopy, n: 6, seed, eps, ..Default::default() };
            let Instance::Pair(a, b) = gen_instance(&spec).unwrap() else { panic!() };
            let d = brute_force_frechet(&a, &b).unwrap().value().unwrap();
            if eps == 0.0 {
                assert_eq!(d, 0.0);
            }
            assert!(d <= eps + 1e-9, "seed {seed}: {d} > {eps}");
        }
    }

    #[test]
    fn reference_contraction_matches_main_contraction() {
        for seed in 0..40 {
            let spec = InstanceSpec {
                kind: if seed % 2 == 0 { InstanceKind::Tree } else { InstanceKind::Graph },
                n: 9,
                max_degree: 4,
                extra_edges: 2,
                chains: 3,
                seed,
                ..Default::default()
            };
            let Instance::Single(g) = gen_instance(&spec).unwrap() else { panic!() };
            let none = BTreeSet::new();
            assert_eq!(reference_contract(&g, &none).unwrap(), contract_degree2(&g, &none).unwrap(), "seed {seed}");
        }
    }
}
