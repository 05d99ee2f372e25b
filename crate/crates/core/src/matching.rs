//! Perfect and bottleneck bipartite matchings over a weight matrix.

use std::collections::VecDeque;

use crate::geometry::ExtendedDistance;
use crate::scalar::Scalar;

/// Dense row-major matrix of possibly undefined weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix<T: Scalar = f64> {
    rows: usize,
    cols: usize,
    entries: Vec<ExtendedDistance<T>>,
}

impl<T: Scalar> WeightMatrix<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ExtendedDistance::Undefined; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExtendedDistance<T>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Builds a matrix from finite rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged weight matrix");
        Self::from_fn(rows.len(), cols, |i, j| ExtendedDistance::Finite(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> ExtendedDistance<T> {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: ExtendedDistance<T>) {
        self.entries[i * self.cols + j] = w;
    }
}

/// Perfect matching as a map from row to column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching(pub Vec<usize>);

impl Matching {
    pub fn col_of(&self, row: usize) -> usize {
        self.0[row]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied().enumerate()
    }

    /// Largest weight used by the matching.
    pub fn cost<T: Scalar>(&self, w: &WeightMatrix<T>) -> ExtendedDistance<T> {
        self.pairs()
            .map(|(i, j)| w.get(i, j))
            .fold(ExtendedDistance::Finite(T::zero()), ExtendedDistance::max)
    }
}

const FREE: usize = usize::MAX;

/// Hopcroft-Karp maximum matching on a bipartite graph given by row
/// adjacency lists. Returns `row -> col` (or `FREE`).
fn maximum_matching(adj: &[Vec<usize>], cols: usize) -> Vec<usize> {
    let rows = adj.len();
    let mut row_match = vec![FREE; rows];
    let mut col_match = vec![FREE; cols];
    let mut layer = vec![0usize; rows];

    loop {
        // BFS from free rows builds the layered graph.
        let mut queue = VecDeque::new();
        for r in 0..rows {
            if row_match[r] == FREE {
                layer[r] = 0;
                queue.push_back(r);
            } else {
                layer[r] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(r) = queue.pop_front() {
            for &c in &adj[r] {
                match col_match[c] {
                    FREE => found = true,
                    r2 if layer[r2] == usize::MAX => {
                        layer[r2] = layer[r] + 1;
                        queue.push_back(r2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut augmented = false;
        for r in 0..rows {
            if row_match[r] == FREE && augment(r, adj, &mut row_match, &mut col_match, &mut layer) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }
    row_match
}

fn augment(r: usize, adj: &[Vec<usize>], row_match: &mut [usize], col_match: &mut [usize], layer: &mut [usize]) -> bool {
    for &c in &adj[r] {
        let next = col_match[c];
        let ok = next == FREE
            || (layer[next] == layer[r] + 1 && augment(next, adj, row_match, col_match, layer));
        if ok {
            row_match[r] = c;
            col_match[c] = r;
            return true;
        }
    }
    layer[r] = usize::MAX;
    false
}

/// A perfect matching that only uses entries `<= threshold`, if one exists.
pub fn perfect_matching_under<T: Scalar>(w: &WeightMatrix<T>, threshold: T) -> Option<Matching> {
    if !w.is_square() {
        return None;
    }
    let adj: Vec<Vec<usize>> = (0..w.rows)
        .map(|i| {
            (0..w.cols)
                .filter(|&j| matches!(w.get(i, j), ExtendedDistance::Finite(v) if v <= threshold))
                .collect()
        })
        .collect();
    let m = maximum_matching(&adj, w.cols);
    m.iter().all(|&c| c != FREE).then_some(Matching(m))
}

/// Perfect matching minimizing its largest weight, together with that
/// weight. Found by binary search over the sorted distinct finite entries.
/// `None` if the matrix is not square or undefined entries block every
/// perfect matching.
pub fn bottleneck_matching<T: Scalar>(w: &WeightMatrix<T>) -> Option<(T, Matching)> {
    if !w.is_square() {
        return None;
    }
    if w.rows == 0 {
        return Some((T::zero(), Matching(Vec::new())));
    }
    // Every row and column must be covered, so the answer is at least the
    // largest row or column minimum.
    let mut floor = T::zero();
    for i in 0..w.rows {
        let row_min = (0..w.cols).filter_map(|j| w.get(i, j).value()).fold(T::infinity(), T::min);
        floor = floor.max(row_min);
    }
    for j in 0..w.cols {
        let col_min = (0..w.rows).filter_map(|i| w.get(i, j).value()).fold(T::infinity(), T::min);
        floor = floor.max(col_min);
    }
    if floor.is_infinite() {
        return None;
    }
    let mut values: Vec<T> = w
        .entries
        .iter()
        .filter_map(ExtendedDistance::value)
        .filter(|&v| v >= floor)
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite weights"));
    values.dedup();

    let (mut lo, mut hi) = (0usize, values.len() - 1);
    perfect_matching_under(w, values[hi])?;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching_under(w, values[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    // Minimality of `values[lo]` makes the witness attain it exactly.
    let witness = perfect_matching_under(w, values[lo]).expect("feasible at the search result");
    Some((values[lo], witness))
}
