//! Points, polylines and the continuous Fréchet distance between polygonal
//! curves.
//!
//! The exact distance is found by enumerating the finite set of critical
//! values that must contain it and binary searching that set with the
//! free-space reachability decision. All distances are Euclidean in an
//! arbitrary (but per-call uniform) dimension.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("point has no coordinates")]
    ZeroDimension,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("polyline needs at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("polyline repeats point {index} consecutively")]
    RepeatedPoint { index: usize },
    #[error("distance threshold must be non-negative")]
    NegativeDelta,
}

/// A point in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T: Scalar = f64> {
    coords: Vec<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(Self { coords })
    }

    /// Builds a point without validating the coordinates. Callers are
    /// expected to have checked finiteness already.
    pub(crate) fn from_raw(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub(crate) fn dist_sq(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum()
    }

    pub(crate) fn dist(&self, other: &Self) -> T {
        self.dist_sq(other).sqrt()
    }

    pub fn translated(&self, offset: &[T]) -> Self {
        Self {
            coords: self.coords.iter().zip(offset).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// Lexicographic order on coordinates, used to give segments a
    /// canonical orientation so that results do not depend on traversal
    /// direction.
    pub(crate) fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.partial_cmp(b) {
                Some(Ordering::Equal) | None => continue,
                Some(ord) => return ord,
            }
        }
        Ordering::Equal
    }
}

/// Euclidean distance between two points of equal dimension.
pub fn point_distance<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Result<T, GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(p.dist(q))
}

/// An oriented polygonal curve with at least two vertices and no zero-length
/// segments.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline<T: Scalar = f64> {
    points: Vec<Point<T>>,
}

impl<T: Scalar> Polyline<T> {
    pub fn new(points: Vec<Point<T>>) -> Result<Self, GeometryError> {
        if points.len() < 2 {
            return Err(GeometryError::TooFewPoints(points.len()));
        }
        let dim = points[0].dim();
        for (i, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(GeometryError::DimensionMismatch {
                    left: dim,
                    right: p.dim(),
                });
            }
            if !p.is_finite() {
                return Err(GeometryError::NonFinite);
            }
            if i > 0 && points[i - 1] == *p {
                return Err(GeometryError::RepeatedPoint { index: i });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; a polyline has at least two points.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn first(&self) -> &Point<T> {
        &self.points[0]
    }

    pub fn last(&self) -> &Point<T> {
        &self.points[self.points.len() - 1]
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self { points }
    }

    pub fn translated(&self, offset: &[T]) -> Self {
        Self {
            points: self.points.iter().map(|p| p.translated(offset)).collect(),
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point<T>, &Point<T>)> + '_ {
        self.points.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn max_segment_length(&self) -> T {
        self.segments()
            .map(|(a, b)| a.dist(b))
            .fold(T::zero(), T::max)
    }

    /// Concatenates `self` and `next`, which must start where `self` ends.
    pub(crate) fn joined(&self, next: &Self) -> Self {
        debug_assert_eq!(self.last(), next.first());
        let mut points = self.points.clone();
        points.extend(next.points[1..].iter().cloned());
        Self { points }
    }
}

/// A distance that may be undefined (the compared objects admit no
/// isomorphism). `Undefined` orders after every finite value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum ExtendedDistance<T = f64> {
    Finite(T),
    Undefined,
}

impl<T: Scalar> ExtendedDistance<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn value(&self) -> Option<T> {
        match *self {
            Self::Finite(v) => Some(v),
            Self::Undefined => None,
        }
    }

    pub fn max(self, other: Self) -> Self {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a.max(b)),
            _ => Self::Undefined,
        }
    }

    pub fn min(self, other: Self) -> Self {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a.min(b)),
            (Self::Finite(a), Self::Undefined) | (Self::Undefined, Self::Finite(a)) => {
                Self::Finite(a)
            }
            (Self::Undefined, Self::Undefined) => Self::Undefined,
        }
    }
}

impl<T: Scalar> From<Option<T>> for ExtendedDistance<T> {
    fn from(v: Option<T>) -> Self {
        v.map_or(Self::Undefined, Self::Finite)
    }
}

impl<T: Scalar> fmt::Display for ExtendedDistance<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Undefined => f.write_str("undefined"),
        }
    }
}

/// Closed parameter interval `[lo, hi]` inside `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    fn clip_below(self, lo: T) -> Option<Self> {
        let lo = self.lo.max(lo);
        (lo <= self.hi).then_some(Self { lo, hi: self.hi })
    }
}

/// The part of segment `a -> b` (as a parameter range in `[0,1]`) that lies
/// within `delta` of `p`.
pub fn free_space_interval<T: Scalar>(
    segment: (&Point<T>, &Point<T>),
    p: &Point<T>,
    delta: T,
) -> Option<Interval<T>> {
    let (a, b) = segment;
    if a.lex_cmp(b) == Ordering::Greater {
        return interval_canonical(b, a, p, delta).map(|iv| Interval {
            lo: T::one() - iv.hi,
            hi: T::one() - iv.lo,
        });
    }
    interval_canonical(a, b, p, delta)
}

fn interval_canonical<T: Scalar>(a: &Point<T>, b: &Point<T>, p: &Point<T>, delta: T) -> Option<Interval<T>> {
    let len_sq = a.dist_sq(b);
    let mut dot = T::zero();
    for ((&ai, &bi), &pi) in a.coords.iter().zip(&b.coords).zip(&p.coords) {
        dot = dot + (bi - ai) * (pi - ai);
    }
    let t0 = dot / len_sq;
    let foot_sq: T = a
        .coords
        .iter()
        .zip(&b.coords)
        .zip(&p.coords)
        .map(|((&ai, &bi), &pi)| {
            let f = ai + t0 * (bi - ai) - pi;
            f * f
        })
        .sum();
    let slack = delta * delta - foot_sq;
    if slack < T::zero() {
        return None;
    }
    let half = (slack / len_sq).sqrt();
    let lo = (t0 - half).max(T::zero());
    let hi = (t0 + half).min(T::one());
    (lo <= hi).then_some(Interval { lo, hi })
}

/// Distance from `p` to the closed segment `a b`, independent of the
/// segment's orientation.
pub(crate) fn point_segment_distance<T: Scalar>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    let (a, b) = if a.lex_cmp(b) == Ordering::Greater { (b, a) } else { (a, b) };
    let len_sq = a.dist_sq(b);
    let mut dot = T::zero();
    for ((&ai, &bi), &pi) in a.coords.iter().zip(&b.coords).zip(&p.coords) {
        dot = dot + (bi - ai) * (pi - ai);
    }
    let t = (dot / len_sq).max(T::zero()).min(T::one());
    a.coords
        .iter()
        .zip(&b.coords)
        .zip(&p.coords)
        .map(|((&ai, &bi), &pi)| {
            let f = ai + t * (bi - ai) - pi;
            f * f
        })
        .sum::<T>()
        .sqrt()
}

/// Distance from `p` (and `q`) to the point of segment `a b` equidistant to
/// both, if the bisector of `p q` crosses the segment.
fn bisector_crossing<T: Scalar>(p: &Point<T>, q: &Point<T>, a: &Point<T>, b: &Point<T>) -> Option<T> {
    let (p, q) = if p.lex_cmp(q) == Ordering::Greater { (q, p) } else { (p, q) };
    let (a, b) = if a.lex_cmp(b) == Ordering::Greater { (b, a) } else { (a, b) };
    let two = T::one() + T::one();
    let mut num = T::zero();
    let mut den = T::zero();
    for i in 0..p.dim() {
        let normal = q.coords[i] - p.coords[i];
        let mid = (p.coords[i] + q.coords[i]) / two;
        num = num + (mid - a.coords[i]) * normal;
        den = den + (b.coords[i] - a.coords[i]) * normal;
    }
    if den == T::zero() {
        return None;
    }
    let t = num / den;
    if !(T::zero()..=T::one()).contains(&t) {
        return None;
    }
    let point = Point::from_raw(
        a.coords
            .iter()
            .zip(&b.coords)
            .map(|(&ai, &bi)| ai + t * (bi - ai))
            .collect(),
    );
    Some(point.dist(p))
}

fn check_dims<T: Scalar>(p: &Polyline<T>, q: &Polyline<T>) -> Result<(), GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(())
}

/// Decides whether the Fréchet distance between `p` and `q` (start matched
/// to start, end to end) is at most `delta`.
pub fn frechet_decision<T: Scalar>(p: &Polyline<T>, q: &Polyline<T>, delta: T) -> Result<bool, GeometryError> {
    check_dims(p, q)?;
    if delta < T::zero() {
        return Err(GeometryError::NegativeDelta);
    }
    Ok(decide(p, q, delta))
}

pub(crate) fn decide<T: Scalar>(p: &Polyline<T>, q: &Polyline<T>, delta: T) -> bool {
    let delta_sq = delta * delta;
    if p.first().dist_sq(q.first()) > delta_sq || p.last().dist_sq(q.last()) > delta_sq {
        return false;
    }
    let (pp, qp) = (p.points(), q.points());
    let (n, m) = (pp.len(), qp.len());

    // `left[i * (m - 1) + j]`: free part of Q's segment j seen from P's vertex i.
    // `bottom[j * (n - 1) + i]`: free part of P's segment i seen from Q's vertex j.
    let left_free = |i: usize, j: usize| free_space_interval((&qp[j], &qp[j + 1]), &pp[i], delta);
    let bottom_free = |i: usize, j: usize| free_space_interval((&pp[i], &pp[i + 1]), &qp[j], delta);

    let mut left: Vec<Option<Interval<T>>> = vec![None; n * (m - 1)];
    let mut bottom: Vec<Option<Interval<T>>> = vec![None; m * (n - 1)];

    // First column and first row: reachable only along the boundary from (0, 0).
    for j in 0..m - 1 {
        let reachable_from_below = if j == 0 {
            true
        } else {
            matches!(left[j - 1], Some(iv) if iv.hi >= T::one())
        };
        if !reachable_from_below {
            break;
        }
        left[j] = match left_free(0, j) {
            Some(iv) if iv.lo <= T::zero() => Some(iv),
            None if j == 0 => Some(Interval { lo: T::zero(), hi: T::zero() }),
            _ => None,
        };
        if j == 0 {
            left[0] = left[0].map(|iv| Interval { lo: T::zero(), hi: iv.hi });
        }
    }
    for i in 0..n - 1 {
        let reachable_from_left = if i == 0 {
            true
        } else {
            matches!(bottom[i - 1], Some(iv) if iv.hi >= T::one())
        };
        if !reachable_from_left {
            break;
        }
        bottom[i] = match bottom_free(i, 0) {
            Some(iv) if iv.lo <= T::zero() => Some(iv),
            None if i == 0 => Some(Interval { lo: T::zero(), hi: T::zero() }),
            _ => None,
        };
        if i == 0 {
            bottom[0] = bottom[0].map(|iv| Interval { lo: T::zero(), hi: iv.hi });
        }
    }

    for i in 0..n - 1 {
        for j in 0..m - 1 {
            let l = left[i * (m - 1) + j];
            let b = bottom[j * (n - 1) + i];
            if l.is_none() && b.is_none() {
                continue;
            }
            let right = left_free(i + 1, j).and_then(|iv| match (b, l) {
                (Some(_), _) => Some(iv),
                (None, Some(l)) => iv.clip_below(l.lo),
                (None, None) => None,
            });
            let top = bottom_free(i, j + 1).and_then(|iv| match (l, b) {
                (Some(_), _) => Some(iv),
                (None, Some(b)) => iv.clip_below(b.lo),
                (None, None) => None,
            });
            left[(i + 1) * (m - 1) + j] = right;
            bottom[(j + 1) * (n - 1) + i] = top;
        }
    }

    let reaches_end = |iv: Option<Interval<T>>| matches!(iv, Some(iv) if iv.hi >= T::one());
    reaches_end(left[(n - 1) * (m - 1) + (m - 2)]) || reaches_end(bottom[(m - 1) * (n - 1) + (n - 2)])
}

/// Candidate values guaranteed to contain the Fréchet distance of `p` and
/// `q`: endpoint distances, vertex-to-segment distances, and the distances
/// at which a monotone passage between two vertices opens on a segment.
/// Sorted ascending and deduplicated within the scalar tolerance.
pub fn frechet_critical_values<T: Scalar>(p: &Polyline<T>, q: &Polyline<T>) -> Result<Vec<T>, GeometryError> {
    check_dims(p, q)?;
    Ok(critical_values(p, q))
}

fn critical_values<T: Scalar>(p: &Polyline<T>, q: &Polyline<T>) -> Vec<T> {
    let mut values = vec![p.first().dist(q.first()), p.last().dist(q.last())];
    for (verts, other) in [(p, q), (q, p)] {
        for v in verts.points() {
            for (a, b) in other.segments() {
                values.push(point_segment_distance(v, a, b));
            }
        }
        let pts = verts.points();
        for k in 0..pts.len() {
            for l in k + 1..pts.len() {
                for (a, b) in other.segments() {
                    if let Some(v) = bisector_crossing(&pts[k], &pts[l], a, b) {
                        values.push(v);
                    }
                }
            }
        }
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let tol = T::tolerance();
    let mut out: Vec<T> = Vec::with_capacity(values.len());
    for v in values {
        match out.last() {
            Some(&last) if v - last <= tol => {}
            _ => out.push(v),
        }
    }
    out
}

/// Continuous Fréchet distance between two polylines of equal dimension.
pub fn curve_frechet<T: Scalar>(p: &Polyline<T>, q: &Polyline<T>) -> Result<T, GeometryError> {
    check_dims(p, q)?;
    Ok(frechet_unchecked(p, q))
}

pub(crate) fn frechet_unchecked<T: Scalar>(p: &Polyline<T>, q: &Polyline<T>) -> T {
    let endpoints = p.first().dist(q.first()).max(p.last().dist(q.last()));
    // Two segments: linear reparametrization attains the endpoint bound.
    if p.len() == 2 && q.len() == 2 {
        return endpoints;
    }
    let tol = T::tolerance();
    // Deduplication may have folded `endpoints` into a slightly smaller
    // neighbour, so it is added back explicitly.
    let values: Vec<T> = std::iter::once(endpoints)
        .chain(critical_values(p, q).into_iter().filter(|&v| v > endpoints))
        .collect();
    let (mut lo, mut hi) = (0usize, values.len() - 1);
    if !decide(p, q, values[hi] + tol) {
        return values[hi];
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if decide(p, q, values[mid] + tol) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    values[lo]
}

/// Discrete Fréchet distance over the vertex sequences.
pub fn discrete_frechet<T: Scalar>(p: &Polyline<T>, q: &Polyline<T>) -> Result<T, GeometryError> {
    check_dims(p, q)?;
    let (pp, qp) = (p.points(), q.points());
    let m = qp.len();
    let mut prev = vec![T::zero(); m];
    let mut cur = vec![T::zero(); m];
    for (i, a) in pp.iter().enumerate() {
        for (j, b) in qp.iter().enumerate() {
            let d = a.dist(b);
            cur[j] = match (i, j) {
                (0, 0) => d,
                (0, _) => cur[j - 1].max(d),
                (_, 0) => prev[0].max(d),
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]).max(d),
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(vec![x, y]).unwrap()
    }

    fn line(pts: &[(f64, f64)]) -> Polyline {
        Polyline::new(pts.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    #[test]
    fn point_distance_examples() {
        assert_eq!(point_distance(&pt(0.0, 0.0), &pt(0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(point_distance(&pt(0.0, 0.0), &pt(3.0, 4.0)).unwrap(), 5.0);
        let d = point_distance(&pt(1.0, 1.0), &pt(2.0, 2.0)).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
        let p3 = Point::new(vec![0.0, 0.0, 0.0]).unwrap();
        assert_eq!(
            point_distance(&pt(0.0, 0.0), &p3),
            Err(GeometryError::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn point_rejects_bad_coordinates() {
        assert_eq!(Point::<f64>::new(vec![]), Err(GeometryError::ZeroDimension));
        assert_eq!(Point::new(vec![0.0, f64::NAN]), Err(GeometryError::NonFinite));
        assert_eq!(Point::new(vec![f64::INFINITY]), Err(GeometryError::NonFinite));
    }

    #[test]
    fn polyline_invariants() {
        assert_eq!(Polyline::new(vec![pt(0.0, 0.0)]), Err(GeometryError::TooFewPoints(1)));
        assert_eq!(
            Polyline::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 0.0)]),
            Err(GeometryError::RepeatedPoint { index: 2 })
        );
        // Non-consecutive repeats are fine.
        assert!(Polyline::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 0.0)]).is_ok());
    }

    #[test]
    fn free_space_interval_examples() {
        let (a, b) = (pt(0.0, 0.0), pt(2.0, 0.0));
        assert_eq!(
            free_space_interval((&a, &b), &pt(1.0, 1.0), 1.0),
            Some(Interval { lo: 0.5, hi: 0.5 })
        );
        assert_eq!(free_space_interval((&a, &b), &pt(1.0, 5.0), 1.0), None);
        assert_eq!(
            free_space_interval((&a, &b), &pt(1.0, 0.0), 1.0),
            Some(Interval { lo: 0.0, hi: 1.0 })
        );
    }

    #[test]
    fn free_space_interval_flips_with_orientation() {
        let (a, b) = (pt(0.0, 0.0), pt(4.0, 0.0));
        let p = pt(1.0, 0.5);
        let fwd = free_space_interval((&a, &b), &p, 1.0).unwrap();
        let rev = free_space_interval((&b, &a), &p, 1.0).unwrap();
        assert!((fwd.lo - (1.0 - rev.hi)).abs() < 1e-15);
        assert!((fwd.hi - (1.0 - rev.lo)).abs() < 1e-15);
    }

    #[test]
    fn decision_examples() {
        let p = line(&[(0.0, 0.0), (1.0, 0.0)]);
        let q = line(&[(0.0, 1.0), (1.0, 1.0)]);
        assert!(frechet_decision(&p, &p, 0.0).unwrap());
        assert!(!frechet_decision(&p, &q, 0.5).unwrap());
        assert!(frechet_decision(&p, &q, 1.0).unwrap());
        assert_eq!(frechet_decision(&p, &q, -1.0), Err(GeometryError::NegativeDelta));
    }

    #[test]
    fn decision_rejects_backtracking() {
        // Q doubles back; a monotone walk along P must stretch to the far end.
        let p = line(&[(0.0, 0.0), (4.0, 0.0)]);
        let q = line(&[(0.0, 0.0), (3.0, 0.0), (1.0, 0.0), (4.0, 0.0)]);
        assert!(!frechet_decision(&p, &q, 0.9).unwrap());
        assert!(frechet_decision(&p, &q, 1.0 + 1e-9).unwrap());
        assert!((curve_frechet(&p, &q).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn critical_value_examples() {
        let p = line(&[(0.0, 0.0), (1.0, 0.0)]);
        let q = line(&[(0.0, 1.0), (1.0, 1.0)]);
        assert!(frechet_critical_values(&p, &p).unwrap().contains(&0.0));
        assert!(frechet_critical_values(&p, &q).unwrap().contains(&1.0));
        let seg = line(&[(0.0, 0.0), (2.0, 0.0)]);
        let tent = line(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        let values = frechet_critical_values(&seg, &tent).unwrap();
        assert!(values.iter().any(|&v| (v - 1.0).abs() < 1e-12));
        assert!(values.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn curve_frechet_examples() {
        let p = line(&[(0.0, 0.0), (1.0, 0.0)]);
        let q = line(&[(0.0, 0.0), (0.0, 1.0)]);
        assert_eq!(curve_frechet(&p, &p).unwrap(), 0.0);
        assert_eq!(curve_frechet(&p, &q).unwrap(), 2f64.sqrt());
        let seg = line(&[(0.0, 0.0), (2.0, 0.0)]);
        let tent = line(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert!((curve_frechet(&seg, &tent).unwrap() - 1.0).abs() < 1e-12);
        let zig = line(&[(0.0, 0.0), (1.0, 0.5), (2.0, 0.0), (3.0, 0.5)]);
        assert_eq!(curve_frechet(&zig, &zig).unwrap(), 0.0);
    }

    #[test]
    fn segment_against_reversal() {
        let p = line(&[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(curve_frechet(&p, &p.reversed()).unwrap(), 1.0);
    }

    #[test]
    fn discrete_frechet_examples() {
        let p = line(&[(0.0, 0.0), (1.0, 0.0)]);
        let q = line(&[(0.0, 1.0), (1.0, 1.0)]);
        assert_eq!(discrete_frechet(&p, &p).unwrap(), 0.0);
        assert_eq!(discrete_frechet(&p, &q).unwrap(), 1.0);
        let seg = line(&[(0.0, 0.0), (2.0, 0.0)]);
        let tent = line(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        // The apex (1,1) must couple with (0,0) or (2,0), both sqrt2 away.
        assert_eq!(discrete_frechet(&seg, &tent).unwrap(), 2f64.sqrt());
    }

    #[test]
    fn works_in_three_dimensions_and_f32() {
        let p = Polyline::new(vec![
            Point::new(vec![0.0f32, 0.0, 0.0]).unwrap(),
            Point::new(vec![1.0f32, 0.0, 0.0]).unwrap(),
            Point::new(vec![2.0f32, 0.0, 0.0]).unwrap(),
        ])
        .unwrap();
        let q = p.translated(&[0.0, 0.0, 0.25]);
        assert!((curve_frechet(&p, &q).unwrap() - 0.25).abs() < 1e-5);
    }

    #[test]
    fn extended_distance_ordering() {
        let undefined = ExtendedDistance::<f64>::Undefined;
        assert!(ExtendedDistance::Finite(1e300) < undefined);
        assert_eq!(ExtendedDistance::Finite(1.0).max(ExtendedDistance::Finite(2.0)), ExtendedDistance::Finite(2.0));
        assert_eq!(ExtendedDistance::Finite(1.0).max(undefined), undefined);
        assert_eq!(undefined.min(ExtendedDistance::Finite(3.0)), ExtendedDistance::Finite(3.0));
        assert_eq!(undefined.to_string(), "undefined");
    }
}
