//! Quasi-metric point-set geometry: the Heisenberg group in exponential
//! coordinates with its homogeneous quasi-norm, the family of points whose
//! inverses fail to be relatively separated, separation scans with closed
//! balls, and the greedy partition into separated parts. A Euclidean backend
//! is included for tests and demos.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PointSetError {
    #[error("empty center list for a separation scan")]
    EmptyCenters,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// Point of the Heisenberg group in exponential coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeisPoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl HeisPoint {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }
}

/// exp(X)exp(Y) = exp(X + Y + [X,Y]/2): third coordinate picks up the
/// symplectic term (x1 y2 - x2 y1)/2.
pub fn heis_multiply(p: HeisPoint, q: HeisPoint) -> HeisPoint {
    HeisPoint::new(
        p.x1 + q.x1,
        p.x2 + q.x2,
        p.x3 + q.x3 + (p.x1 * q.x2 - p.x2 * q.x1) / 2.0,
    )
}

pub fn heis_inverse(p: HeisPoint) -> HeisPoint {
    HeisPoint::new(-p.x1, -p.x2, -p.x3)
}

/// Homogeneous quasi-norm ((x1^2 + x2^2)^2 + x3^4)^(1/4).
pub fn quasi_norm(p: HeisPoint) -> f64 {
    let horizontal = p.x1 * p.x1 + p.x2 * p.x2;
    (horizontal * horizontal + p.x3.powi(4)).powf(0.25)
}

/// Left-invariant quasi-distance d(p, q) = ||p^{-1} q||.
pub fn quasi_distance(p: HeisPoint, q: HeisPoint) -> f64 {
    quasi_norm(heis_multiply(heis_inverse(p), q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Space {
    Euclidean(usize),
    Heisenberg,
}

/// Finite point configuration in one of the two supported spaces.
#[derive(Debug, Clone, Serialize)]
pub struct PointSet {
    pub space: Space,
    pub points: Vec<Vec<f64>>,
}

impl PointSet {
    pub fn euclidean(d: usize, points: Vec<Vec<f64>>) -> Result<Self, PointSetError> {
        for p in &points {
            if p.len() != d {
                return Err(PointSetError::DimMismatch { expected: d, got: p.len() });
            }
        }
        Ok(Self { space: Space::Euclidean(d), points })
    }

    pub fn heisenberg(points: Vec<HeisPoint>) -> Self {
        Self {
            space: Space::Heisenberg,
            points: points.into_iter().map(|p| vec![p.x1, p.x2, p.x3]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match self.space {
            Space::Euclidean(_) => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Space::Heisenberg => quasi_distance(
                HeisPoint::new(a[0], a[1], a[2]),
                HeisPoint::new(b[0], b[1], b[2]),
            ),
        }
    }

    /// Inverse set: negation works in both backends (group inverse in the
    /// Heisenberg case, point reflection in the Euclidean one).
    pub fn inverses(&self) -> PointSet {
        PointSet {
            space: self.space,
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    pub fn min_pairwise_distance(&self) -> Option<f64> {
        let n = self.points.len();
        if n < 2 {
            return None;
        }
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.min(self.distance(&self.points[i], &self.points[j]));
            }
        }
        Some(best)
    }
}

/// U_N = the exponential-coordinate point (N^2, 0, 0) scaled family anchor;
/// V_{N,l} = (N^2, l/N^2, l/2).
pub fn u_point(n: usize) -> HeisPoint {
    HeisPoint::new((n * n) as f64, 0.0, 0.0)
}

pub fn v_point(n: usize, l: usize) -> HeisPoint {
    let n2 = (n * n) as f64;
    HeisPoint::new(n2, l as f64 / n2, l as f64 / 2.0)
}

/// The family Gamma = {exp(-V_{M,l}) : 1 <= l <= M <= N_max}: pairwise
/// quasi-distances stay >= 1, yet the inverse set packs >= N points into the
/// ball of radius 1/N around exp(U_N).
pub fn counterexample_set(n_max: usize) -> Result<PointSet, PointSetError> {
    if n_max < 1 {
        return Err(PointSetError::BadParams("counterexample set needs N_max >= 1".into()));
    }
    let mut points = Vec::with_capacity(n_max * (n_max + 1) / 2);
    for m in 1..=n_max {
        for l in 1..=m {
            points.push(heis_inverse(v_point(m, l)));
        }
    }
    Ok(PointSet::heisenberg(points))
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationReport {
    pub radius: f64,
    pub max_ball_occupancy: usize,
    /// index into the center list realizing the maximum
    pub witness_center: Option<usize>,
}

/// Occupancy of closed balls of the given radius around each center:
/// max_c #{p in S : d(c, p) <= r}.
pub fn separation_scan(
    s: &PointSet,
    radius: f64,
    centers: &PointSet,
) -> Result<SeparationReport, PointSetError> {
    if centers.is_empty() {
        return Err(PointSetError::EmptyCenters);
    }
    if radius <= 0.0 {
        return Err(PointSetError::BadParams("scan radius must be positive".into()));
    }
    let mut best = 0usize;
    let mut witness = None;
    for (ci, c) in centers.points.iter().enumerate() {
        let count = s.points.iter().filter(|p| s.distance(c, p) <= radius).count();
        if count > best {
            best = count;
            witness = Some(ci);
        }
    }
    Ok(SeparationReport { radius, max_ball_occupancy: best, witness_center: witness })
}

#[derive(Debug, Clone, Serialize)]
pub struct Partition {
    /// index lists into the input set, in extraction order
    pub parts: Vec<Vec<usize>>,
    /// packing constant: max 2s-ball census minus one
    pub packing_constant: usize,
    pub separation: f64,
}

/// Repeatedly extract a maximal s-separated subset (greedy, input order).
/// A part is s-separated when the closed s-balls around its members are
/// pairwise disjoint, realized as pairwise distance > 2s. The part count is
/// bounded by m + 1 where m = max_p #{q != p : d(p,q) < 2s}.
pub fn greedy_partition(s: &PointSet, sep: f64) -> Result<Partition, PointSetError> {
    if sep <= 0.0 {
        return Err(PointSetError::BadParams("separation radius must be positive".into()));
    }
    let n = s.points.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut parts = Vec::new();
    while !remaining.is_empty() {
        let mut part: Vec<usize> = Vec::new();
        let mut rest = Vec::new();
        for &i in &remaining {
            let ok = part
                .iter()
                .all(|&j| s.distance(&s.points[i], &s.points[j]) > 2.0 * sep);
            if ok {
                part.push(i);
            } else {
                rest.push(i);
            }
        }
        parts.push(part);
        remaining = rest;
    }
    let mut census = 0usize;
    for i in 0..n {
        let near = (0..n)
            .filter(|&j| j != i && s.distance(&s.points[i], &s.points[j]) < 2.0 * sep)
            .count();
        census = census.max(near);
    }
    Ok(Partition { parts, packing_constant: census, separation: sep })
}

/// Deduplicate a family with repetitions, tracking the largest multiplicity.
pub fn collapse_family(s: &PointSet) -> (PointSet, usize) {
    let mut kept: Vec<Vec<f64>> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for p in &s.points {
        match kept.iter().position(|q| q == p) {
            Some(i) => counts[i] += 1,
            None => {
                kept.push(p.clone());
                counts.push(1);
            }
        }
    }
    let max_mult = counts.iter().copied().max().unwrap_or(0);
    (PointSet { space: s.space, points: kept }, max_mult.max(usize::from(!s.points.is_empty())))
}
