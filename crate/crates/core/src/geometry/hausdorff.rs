//! Hausdorff distances between finite point sets and unions of closed boxes.
//!
//! Box-to-set distances use branch and bound on the 1-Lipschitz distance
//! function: a box is bounded below by the best corner value and above by
//! `min_b max_corner d(corner, b)`, which is exact for a single target box
//! since distance to a convex set is convex. Boxes are bisected until the
//! bounds close to within [`BOX_TOLERANCE`].

use super::grid::CellSet;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Absolute accuracy of every box-based Hausdorff distance.
pub const BOX_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    #[default]
    Euclidean,
    /// Sup-norm distance `max_j |x_j - y_j|`.
    Chebyshev,
}

impl Metric {
    fn combine<T: Real>(self, gaps: impl Iterator<Item = T>) -> T {
        match self {
            Metric::Euclidean => gaps.map(|g| g * g).sum::<T>().sqrt(),
            Metric::Chebyshev => gaps.fold(T::zero(), |a, g| a.max(g)),
        }
    }

    pub fn distance<T: Real>(self, a: &[T], b: &[T]) -> T {
        self.combine(a.iter().zip(b).map(|(&x, &y)| (x - y).abs()))
    }
}

#[derive(Debug, Clone)]
struct Boxes<T> {
    lo: Vec<Vec<T>>,
    hi: Vec<Vec<T>>,
    dim: usize,
}

impl<T: Real> Boxes<T> {
    fn from_cells(set: &CellSet) -> Self {
        let (lo, hi) = set.cells().map(|c| (c.anchor(), c.upper())).unzip();
        Self { lo, hi, dim: set.grid().dim() }
    }

    fn from_points<P: AsRef<[T]>>(points: &[P]) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptySet)?.as_ref().len();
        let mut lo = Vec::with_capacity(points.len());
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
            lo.push(p.to_vec());
        }
        Ok(Self { hi: lo.clone(), lo, dim })
    }

    fn len(&self) -> usize {
        self.lo.len()
    }

    fn point_distance(&self, i: usize, x: &[T], metric: Metric) -> T {
        let (lo, hi) = (&self.lo[i], &self.hi[i]);
        metric.combine(
            x.iter()
                .zip(lo.iter().zip(hi))
                .map(|(&c, (&l, &h))| (l - c).max(c - h).max(T::zero())),
        )
    }

    fn set_distance(&self, x: &[T], metric: Metric) -> T {
        (0..self.len())
            .map(|i| self.point_distance(i, x, metric))
            .fold(T::infinity(), |a, b| a.min(b))
    }
}

fn corners<T: Real>(lo: &[T], hi: &[T]) -> Vec<Vec<T>> {
    let d = lo.len();
    let degenerate: Vec<bool> = lo.iter().zip(hi).map(|(l, h)| l == h).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << d) {
        if (0..d).any(|j| degenerate[j] && mask & (1 << j) != 0) {
            continue;
        }
        out.push((0..d).map(|j| if mask & (1 << j) != 0 { hi[j] } else { lo[j] }).collect());
    }
    out
}

/// `sup_{x in source} d(x, target)`.
fn directed<T: Real>(source: &Boxes<T>, target: &Boxes<T>, metric: Metric) -> T {
    let tol = T::lit(BOX_TOLERANCE);
    let mut best = T::zero();
    let mut stack: Vec<(Vec<T>, Vec<T>)> = source
        .lo
        .iter()
        .cloned()
        .zip(source.hi.iter().cloned())
        .collect();
    while let Some((lo, hi)) = stack.pop() {
        let cs = corners(&lo, &hi);
        let lower = cs
            .iter()
            .map(|c| target.set_distance(c, metric))
            .fold(T::zero(), |a, b| a.max(b));
        best = best.max(lower);
        let upper = (0..target.len())
            .map(|i| {
                cs.iter()
                    .map(|c| target.point_distance(i, c, metric))
                    .fold(T::zero(), |a, b| a.max(b))
            })
            .fold(T::infinity(), |a, b| a.min(b));
        if upper <= best + tol || upper - lower <= tol {
            continue;
        }
        let (axis, _) = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &h)| h - l)
            .enumerate()
            .fold((0, T::zero()), |acc, (j, w)| if w > acc.1 { (j, w) } else { acc });
        let mid = (lo[axis] + hi[axis]) / T::lit(2.0);
        let mut hi_left = hi.clone();
        hi_left[axis] = mid;
        let mut lo_right = lo.clone();
        lo_right[axis] = mid;
        stack.push((lo, hi_left));
        stack.push((lo_right, hi));
    }
    best
}

fn symmetric<T: Real>(a: &Boxes<T>, b: &Boxes<T>, metric: Metric) -> Result<T> {
    if a.len() == 0 || b.len() == 0 {
        return Err(Error::EmptySet);
    }
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: b.dim });
    }
    Ok(directed(a, b, metric).max(directed(b, a, metric)))
}

/// Max over `a` of the distance to the nearest point of `b`.
pub fn directed_hausdorff<T: Real, P: AsRef<[T]>>(a: &[P], b: &[P]) -> Result<T> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = a[0].as_ref().len();
    let mut best = T::zero();
    for p in a {
        let p = p.as_ref();
        let mut nearest = T::infinity();
        for q in b {
            let q = q.as_ref();
            if p.len() != dim || q.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len().max(q.len()) });
            }
            nearest = nearest.min(Metric::Euclidean.distance(p, q));
        }
        best = best.max(nearest);
    }
    Ok(best)
}

/// Euclidean Hausdorff distance between two finite point sets.
pub fn hausdorff_distance<T: Real, P: AsRef<[T]>>(a: &[P], b: &[P]) -> Result<T> {
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

/// Euclidean Hausdorff distance between the closed unions of two cell sets.
/// Resolutions may differ.
pub fn cellset_hausdorff<T: Real>(a: &CellSet, b: &CellSet) -> Result<T> {
    cellset_hausdorff_with(a, b, Metric::Euclidean)
}

pub fn cellset_hausdorff_with<T: Real>(a: &CellSet, b: &CellSet, metric: Metric) -> Result<T> {
    symmetric(&Boxes::from_cells(a), &Boxes::from_cells(b), metric)
}

/// Hausdorff distance between the closed union of `cells` and a finite point set.
pub fn cellset_point_hausdorff<T: Real, P: AsRef<[T]>>(cells: &CellSet, points: &[P], metric: Metric) -> Result<T> {
    symmetric(&Boxes::from_cells(cells), &Boxes::from_points(points)?, metric)
}
