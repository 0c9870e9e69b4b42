//! Face midpoints, the projection onto their span, and the reduction of two
//! component groups to a single coordinate in `[0, 1]`.

use crate::error::{Error, Result};
use crate::geometry::SimplexPoint;
use crate::sample::Sample;
use crate::scalar::{l1_norm, Real};

/// Two disjoint component groups covering `{0, .., N-1}` and the midpoints
/// of their faces.
#[derive(Debug, Clone, PartialEq)]
pub struct FacePartition<T = f64> {
    n_dims: usize,
    group_a: Vec<usize>,
    group_b: Vec<usize>,
    midpoint_a: SimplexPoint<T>,
    midpoint_b: SimplexPoint<T>,
}

impl<T: Real> FacePartition<T> {
    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    pub fn group_a(&self) -> &[usize] {
        &self.group_a
    }

    pub fn group_b(&self) -> &[usize] {
        &self.group_b
    }

    pub fn midpoint_a(&self) -> &SimplexPoint<T> {
        &self.midpoint_a
    }

    pub fn midpoint_b(&self) -> &SimplexPoint<T> {
        &self.midpoint_b
    }

    fn in_a(&self, i: usize) -> bool {
        self.group_a.contains(&i)
    }
}

/// Builds the face midpoints for groups `a1`, `a2` (0-based indices).
pub fn midpoints<T: Real>(n_dims: usize, a1: &[usize], a2: &[usize]) -> Result<FacePartition<T>> {
    if n_dims < 2 {
        return Err(Error::invalid("need at least two components"));
    }
    if a1.is_empty() || a2.is_empty() {
        return Err(Error::invalid("both component groups must be non-empty"));
    }
    let mut seen = vec![0u8; n_dims];
    for &i in a1.iter().chain(a2) {
        if i >= n_dims {
            return Err(Error::invalid(format!("component index {i} out of range for N={n_dims}")));
        }
        seen[i] += 1;
    }
    if seen.iter().any(|&c| c > 1) {
        return Err(Error::invalid("component groups overlap or repeat an index"));
    }
    if seen.contains(&0) {
        return Err(Error::invalid("component groups must together cover every column"));
    }
    let mid = |g: &[usize]| {
        let w = T::one() / T::from_count(g.len());
        let coords = (0..n_dims).map(|i| if g.contains(&i) { w } else { T::zero() }).collect();
        SimplexPoint::new(coords)
    };
    let mut group_a = a1.to_vec();
    let mut group_b = a2.to_vec();
    group_a.sort_unstable();
    group_b.sort_unstable();
    Ok(FacePartition { n_dims, midpoint_a: mid(a1)?, midpoint_b: mid(a2)?, group_a, group_b })
}

/// Orthogonal projection onto `span(a1, a2)`: column `i` is `a1` when `i` is
/// in the first group, `a2` otherwise.
pub fn projection_matrix<T: Real>(fp: &FacePartition<T>) -> Vec<Vec<T>> {
    let (a, b) = (fp.midpoint_a.coords(), fp.midpoint_b.coords());
    (0..fp.n_dims)
        .map(|r| (0..fp.n_dims).map(|c| if fp.in_a(c) { a[r] } else { b[r] }).collect())
        .collect()
}

/// `x / ||x||_1`.
pub fn h1<T: Real>(x: &[T]) -> Result<Vec<T>> {
    let norm = l1_norm(x);
    if norm <= T::zero() {
        return Err(Error::DegenerateObservation);
    }
    Ok(x.iter().map(|&v| v / norm).collect())
}

/// `Q x`.
pub fn h2<T: Real>(x: &[T], fp: &FacePartition<T>) -> Result<Vec<T>> {
    if x.len() != fp.n_dims {
        return Err(Error::DimensionMismatch { expected: fp.n_dims, got: x.len() });
    }
    Ok(projection_matrix(fp)
        .iter()
        .map(|row| row.iter().zip(x).map(|(&q, &v)| q * v).sum())
        .collect())
}

/// Inverse of `t -> (1 - t) a1 + t a2` on the midpoint segment.
pub fn h3<T: Real>(p: &[T], fp: &FacePartition<T>) -> Result<T> {
    let (a, b) = (fp.midpoint_a.coords(), fp.midpoint_b.coords());
    let dir: Vec<T> = b.iter().zip(a).map(|(&y, &x)| y - x).collect();
    let rel: Vec<T> = p.iter().zip(a).map(|(&y, &x)| y - x).collect();
    let len2: T = dir.iter().map(|&d| d * d).sum();
    let t = rel.iter().zip(&dir).map(|(&r, &d)| r * d).sum::<T>() / len2;
    let off: T = rel
        .iter()
        .zip(&dir)
        .map(|(&r, &d)| (r - t * d) * (r - t * d))
        .sum::<T>()
        .sqrt();
    if off > T::lit(1e3) * T::tol() || t < -T::tol() || t > T::one() + T::tol() {
        return Err(Error::invalid("point is not on the midpoint segment"));
    }
    Ok(t.max(T::zero()).min(T::one()))
}

/// Position of `x` along the segment from `a1` to `a2`: the share of the L1
/// norm carried by the second group.
pub fn project_to_segment<T: Real>(x: &[T], fp: &FacePartition<T>) -> Result<T> {
    if x.len() != fp.n_dims {
        return Err(Error::DimensionMismatch { expected: fp.n_dims, got: x.len() });
    }
    if x.iter().any(|&v| v < T::zero()) {
        return Err(Error::invalid("projection needs a non-negative vector"));
    }
    let norm = l1_norm(x);
    if norm <= T::zero() {
        return Err(Error::DegenerateObservation);
    }
    Ok(fp.group_b.iter().map(|&i| x[i]).sum::<T>() / norm)
}

/// Collapses each row to `(Σ_{A1} z, Σ_{A2} z)`, preserving L1 norms.
pub fn reduce_to_pair<T: Real>(s: &Sample<T>, fp: &FacePartition<T>) -> Result<Sample<T>> {
    if s.dims() != fp.n_dims {
        return Err(Error::DimensionMismatch { expected: fp.n_dims, got: s.dims() });
    }
    let rows = s
        .rows()
        .iter()
        .map(|r| {
            vec![
                fp.group_a.iter().map(|&i| r[i]).sum(),
                fp.group_b.iter().map(|&i| r[i]).sum(),
            ]
        })
        .collect();
    let name = |g: &[usize]| g.iter().map(|&i| s.column_names()[i].as_str()).collect::<Vec<_>>().join("+");
    Sample::with_rows(rows, vec![name(&fp.group_a), name(&fp.group_b)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn five_dimensional_example() {
        let fp = midpoints::<f64>(5, &[0, 1, 3], &[2, 4]).unwrap();
        let third = 1.0 / 3.0;
        assert_eq!(fp.midpoint_a().coords(), &[third, third, 0.0, third, 0.0]);
        assert_eq!(fp.midpoint_b().coords(), &[0.0, 0.0, 0.5, 0.0, 0.5]);
        let t = project_to_segment(&[0.2, 0.2, 0.3, 0.2, 0.1], &fp).unwrap();
        assert_abs_diff_eq!(t, 0.4, epsilon = 1e-15);
    }

    #[test]
    fn small_partitions() {
        let fp = midpoints::<f64>(2, &[0], &[1]).unwrap();
        assert_eq!(fp.midpoint_a().coords(), &[1.0, 0.0]);
        assert_eq!(fp.midpoint_b().coords(), &[0.0, 1.0]);
        assert_eq!(projection_matrix(&fp), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let fp = midpoints::<f64>(3, &[0, 1], &[2]).unwrap();
        assert_eq!(fp.midpoint_a().coords(), &[0.5, 0.5, 0.0]);
        assert_eq!(fp.midpoint_b().coords(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn partition_errors() {
        assert!(midpoints::<f64>(3, &[0, 1], &[1, 2]).is_err());
        assert!(midpoints::<f64>(3, &[], &[0, 1, 2]).is_err());
        assert!(midpoints::<f64>(3, &[0], &[3]).is_err());
        assert!(midpoints::<f64>(3, &[0], &[2]).is_err());
    }

    #[test]
    fn face_endpoints() {
        let fp = midpoints::<f64>(4, &[0, 2], &[1, 3]).unwrap();
        assert_eq!(project_to_segment(&[1.0, 0.0, 2.0, 0.0], &fp).unwrap(), 0.0);
        assert_eq!(project_to_segment(&[0.0, 1.0, 0.0, 4.0], &fp).unwrap(), 1.0);
        assert!(matches!(project_to_segment(&[0.0; 4], &fp), Err(Error::DegenerateObservation)));
    }

    #[test]
    fn composition_matches_closed_form() {
        let fp = midpoints::<f64>(5, &[0, 1, 3], &[2, 4]).unwrap();
        let x = [0.7, 2.0, 0.1, 3.3, 1.9];
        let composed = h3(&h2(&h1(&x).unwrap(), &fp).unwrap(), &fp).unwrap();
        assert_abs_diff_eq!(composed, project_to_segment(&x, &fp).unwrap(), epsilon = 1e-12);
        assert!(h3(&[1.0, 0.0, 0.0, 0.0, 0.0], &fp).is_err());
    }

    #[test]
    fn reduce_example() {
        let fp = midpoints::<f64>(5, &[0, 1, 3], &[2, 4]).unwrap();
        let s = Sample::from_rows(vec![vec![1.0, 2.0, 3.0, 4.0, 5.0]]).unwrap();
        let r = reduce_to_pair(&s, &fp).unwrap();
        assert_eq!(r.rows(), &[vec![7.0, 8.0]]);
        assert_eq!(r.column_names(), &["x1+x2+x4", "x3+x5"]);
    }
}
