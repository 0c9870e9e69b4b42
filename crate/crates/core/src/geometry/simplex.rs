//! Points on the positive L1 simplex and distance-proportional maps onto
//! the unit cube one dimension down.
//!
//! For `N = 2` the map is `z -> z1`, for `N = 3` it is the planar equilateral
//! layout `((z2 - z1 + 1) / 2, (√3/2) z3)`. Higher dimensions use an
//! orthonormal basis of the hyperplane `Σz = 1` (Gram–Schmidt on
//! `e1 - e2, e1 - e3, ...`), divided by √2 and shifted so every vertex image
//! has non-negative coordinates. In every dimension
//! `|x - y| = √2 · |T(x) - T(y)|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A point of the positive L1 unit simplex `C^N_+`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimplexPoint<T = f64> {
    coords: Vec<T>,
}

impl<T: Real> SimplexPoint<T> {
    /// Validates non-negativity and unit sum up to [`Real::SIMPLEX_TOL`].
    /// Negative rounding residue within tolerance is clamped to zero.
    pub fn new(mut coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::NotSimplex(format!(
                "need at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        let tol = T::tol();
        let mut sum = T::zero();
        for c in coords.iter_mut() {
            if !c.is_finite() || *c < -tol {
                return Err(Error::NotSimplex(format!("coordinate {c} is negative or non-finite")));
            }
            if *c < T::zero() {
                *c = T::zero();
            }
            sum = sum + *c;
        }
        if (sum - T::one()).abs() > tol {
            return Err(Error::NotSimplex(format!("coordinates sum to {sum}, not 1")));
        }
        Ok(Self { coords })
    }

    /// The `i`-th vertex (0-based) of the `n`-dimensional simplex.
    pub fn vertex(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::invalid(format!("vertex {i} out of range for N={n}")));
        }
        let mut coords = vec![T::zero(); n];
        coords[i] = T::one();
        Self::new(coords)
    }

    pub fn centroid(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("simplex dimension must be at least 2"));
        }
        Self::new(vec![T::one() / T::from_count(n); n])
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dims(&self) -> usize {
        self.coords.len()
    }

    pub fn into_inner(self) -> Vec<T> {
        self.coords
    }
}

/// A point of `[0, 1]^{N-1}`, the image side of a simplex mapping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MappedPoint<T = f64> {
    coords: Vec<T>,
}

impl<T: Real> MappedPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::OutsideUnitCube("empty coordinate vector".into()));
        }
        if let Some(c) = coords
            .iter()
            .find(|c| !(c.is_finite() && **c >= T::zero() && **c <= T::one()))
        {
            return Err(Error::OutsideUnitCube(format!("coordinate {c}")));
        }
        Ok(Self { coords })
    }

    /// Clamps every coordinate into `[0, 1]`; returns whether any coordinate
    /// was further than the simplex tolerance outside.
    pub fn clamped(mut coords: Vec<T>) -> (Self, bool) {
        let tol = T::tol();
        let mut drifted = false;
        for c in coords.iter_mut() {
            if *c < -tol || *c > T::one() + tol {
                drifted = true;
            }
            *c = c.max(T::zero()).min(T::one());
        }
        (Self { coords }, drifted)
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dims(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Debug, Clone)]
enum Layout<T> {
    Line,
    Triangle,
    Hyperplane { basis: Vec<Vec<T>>, offset: Vec<T> },
}

/// Bijective, distance-proportional map `C^N_+ -> [0, 1]^{N-1}`.
#[derive(Debug, Clone)]
pub struct SimplexMapping<T = f64> {
    n_dims: usize,
    layout: Layout<T>,
}

impl<T: Real> SimplexMapping<T> {
    pub fn new(n_dims: usize) -> Result<Self> {
        let layout = match n_dims {
            0 | 1 => return Err(Error::invalid(format!("simplex dimension must be at least 2, got {n_dims}"))),
            2 => Layout::Line,
            3 => Layout::Triangle,
            n => {
                let basis = hyperplane_basis::<T>(n);
                let sqrt2 = T::SQRT_2();
                // shift so the minimum over vertex images is zero on every axis
                let offset = basis
                    .iter()
                    .map(|b| -b.iter().fold(T::infinity(), |m, &v| m.min(v)) / sqrt2)
                    .collect();
                Layout::Hyperplane { basis, offset }
            }
        };
        Ok(Self { n_dims, layout })
    }

    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    /// The constant `a` with `d(x, y) = a · d(T(x), T(y))`; √2 in every dimension.
    pub fn scale(&self) -> T {
        T::SQRT_2()
    }

    /// Image coordinates before clamping into the unit cube.
    pub fn map_raw(&self, p: &SimplexPoint<T>) -> Result<Vec<T>> {
        if p.dims() != self.n_dims {
            return Err(Error::DimensionMismatch { expected: self.n_dims, got: p.dims() });
        }
        let z = p.coords();
        let half = T::lit(0.5);
        Ok(match &self.layout {
            Layout::Line => vec![z[0]],
            Layout::Triangle => vec![half * (z[1] - z[0] + T::one()), T::lit(3.0).sqrt() * half * z[2]],
            Layout::Hyperplane { basis, offset } => {
                let sqrt2 = T::SQRT_2();
                basis
                    .iter()
                    .zip(offset)
                    .map(|(b, &o)| dot(b, z) / sqrt2 + o)
                    .collect()
            }
        })
    }

    pub fn map(&self, p: &SimplexPoint<T>) -> Result<MappedPoint<T>> {
        Ok(MappedPoint::clamped(self.map_raw(p)?).0)
    }

    pub fn unmap(&self, u: &MappedPoint<T>) -> Result<SimplexPoint<T>> {
        let expected = self.n_dims - 1;
        if u.dims() != expected {
            return Err(Error::DimensionMismatch { expected, got: u.dims() });
        }
        let u = u.coords();
        let coords = match &self.layout {
            Layout::Line => vec![u[0], T::one() - u[0]],
            Layout::Triangle => {
                let s3 = T::lit(3.0).sqrt();
                vec![
                    T::one() - u[0] - u[1] / s3,
                    u[0] - u[1] / s3,
                    T::lit(2.0) * u[1] / s3,
                ]
            }
            Layout::Hyperplane { basis, offset } => {
                let sqrt2 = T::SQRT_2();
                let mut z = vec![T::one() / T::from_count(self.n_dims); self.n_dims];
                for ((b, &o), &ui) in basis.iter().zip(offset).zip(u) {
                    let w = sqrt2 * (ui - o);
                    for (zi, &bi) in z.iter_mut().zip(b) {
                        *zi = *zi + w * bi;
                    }
                }
                z
            }
        };
        if coords.iter().any(|&c| c < -T::tol()) {
            return Err(Error::OutsideSimplexImage);
        }
        SimplexPoint::new(coords).map_err(|_| Error::OutsideSimplexImage)
    }

    /// Whether `u` lies in `T(C^N_+)`.
    pub fn in_image(&self, u: &MappedPoint<T>) -> bool {
        self.unmap(u).is_ok()
    }
}

/// Orthonormal basis of `{x : Σx = 0}` from Gram–Schmidt on `e1 - e_{j+1}`.
fn hyperplane_basis<T: Real>(n: usize) -> Vec<Vec<T>> {
    let mut basis: Vec<Vec<T>> = Vec::with_capacity(n - 1);
    for j in 1..n {
        let mut v = vec![T::zero(); n];
        v[0] = T::one();
        v[j] = -T::one();
        for b in &basis {
            let proj = dot(&v, b);
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = *vi - proj * bi;
            }
        }
        let norm = dot(&v, &v).sqrt();
        v.iter_mut().for_each(|x| *x = *x / norm);
        basis.push(v);
    }
    basis
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn simplex_map<T: Real>(p: &SimplexPoint<T>, n_dims: usize) -> Result<MappedPoint<T>> {
    SimplexMapping::new(n_dims)?.map(p)
}

pub fn simplex_unmap<T: Real>(u: &MappedPoint<T>, n_dims: usize) -> Result<SimplexPoint<T>> {
    SimplexMapping::new(n_dims)?.unmap(u)
}
