//! Resolution-`m` partition of `[0, 1]^{d}` into half-open cells
//! `[x, x + 1/m)` anchored on the lattice `{0, 1/m, ..., (m-1)/m}^d`.
//!
//! Cells are identified by integer lattice indices; the anchor coordinate is
//! `index / m`. A coordinate equal to 1 falls into the last cell.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::simplex::MappedPoint;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    m: u32,
    dim: usize,
}

impl GridSpec {
    pub fn new(m: usize, dim: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid(format!("grid resolution m must be at least 2, got {m}")));
        }
        if dim < 1 {
            return Err(Error::invalid("grid dimension must be at least 1"));
        }
        let m = u32::try_from(m).map_err(|_| Error::invalid("grid resolution too large"))?;
        Ok(Self { m, dim })
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total number of cells, `m^dim`.
    pub fn cell_count(&self) -> u128 {
        (self.m as u128).pow(self.dim as u32)
    }

    /// Lattice index of the cell holding `coords`, which must lie in `[0, 1]^dim`.
    pub fn index_of<T: Real>(&self, coords: &[T]) -> Result<Vec<u32>> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: coords.len() });
        }
        let m = T::from_count(self.m as usize);
        coords
            .iter()
            .map(|&c| {
                if !(c >= T::zero() && c <= T::one()) {
                    return Err(Error::OutsideUnitCube(format!("coordinate {c}")));
                }
                let i = (c * m).floor().to_u32().unwrap_or(0);
                Ok(i.min(self.m - 1))
            })
            .collect()
    }

    /// Every cell of the grid in lexicographic index order.
    pub fn all_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let total = self.cell_count() as usize;
        (0..total).map(move |mut flat| {
            let mut index = vec![0u32; self.dim];
            for slot in index.iter_mut().rev() {
                *slot = (flat % self.m as usize) as u32;
                flat /= self.m as usize;
            }
            Cell { index, m: self.m }
        })
    }
}

/// A grid cell `[index/m, (index+1)/m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    index: Vec<u32>,
    m: u32,
}

impl Cell {
    pub fn new(index: Vec<u32>, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid("grid resolution m must be at least 2"));
        }
        if index.is_empty() || index.iter().any(|&i| i as usize >= m) {
            return Err(Error::invalid(format!("cell index {index:?} outside lattice for m={m}")));
        }
        Ok(Self { index, m: m as u32 })
    }

    pub fn index(&self) -> &[u32] {
        &self.index
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn anchor<T: Real>(&self) -> Vec<T> {
        let m = T::from_count(self.m as usize);
        self.index.iter().map(|&i| T::from_count(i as usize) / m).collect()
    }

    /// Upper corner of the closed cell.
    pub fn upper<T: Real>(&self) -> Vec<T> {
        let m = T::from_count(self.m as usize);
        self.index.iter().map(|&i| T::from_count(i as usize + 1) / m).collect()
    }

    pub fn center<T: Real>(&self) -> Vec<T> {
        let m = T::from_count(self.m as usize);
        let half = T::lit(0.5);
        self.index.iter().map(|&i| (T::from_count(i as usize) + half) / m).collect()
    }

    /// Half-open membership test, except that a coordinate equal to 1 belongs
    /// to the last cell along that axis.
    pub fn contains<T: Real>(&self, u: &[T]) -> bool {
        let m = T::from_count(self.m as usize);
        u.len() == self.index.len()
            && self.index.iter().zip(u).all(|(&i, &c)| {
                let lo = T::from_count(i as usize) / m;
                let hi = T::from_count(i as usize + 1) / m;
                c >= lo && (c < hi || (i + 1 == self.m && c == T::one()))
            })
    }

    /// Euclidean distance from `u` (assumed inside the closed cell) to the cell boundary.
    pub fn distance_to_boundary<T: Real>(&self, u: &[T]) -> T {
        let lo = self.anchor::<T>();
        let hi = self.upper::<T>();
        u.iter()
            .zip(lo.iter().zip(&hi))
            .map(|(&c, (&l, &h))| (c - l).min(h - c).max(T::zero()))
            .fold(T::infinity(), |a, b| a.min(b))
    }
}

pub fn cell_of<T: Real>(u: &MappedPoint<T>, grid: &GridSpec) -> Result<Cell> {
    Ok(Cell { index: grid.index_of(u.coords())?, m: grid.m })
}

/// A finite set of cells on one grid; anchors stored as lattice indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSet {
    grid: GridSpec,
    members: BTreeSet<Vec<u32>>,
}

impl CellSet {
    pub fn new(grid: GridSpec) -> Self {
        Self { grid, members: BTreeSet::new() }
    }

    pub fn from_indices(grid: GridSpec, indices: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let mut set = Self::new(grid);
        for idx in indices {
            set.insert_index(idx)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, cell: Cell) -> Result<bool> {
        if cell.m != self.grid.m {
            return Err(Error::invalid(format!(
                "cell resolution {} differs from grid resolution {}",
                cell.m, self.grid.m
            )));
        }
        self.insert_index(cell.index)
    }

    fn insert_index(&mut self, idx: Vec<u32>) -> Result<bool> {
        if idx.len() != self.grid.dim {
            return Err(Error::DimensionMismatch { expected: self.grid.dim, got: idx.len() });
        }
        if idx.iter().any(|&i| i >= self.grid.m) {
            return Err(Error::invalid(format!("cell index {idx:?} outside lattice")));
        }
        Ok(self.members.insert(idx))
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_index(&self, idx: &[u32]) -> bool {
        self.members.contains(idx)
    }

    pub fn indices(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.members.iter()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.members.iter().map(|i| Cell { index: i.clone(), m: self.grid.m })
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.grid == other.grid && self.members.is_subset(&other.members)
    }

    /// `|A ∩ B| / |A ∪ B|` for two sets on the same grid; 1 when both are empty.
    pub fn jaccard(&self, other: &CellSet) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::invalid("Jaccard index needs cell sets on the same grid"));
        }
        let inter = self.members.intersection(&other.members).count();
        let union = self.members.union(&other.members).count();
        Ok(if union == 0 { 1.0 } else { inter as f64 / union as f64 })
    }
}

/// Cells `M(x, m)` that contain at least one of the points.
pub fn rasterize<T: Real>(points: &[MappedPoint<T>], grid: &GridSpec) -> Result<CellSet> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut set = CellSet::new(*grid);
    for p in points {
        set.members.insert(grid.index_of(p.coords())?);
    }
    Ok(set)
}

/// Cells whose every member point lies within `tol` of the cell boundary.
///
/// A non-empty result means the data touches those cells only on (or near)
/// their boundary, where rasterization is not continuous in the data.
pub fn boundary_hit_check<T: Real>(points: &[MappedPoint<T>], grid: &GridSpec, tol: T) -> Result<Vec<Cell>> {
    let mut all_near: BTreeMap<Vec<u32>, bool> = BTreeMap::new();
    for p in points {
        let idx = grid.index_of(p.coords())?;
        let cell = Cell { index: idx.clone(), m: grid.m };
        let near = cell.distance_to_boundary(p.coords()) <= tol;
        all_near
            .entry(idx)
            .and_modify(|flag| *flag &= near)
            .or_insert(near);
    }
    Ok(all_near
        .into_iter()
        .filter(|(_, flag)| *flag)
        .map(|(index, _)| Cell { index, m: grid.m })
        .collect())
}
