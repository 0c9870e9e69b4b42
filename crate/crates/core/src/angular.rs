//! Polar decomposition, top-k thresholding, the empirical angular measure
//! and the grid-based support estimator.
//!
//! The empirical angular measure puts mass `1/k` on the angle of each of
//! the `k` observations with the largest L1 norm. After mapping the angles
//! into `[0, 1]^{N-1}` and binning on a resolution-`m` grid, the support
//! estimate is the set of cells whose mass strictly exceeds `q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CellSet, GridSpec, MappedPoint, SimplexMapping, SimplexPoint};
use crate::sample::Sample;
use crate::scalar::{l1_norm, Real};

/// Splits a non-negative, non-zero vector into its L1 radius and angle.
pub fn polar_decompose<T: Real>(z: &[T]) -> Result<(T, SimplexPoint<T>)> {
    if z.iter().any(|&v| v < T::zero() || !v.is_finite()) {
        return Err(Error::invalid(
            "polar decomposition needs non-negative finite components; reflect into a quadrant first",
        ));
    }
    let radius = l1_norm(z);
    if radius <= T::zero() {
        return Err(Error::DegenerateObservation);
    }
    let angle = z.iter().map(|&v| v / radius).collect();
    Ok((radius, SimplexPoint::new(angle)?))
}

/// The `k` most extreme observations in L1 norm, decomposed into angle and radius.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularCloud<T = f64> {
    points: Vec<SimplexPoint<T>>,
    radii: Vec<T>,
    source_indices: Vec<usize>,
    threshold_radius: T,
    n_source: usize,
    promoted: usize,
}

impl<T: Real> AngularCloud<T> {
    pub fn points(&self) -> &[SimplexPoint<T>] {
        &self.points
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    /// Row indices into the source sample, most extreme first.
    pub fn source_indices(&self) -> &[usize] {
        &self.source_indices
    }

    /// The `(k+1)`-th largest norm.
    pub fn threshold_radius(&self) -> T {
        self.threshold_radius
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn n_source(&self) -> usize {
        self.n_source
    }

    pub fn dims(&self) -> usize {
        self.points.first().map(SimplexPoint::dims).unwrap_or(0)
    }

    /// Observations whose norm ties the threshold and were kept to reach exactly `k`.
    pub fn promoted(&self) -> usize {
        self.promoted
    }

    pub fn has_ties(&self) -> bool {
        self.promoted > 0
    }

    /// First angular coordinate of every retained point.
    pub fn first_coordinates(&self) -> Vec<T> {
        self.points.iter().map(|p| p.coords()[0]).collect()
    }
}

/// Orders by norm descending, then by original index ascending.
fn extreme_first<T: Real>(a: &(T, usize), b: &(T, usize)) -> Ordering {
    b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal).then(a.1.cmp(&b.1))
}

/// Keeps the observations whose L1 norm exceeds the `(k+1)`-th largest norm.
///
/// When ties at the threshold would leave fewer than `k` observations, tied
/// rows are promoted in ascending row order until exactly `k` are kept.
pub fn threshold_top_k<T: Real>(s: &Sample<T>, k: usize) -> Result<AngularCloud<T>> {
    let n = s.n();
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k >= n {
        return Err(Error::invalid(format!("k must be smaller than sample size (k={k}, n={n})")));
    }
    let mut order: Vec<(T, usize)> = s.l1_norms().into_iter().zip(0..).collect();
    order.select_nth_unstable_by(k, extreme_first);
    let threshold = order[k].0;
    if threshold <= T::zero() {
        return Err(Error::DegenerateObservation);
    }
    let top = &mut order[..k];
    top.sort_unstable_by(extreme_first);

    let mut points = Vec::with_capacity(k);
    let mut radii = Vec::with_capacity(k);
    let mut source_indices = Vec::with_capacity(k);
    let mut promoted = 0;
    for &(norm, idx) in top.iter() {
        if norm == threshold {
            promoted += 1;
        }
        let (r, angle) = polar_decompose(s.row(idx))?;
        points.push(angle);
        radii.push(r);
        source_indices.push(idx);
    }
    Ok(AngularCloud { points, radii, source_indices, threshold_radius: threshold, n_source: n, promoted })
}

/// An exact rational mass `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mass {
    pub num: u64,
    pub den: u64,
}

impl Mass {
    pub fn value<T: Real>(self) -> T {
        T::from_u64(self.num).unwrap() / T::from_u64(self.den).unwrap()
    }

    /// `num > q * den`, evaluated in `T`. Decimal thresholds behave as
    /// written (`3/5` does not exceed `0.6`) and `q * den < 1` accepts every
    /// non-zero mass.
    pub fn exceeds<T: Real>(self, q: T) -> bool {
        T::from_u64(self.num).unwrap() > q * T::from_u64(self.den).unwrap()
    }
}

/// Per-cell counts of mapped angles; each point carries mass `1/k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMeasure {
    grid: GridSpec,
    counts: BTreeMap<Vec<u32>, u64>,
    total: u64,
    drifted: usize,
}

impl EmpiricalMeasure {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Points that landed more than the simplex tolerance outside the unit
    /// cube and were clamped back in.
    pub fn drifted(&self) -> usize {
        self.drifted
    }

    pub fn mass(&self, index: &[u32]) -> Mass {
        Mass { num: self.counts.get(index).copied().unwrap_or(0), den: self.total }
    }

    /// Occupied cells and their masses in lattice order.
    pub fn masses(&self) -> impl Iterator<Item = (&Vec<u32>, Mass)> + '_ {
        self.counts.iter().map(|(i, &c)| (i, Mass { num: c, den: self.total }))
    }

    pub fn occupied(&self) -> CellSet {
        CellSet::from_indices(self.grid, self.counts.keys().cloned()).expect("indices come from the grid")
    }

    /// Cells whose mass is strictly greater than `q`.
    pub fn cells_above<T: Real>(&self, q: T) -> BTreeMap<Vec<u32>, Mass> {
        self.masses()
            .filter(|(_, mass)| mass.exceeds(q))
            .map(|(i, mass)| (i.clone(), mass))
            .collect()
    }
}

pub fn mapped_points<T: Real>(cloud: &AngularCloud<T>) -> Result<(Vec<MappedPoint<T>>, usize)> {
    let mapping = SimplexMapping::new(cloud.dims())?;
    let mut drifted = 0;
    let mut out = Vec::with_capacity(cloud.k());
    for p in cloud.points() {
        let (u, d) = MappedPoint::clamped(mapping.map_raw(p)?);
        drifted += d as usize;
        out.push(u);
    }
    Ok((out, drifted))
}

pub fn empirical_angular_measure<T: Real>(cloud: &AngularCloud<T>, grid: &GridSpec) -> Result<EmpiricalMeasure> {
    if cloud.k() == 0 {
        return Err(Error::EmptySet);
    }
    if grid.dim() + 1 != cloud.dims() {
        return Err(Error::DimensionMismatch { expected: cloud.dims() - 1, got: grid.dim() });
    }
    let (mapped, drifted) = mapped_points(cloud)?;
    let mut counts = BTreeMap::new();
    for u in &mapped {
        *counts.entry(grid.index_of(u.coords())?).or_insert(0u64) += 1;
    }
    Ok(EmpiricalMeasure { grid: *grid, counts, total: cloud.k() as u64, drifted })
}

/// The accepted cells of the grid-based support estimator with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportEstimate<T = f64> {
    cells: CellSet,
    masses: BTreeMap<Vec<u32>, Mass>,
    rejected: u64,
    n: usize,
    k: usize,
    q: T,
    dims: usize,
    signs: Vec<i8>,
    drifted: usize,
}

impl<T: Real> SupportEstimate<T> {
    /// Applies the rejection threshold to an already binned measure.
    pub fn from_measure(measure: &EmpiricalMeasure, n: usize, q: T) -> Result<Self> {
        check_threshold(q)?;
        let masses = measure.cells_above(q);
        let accepted: u64 = masses.values().map(|m| m.num).sum();
        let cells = CellSet::from_indices(*measure.grid(), masses.keys().cloned())?;
        let dims = measure.grid().dim() + 1;
        Ok(Self {
            cells,
            masses,
            rejected: measure.total() - accepted,
            n,
            k: measure.total() as usize,
            q,
            dims,
            signs: vec![1; dims],
            drifted: measure.drifted(),
        })
    }

    /// Records the quadrant the data were reflected into.
    pub fn with_signs(mut self, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != self.dims {
            return Err(Error::DimensionMismatch { expected: self.dims, got: signs.len() });
        }
        self.signs = signs;
        Ok(self)
    }

    pub fn cells(&self) -> &CellSet {
        &self.cells
    }

    pub fn masses(&self) -> &BTreeMap<Vec<u32>, Mass> {
        &self.masses
    }

    /// Count of retained points falling in rejected cells.
    pub fn rejected_count(&self) -> u64 {
        self.rejected
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.cells.grid().m()
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn drifted(&self) -> usize {
        self.drifted
    }
}

fn check_threshold<T: Real>(q: T) -> Result<()> {
    if !(q >= T::zero() && q < T::one()) {
        return Err(Error::InvalidThreshold(q.as_f64()));
    }
    Ok(())
}

/// Accepts every cell with empirical angular mass strictly greater than `q`.
pub fn estimate_support<T: Real>(cloud: &AngularCloud<T>, m: usize, q: T) -> Result<SupportEstimate<T>> {
    check_threshold(q)?;
    if cloud.k() == 0 {
        return Err(Error::EmptySet);
    }
    let grid = GridSpec::new(m, cloud.dims() - 1)?;
    let measure = empirical_angular_measure(cloud, &grid)?;
    SupportEstimate::from_measure(&measure, cloud.n_source(), q)
}

/// Result of restricting a sample to one orthant.
#[derive(Debug, Clone, PartialEq)]
pub struct Reflected<T = f64> {
    pub sample: Sample<T>,
    pub dropped: usize,
}

/// Multiplies every row by `signs` and drops rows left with a negative component.
pub fn reflect_quadrant<T: Real>(s: &Sample<T>, signs: &[i8]) -> Result<Reflected<T>> {
    if signs.len() != s.dims() {
        return Err(Error::DimensionMismatch { expected: s.dims(), got: signs.len() });
    }
    if signs.iter().any(|&v| v != 1 && v != -1) {
        return Err(Error::invalid("quadrant signs must be +1 or -1"));
    }
    let mut rows = Vec::with_capacity(s.n());
    let mut dropped = 0;
    for r in s.rows() {
        let flipped: Vec<T> = r
            .iter()
            .zip(signs)
            .map(|(&v, &sg)| if sg < 0 { -v } else { v })
            .collect();
        if flipped.iter().any(|&v| v < T::zero()) {
            dropped += 1;
        } else {
            rows.push(flipped);
        }
    }
    Ok(Reflected { sample: Sample::with_rows(rows, s.column_names().to_vec())?, dropped })
}
