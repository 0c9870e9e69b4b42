use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use crate::sample::Sample;
use crate::scalar::{l1_norm, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct SplitTransformed<T = f64> {
    pub sample: Sample<T>,
    /// Row removed to make the sample size even, if any.
    pub dropped_row: Option<usize>,
    pub seed: u64,
}

/// Replaces an angular measure on `[a, b]` with two half-size copies on
/// `[a/2, b/2]` and `[(a+1)/2, (b+1)/2]`.
///
/// Odd positions (1-based) map `(x, y) -> (x/2, x/2 + y)`, even positions
/// `(x, y) -> (x + y/2, y/2)`; rows are then shuffled with `seed`. If `n`
/// is odd the row with the smallest L1 norm is dropped first.
pub fn split_transform<T: Real>(s: &Sample<T>, seed: u64) -> Result<SplitTransformed<T>> {
    if s.dims() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: s.dims() });
    }
    let mut rows: Vec<Vec<T>> = s.rows().to_vec();
    let mut dropped_row = None;
    if rows.len() % 2 == 1 {
        let smallest = rows
            .iter()
            .enumerate()
            .min_by(|(i, a), (j, b)| {
                l1_norm(a)
                    .partial_cmp(&l1_norm(b))
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(i.cmp(j))
            })
            .map(|(i, _)| i)
            .expect("odd length is non-empty");
        rows.remove(smallest);
        dropped_row = Some(smallest);
    }
    let half = T::lit(0.5);
    for (pos, r) in rows.iter_mut().enumerate() {
        let (x, y) = (r[0], r[1]);
        // pos is 0-based, so even pos is an odd 1-based position
        *r = if pos % 2 == 0 { vec![x * half, x * half + y] } else { vec![x + y * half, y * half] };
    }
    rows.shuffle(&mut rng_from_seed(seed));
    Ok(SplitTransformed { sample: Sample::with_rows(rows, s.column_names().to_vec())?, dropped_row, seed })
}
