//! Ingestion and pre-processing: CSV I/O, log-returns, rank transform,
//! Hill tail-index diagnostics and estimate/test splits.

use std::io::{Read, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use crate::sample::Sample;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct Ingested<T = f64> {
    pub sample: Sample<T>,
    /// Rows skipped because a field was empty or missing.
    pub dropped_rows: usize,
}

/// Reads a headed numeric CSV. Rows with an empty field are skipped and counted.
pub fn ingest_csv<T: Real, R: Read>(reader: R) -> Result<Ingested<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let names: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if names.len() < 2 {
        return Err(Error::invalid(format!("input needs at least 2 columns, got {}", names.len())));
    }
    let mut rows = Vec::new();
    let mut dropped_rows = 0;
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let row = i + 1;
        if record.len() > names.len() {
            return Err(Error::Parse { row, msg: format!("{} fields, header has {}", record.len(), names.len()) });
        }
        if record.len() < names.len() || record.iter().any(str::is_empty) {
            dropped_rows += 1;
            continue;
        }
        let values = record
            .iter()
            .map(|f| match f.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(T::lit(v)),
                _ => Err(Error::Parse { row, msg: format!("not a finite number: {f:?}") }),
            })
            .collect::<Result<Vec<T>>>()?;
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(Error::invalid("input has no complete rows"));
    }
    Ok(Ingested { sample: Sample::new(rows, names)?, dropped_rows })
}

pub fn ingest_csv_path<T: Real>(path: impl AsRef<Path>) -> Result<Ingested<T>> {
    ingest_csv(std::fs::File::open(path)?)
}

pub fn write_csv<T: Real, W: Write>(s: &Sample<T>, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(s.column_names())?;
    for r in s.rows() {
        w.write_record(r.iter().map(|v| v.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// `log(row[t+1]) - log(row[t])` per column.
pub fn log_returns<T: Real>(s: &Sample<T>) -> Result<Sample<T>> {
    if s.n() < 2 {
        return Err(Error::invalid("log returns need at least 2 rows"));
    }
    if let Some((i, _)) = s.rows().iter().enumerate().find(|(_, r)| r.iter().any(|&v| v <= T::zero())) {
        return Err(Error::Parse { row: i + 1, msg: "log returns need strictly positive prices".into() });
    }
    let rows = s
        .rows()
        .windows(2)
        .map(|w| w[1].iter().zip(&w[0]).map(|(&b, &a)| b.ln() - a.ln()).collect())
        .collect();
    Sample::new(rows, s.column_names().to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankBasis {
    /// Rank the values as given; the largest value gets rank 1.
    #[default]
    Signed,
    /// Rank by absolute value.
    Absolute,
}

/// Replaces each entry by `n / r`, `r` its descending rank within the column.
/// Ties go to the lower row index first.
pub fn rank_transform<T: Real>(s: &Sample<T>, basis: RankBasis) -> Result<Sample<T>> {
    let n = s.n();
    let total = T::from_count(n);
    let mut rows = vec![vec![T::zero(); s.dims()]; n];
    for j in 0..s.dims() {
        let mut col: Vec<(T, usize)> = s
            .column(j)
            .into_iter()
            .map(|v| if basis == RankBasis::Absolute { v.abs() } else { v })
            .zip(0..)
            .collect();
        col.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite sample").then(a.1.cmp(&b.1)));
        for (rank, &(_, i)) in col.iter().enumerate() {
            rows[i][j] = total / T::from_count(rank + 1);
        }
    }
    Sample::new(rows, s.column_names().to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailSide {
    #[default]
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HillEstimate {
    pub alpha_hat: f64,
    pub k_hill: usize,
    pub side: TailSide,
}

/// Hill estimator of the tail index from the `k_hill` largest observations of one tail.
pub fn hill_estimate<T: Real>(column: &[T], k_hill: usize, side: TailSide) -> Result<HillEstimate> {
    let mut tail: Vec<T> = column
        .iter()
        .map(|&v| if side == TailSide::Negative { -v } else { v })
        .filter(|&v| v > T::zero())
        .collect();
    if k_hill == 0 {
        return Err(Error::invalid("k_hill must be at least 1"));
    }
    if k_hill >= tail.len() {
        return Err(Error::DegenerateTail(format!(
            "k_hill={k_hill} needs more than {} positive observations on this side",
            tail.len()
        )));
    }
    tail.select_nth_unstable_by(k_hill, |a, b| b.partial_cmp(a).expect("finite sample"));
    let base = tail[k_hill].ln();
    let mean_log: T = tail[..k_hill].iter().map(|&x| x.ln() - base).sum::<T>() / T::from_count(k_hill);
    if !(mean_log > T::zero()) {
        return Err(Error::DegenerateTail("top order statistics are all equal".into()));
    }
    Ok(HillEstimate { alpha_hat: (T::one() / mean_log).as_f64(), k_hill, side })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnTail {
    pub column: String,
    #[serde(flatten)]
    pub estimate: HillEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailIndexReport {
    pub columns: Vec<ColumnTail>,
    /// Largest over smallest `alpha_hat`.
    pub spread: f64,
    pub warn_ratio: f64,
    pub warning: Option<String>,
}

pub const DEFAULT_WARN_RATIO: f64 = 1.5;

/// Hill estimates for every column, with a warning when they disagree by more than `warn_ratio`.
pub fn tail_index_report<T: Real>(s: &Sample<T>, k_hill: usize, side: TailSide, warn_ratio: f64) -> Result<TailIndexReport> {
    let columns = (0..s.dims())
        .map(|j| {
            Ok(ColumnTail { column: s.column_names()[j].clone(), estimate: hill_estimate(&s.column(j), k_hill, side)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let alphas = columns.iter().map(|c| c.estimate.alpha_hat);
    let max = alphas.clone().fold(f64::MIN, f64::max);
    let min = alphas.fold(f64::MAX, f64::min);
    let spread = max / min;
    let warning = (spread > warn_ratio).then(|| {
        format!("tail indices differ by a factor of {spread:.3} (> {warn_ratio}); consider the rank transform")
    });
    Ok(TailIndexReport { columns, spread, warn_ratio, warning })
}

/// A seeded split of row indices into an estimation part and a test part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub estimate_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
    pub seed: u64,
}

impl SplitPlan {
    pub fn apply<T: Real>(&self, s: &Sample<T>) -> Result<(Sample<T>, Sample<T>)> {
        Ok((s.select_rows(&self.estimate_indices)?, s.select_rows(&self.test_indices)?))
    }
}

/// Samples `⌊fraction·n⌋` rows without replacement for estimation; the rest are for testing.
pub fn split_sample(n: usize, fraction: f64, seed: u64) -> Result<SplitPlan> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::invalid(format!("split fraction must lie in (0, 1), got {fraction}")));
    }
    let n_est = (fraction * n as f64).floor() as usize;
    if n_est == 0 || n_est == n {
        return Err(Error::invalid(format!("split of {n} rows at fraction {fraction} leaves one side empty")));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng_from_seed(seed));
    let mut estimate_indices = perm[..n_est].to_vec();
    let mut test_indices = perm[n_est..].to_vec();
    estimate_indices.sort_unstable();
    test_indices.sort_unstable();
    Ok(SplitPlan { estimate_indices, test_indices, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::E;

    fn ingest(text: &str) -> Result<Ingested<f64>> {
        ingest_csv(text.as_bytes())
    }

    #[test]
    fn ingest_single_row() {
        let got = ingest("a,b,c\n1,2,3\n").unwrap();
        assert_eq!(got.sample.rows(), &[vec![1.0, 2.0, 3.0]]);
        assert_eq!(got.sample.column_names(), &["a", "b", "c"]);
        assert_eq!(got.dropped_rows, 0);
    }

    #[test]
    fn ingest_drops_incomplete_rows() {
        let got = ingest("a,b,c\n1,,3\n4,5,6\n7,8\n").unwrap();
        assert_eq!(got.sample.n(), 1);
        assert_eq!(got.dropped_rows, 2);
    }

    #[test]
    fn ingest_reports_row_of_bad_cell() {
        match ingest("a,b\n1,2\n3,x\n") {
            Err(Error::Parse { row, .. }) => assert_eq!(row, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(ingest("a\n1\n").is_err());
    }

    #[test]
    fn csv_round_trip() {
        let s = Sample::new(vec![vec![0.1, 1e-300], vec![-2.5, 3.0]], vec!["p".into(), "q".into()]).unwrap();
        let mut buf = Vec::new();
        write_csv(&s, &mut buf).unwrap();
        assert_eq!(ingest_csv::<f64, _>(&buf[..]).unwrap().sample, s);
    }

    #[test]
    fn log_returns_of_exponential_prices() {
        let s = Sample::from_rows(vec![vec![1.0, 5.0], vec![E, 5.0], vec![E * E, 5.0]]).unwrap();
        let r = log_returns(&s).unwrap();
        assert_eq!(r.n(), 2);
        for row in r.rows() {
            assert_abs_diff_eq!(row[0], 1.0, epsilon = 1e-15);
            assert_eq!(row[1], 0.0);
        }
        let bad = Sample::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(log_returns(&bad).is_err());
    }

    #[test]
    fn rank_examples() {
        let s = Sample::from_rows(vec![vec![10.0, 5.0], vec![30.0, 5.0], vec![20.0, 1.0]]).unwrap();
        let r = rank_transform(&s, RankBasis::Signed).unwrap();
        assert_eq!(r.column(0), vec![1.0, 3.0, 1.5]);
        assert_eq!(r.column(1), vec![3.0, 1.5, 1.0]);

        let s = Sample::from_rows(vec![vec![-9.0, 1.0], vec![2.0, 2.0]]).unwrap();
        assert_eq!(rank_transform(&s, RankBasis::Signed).unwrap().column(0), vec![1.0, 2.0]);
        assert_eq!(rank_transform(&s, RankBasis::Absolute).unwrap().column(0), vec![2.0, 1.0]);
    }

    #[test]
    fn hill_matches_direct_formula() {
        let col: Vec<f64> = (1..=6).map(|i| (i as f64).exp()).collect();
        // top 3 are e^6, e^5, e^4 over base e^3: logs 3, 2, 1
        let h = hill_estimate(&col, 3, TailSide::Positive).unwrap();
        assert_abs_diff_eq!(h.alpha_hat, 0.5, epsilon = 1e-14);
        let neg: Vec<f64> = col.iter().map(|v| -v).collect();
        assert_abs_diff_eq!(hill_estimate(&neg, 3, TailSide::Negative).unwrap().alpha_hat, 0.5, epsilon = 1e-14);
        assert!(matches!(hill_estimate(&col, 3, TailSide::Negative), Err(Error::DegenerateTail(_))));
    }

    #[test]
    fn hill_rejects_flat_tail() {
        assert!(matches!(hill_estimate(&[2.0; 10], 4, TailSide::Positive), Err(Error::DegenerateTail(_))));
    }

    #[test]
    fn split_sizes() {
        let p = split_sample(4, 0.5, 9).unwrap();
        assert_eq!(p.estimate_indices.len(), 2);
        let mut all = [p.estimate_indices.clone(), p.test_indices.clone()].concat();
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3]);
        let p = split_sample(3951, 0.5, 1).unwrap();
        assert_eq!((p.estimate_indices.len(), p.test_indices.len()), (1975, 1976));
        assert_eq!(split_sample(3951, 0.5, 1).unwrap(), p);
        assert!(split_sample(1, 0.5, 1).is_err());
        assert!(split_sample(10, 1.0, 1).is_err());
    }

    #[test]
    fn report_warns_on_spread() {
        let rows: Vec<Vec<f64>> = (1..=50).map(|i| vec![(i as f64).exp(), (i as f64 / 3.0).exp()]).collect();
        let r = tail_index_report(&Sample::from_rows(rows).unwrap(), 10, TailSide::Positive, DEFAULT_WARN_RATIO).unwrap();
        assert_abs_diff_eq!(r.spread, 3.0, epsilon = 1e-9);
        assert!(r.warning.is_some());
    }
}
