//! End-to-end estimate and test runs shared by the command line and the HTTP service.

use serde::{Deserialize, Serialize};

use crate::angular::{estimate_support, reflect_quadrant, threshold_top_k, SupportEstimate};
use crate::error::{Error, Result};
use crate::independence::{
    build_g, estimate_interval_masses, midpoints, reduce_to_pair, split_transform, test_statistic, TestResult,
};
use crate::json::AngularReport;
use crate::pipeline::split_sample;
use crate::rng::derive_seed;
use crate::sample::Sample;
use crate::scalar::Real;

fn default_fraction() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateParams {
    pub k: usize,
    pub m: usize,
    #[serde(default)]
    pub q: f64,
    #[serde(default)]
    pub signs: Option<Vec<i8>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestParams {
    pub intervals: Vec<[f64; 2]>,
    /// Estimated from the estimation split when absent.
    #[serde(default)]
    pub masses: Option<Vec<f64>>,
    pub k: usize,
    #[serde(default = "default_fraction")]
    pub split_fraction: f64,
    pub seed: u64,
    #[serde(default)]
    pub split_transform: bool,
    #[serde(default)]
    pub signs: Option<Vec<i8>>,
    /// Column groups to reduce to a pair; required when the sample has more than two columns.
    #[serde(default)]
    pub groups: Option<[Vec<usize>; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    #[serde(flatten)]
    pub result: TestResult,
    pub n_estimate: usize,
    pub n_test: usize,
    pub masses_estimated: bool,
    /// Estimation-split top-k projections outside every interval (only when masses are estimated).
    pub outside: Option<usize>,
}

fn reflect<T: Real>(s: &Sample<T>, signs: Option<&[i8]>) -> Result<(Sample<T>, Vec<i8>)> {
    match signs {
        None => Ok((s.clone(), vec![1; s.dims()])),
        Some(signs) => {
            let r = reflect_quadrant(s, signs)?;
            if r.sample.n() == 0 {
                return Err(Error::invalid("no observation lies in the requested quadrant"));
            }
            Ok((r.sample, signs.to_vec()))
        }
    }
}

/// Reflect into the requested quadrant, keep the top `k`, and estimate the support.
pub fn run_estimate<T: Real>(s: &Sample<T>, p: &EstimateParams) -> Result<SupportEstimate<T>> {
    let (s, signs) = reflect(s, p.signs.as_deref())?;
    let cloud = threshold_top_k(&s, p.k)?;
    estimate_support(&cloud, p.m, T::lit(p.q))?.with_signs(signs)
}

pub fn run_angular<T: Real>(s: &Sample<T>, k: usize, signs: Option<&[i8]>) -> Result<AngularReport> {
    let (s, signs) = reflect(s, signs)?;
    AngularReport::new(&threshold_top_k(&s, k)?, signs)
}

/// Split, optionally split-transform, and test the top `k` of the test split.
pub fn run_test<T: Real>(s: &Sample<T>, p: &TestParams) -> Result<TestReport> {
    let (s, _) = reflect(s, p.signs.as_deref())?;
    let pair = match (&p.groups, s.dims()) {
        (Some([a, b]), _) => reduce_to_pair(&s, &midpoints::<T>(s.dims(), a, b)?)?,
        (None, 2) => s,
        (None, n) => return Err(Error::invalid(format!("{n} columns: groups are required to reduce to a pair"))),
    };
    let plan = split_sample(pair.n(), p.split_fraction, p.seed)?;
    let (mut est, mut test) = plan.apply(&pair)?;
    if p.split_transform {
        test = split_transform(&test, derive_seed(p.seed, 1))?.sample;
        est = split_transform(&est, derive_seed(p.seed, 2))?.sample;
    }
    let intervals: Vec<(T, T)> = p.intervals.iter().map(|&[a, b]| (T::lit(a), T::lit(b))).collect();
    let g = build_g(&intervals)?;
    let (masses, outside) = match &p.masses {
        Some(m) => (m.iter().map(|&v| T::lit(v)).collect::<Vec<T>>(), None),
        None => {
            let k_est = p.k.min(est.n().saturating_sub(1));
            let cloud = threshold_top_k(&est, k_est)?;
            let e = estimate_interval_masses(&cloud.first_coordinates(), &g)?;
            (e.masses, Some(e.outside))
        }
    };
    let cloud = threshold_top_k(&test, p.k)?;
    let mut result = test_statistic(&cloud.first_coordinates(), &g, &masses)?;
    result.seed = Some(p.seed);
    Ok(TestReport {
        result,
        n_estimate: est.n(),
        n_test: test.n(),
        masses_estimated: p.masses.is_none(),
        outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulation::simulate_face_independent;

    fn params() -> TestParams {
        TestParams {
            intervals: vec![[0.0, 0.0], [1.0, 1.0]],
            masses: Some(vec![0.5, 0.5]),
            k: 100,
            split_fraction: 0.5,
            seed: 3,
            split_transform: false,
            signs: None,
            groups: None,
        }
    }

    #[test]
    fn test_run_is_deterministic() {
        let s = simulate_face_independent(2_000, (0.5, 0.5), 2.0, 1).unwrap();
        let a = run_test(&s, &params()).unwrap();
        assert_eq!(a, run_test(&s, &params()).unwrap());
        assert_eq!((a.n_estimate, a.n_test), (1000, 1000));
        assert_eq!(a.result.seed, Some(3));
        // lattice statistic (X - 50) / 5
        let x = a.result.t_hat * 5.0 + 50.0;
        assert!((x - x.round()).abs() < 1e-9);
    }

    #[test]
    fn estimated_masses() {
        let s = simulate_face_independent(2_000, (0.5, 0.5), 2.0, 1).unwrap();
        let r = run_test(&s, &TestParams { masses: None, ..params() }).unwrap();
        assert!(r.masses_estimated);
        assert_eq!(r.outside, Some(0));
        assert!((r.result.masses[0] - 0.5).abs() < 0.2);
    }

    #[test]
    fn wide_samples_need_groups() {
        let rows: Vec<Vec<f64>> = (1..200).map(|i| vec![i as f64, 1.0, (i % 5) as f64 + 1.0]).collect();
        let s = Sample::from_rows(rows).unwrap();
        assert!(run_test(&s, &params()).is_err());
        let grouped = TestParams { groups: Some([vec![0], vec![1, 2]]), k: 20, ..params() };
        assert!(run_test(&s, &grouped).is_ok());
    }

    #[test]
    fn invalid_masses_are_rejected() {
        let s = simulate_face_independent(500, (0.5, 0.5), 2.0, 1).unwrap();
        let bad = TestParams { masses: Some(vec![0.5, 0.6]), k: 50, ..params() };
        assert!(matches!(run_test(&s, &bad), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn estimate_records_signs() {
        let rows: Vec<Vec<f64>> = (1..100).map(|i| vec![-(i as f64), (i % 3) as f64 + 1.0]).collect();
        let s = Sample::from_rows(rows).unwrap();
        let p = EstimateParams { k: 10, m: 4, q: 0.0, signs: Some(vec![-1, 1]) };
        let e = run_estimate(&s, &p).unwrap();
        assert_eq!(e.signs(), &[-1, 1]);
        assert!(run_estimate(&s, &EstimateParams { signs: None, ..p }).is_err());
    }
}
