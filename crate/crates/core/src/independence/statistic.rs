//! The asymptotically normal statistic
//! `T = Σ (g(θ_i) - μ_g) / (√k σ_g)` over the angular first coordinates of
//! the `k` most extreme observations.

use serde::{Deserialize, Serialize};
use libm::erfc;

use super::gfunc::GFunction;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Mean and standard deviation of `g` under the assumed interval masses.
pub fn g_moments<T: Real>(g: &GFunction<T>, interval_masses: &[T]) -> Result<(T, T)> {
    if interval_masses.len() != g.m() {
        return Err(Error::invalid(format!(
            "{} interval masses given for {} intervals",
            interval_masses.len(),
            g.m()
        )));
    }
    if interval_masses.iter().any(|&p| !(p >= T::zero() && p.is_finite())) {
        return Err(Error::invalid("interval masses must be non-negative"));
    }
    let total: T = interval_masses.iter().copied().sum();
    if (total - T::one()).abs() > T::tol() {
        return Err(Error::invalid(format!("interval masses sum to {total}, not 1")));
    }
    let plateaus = g.plateaus();
    let mu: T = plateaus.iter().zip(interval_masses).map(|(&v, &p)| v * p).sum();
    let var: T = plateaus
        .iter()
        .zip(interval_masses)
        .map(|(&v, &p)| (v - mu) * (v - mu) * p)
        .sum();
    let sigma = var.sqrt();
    if !(sigma > T::tol()) {
        return Err(Error::DegenerateVariance);
    }
    Ok((mu, sigma))
}

/// `P(|Z| > |t|)` for standard normal `Z`, floored at the smallest positive double.
pub fn two_sided_tail(t: f64) -> f64 {
    erfc(t.abs() / std::f64::consts::SQRT_2).clamp(f64::MIN_POSITIVE, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub t_hat: f64,
    /// Two-sided normal tail probability at `|t_hat|`, reported as "P(T>|t|)".
    pub p_tail: f64,
    pub k: usize,
    pub mu_g: f64,
    pub sigma_g: f64,
    pub intervals: Vec<[f64; 2]>,
    pub masses: Vec<f64>,
    pub seed: Option<u64>,
}

impl TestResult {
    pub fn rejects_at(&self, level: f64) -> bool {
        self.p_tail < level
    }
}

pub fn test_statistic<T: Real>(projections: &[T], g: &GFunction<T>, interval_masses: &[T]) -> Result<TestResult> {
    let k = projections.len();
    if k == 0 {
        return Err(Error::invalid("test statistic needs at least one projection"));
    }
    let (mu, sigma) = g_moments(g, interval_masses)?;
    let sum: T = projections.iter().map(|&x| g.eval(x) - mu).sum();
    let t_hat = (sum / (T::from_count(k).sqrt() * sigma)).as_f64();
    Ok(TestResult {
        t_hat,
        p_tail: two_sided_tail(t_hat),
        k,
        mu_g: mu.as_f64(),
        sigma_g: sigma.as_f64(),
        intervals: g.intervals().iter().map(|&(a, b)| [a.as_f64(), b.as_f64()]).collect(),
        masses: interval_masses.iter().map(|p| p.as_f64()).collect(),
        seed: None,
    })
}

/// Interval masses estimated from projection frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalMassEstimate<T = f64> {
    /// Frequencies normalized over the points that fall inside some interval.
    pub masses: Vec<T>,
    pub counts: Vec<usize>,
    pub outside: usize,
}

pub fn estimate_interval_masses<T: Real>(projections: &[T], g: &GFunction<T>) -> Result<IntervalMassEstimate<T>> {
    let mut counts = vec![0usize; g.m()];
    let mut outside = 0;
    for &x in projections {
        match g.interval_of(x) {
            Some(i) => counts[i] += 1,
            None => outside += 1,
        }
    }
    let inside: usize = counts.iter().sum();
    if inside == 0 {
        return Err(Error::invalid("no projection falls inside any test interval"));
    }
    let masses = counts
        .iter()
        .map(|&c| T::from_count(c) / T::from_count(inside))
        .collect();
    Ok(IntervalMassEstimate { masses, counts, outside })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::independence::build_g;
    use approx::assert_abs_diff_eq;

    fn endpoints() -> GFunction<f64> {
        build_g(&[(0.0, 0.0), (1.0, 1.0)]).unwrap()
    }

    #[test]
    fn moments() {
        let (mu, sigma) = g_moments(&endpoints(), &[0.5, 0.5]).unwrap();
        assert_eq!(mu, 0.75);
        assert_eq!(sigma, 0.25);
        assert!(matches!(g_moments(&endpoints(), &[1.0, 0.0]), Err(Error::DegenerateVariance)));

        let g3 = build_g(&[(0.0, 0.1), (0.45, 0.55), (0.9, 1.0)]).unwrap();
        let third = 1.0 / 3.0;
        let (mu, sigma) = g_moments(&g3, &[third, third, third]).unwrap();
        assert_abs_diff_eq!(mu, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(sigma, (1.0f64 / 24.0).sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn mass_validation() {
        assert!(g_moments(&endpoints(), &[0.5, 0.6]).is_err());
        assert!(g_moments(&endpoints(), &[1.0]).is_err());
        assert!(g_moments(&endpoints(), &[1.5, -0.5]).is_err());
    }

    #[test]
    fn hand_evaluated_statistics() {
        let g = endpoints();
        let r = test_statistic(&[0.0, 0.0, 1.0, 1.0], &g, &[0.5, 0.5]).unwrap();
        assert_eq!(r.t_hat, 0.0);
        assert_eq!(r.p_tail, 1.0);
        let r = test_statistic(&[0.0, 0.0, 0.0, 0.0], &g, &[0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(r.t_hat, -2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.p_tail, 0.045500263896358, epsilon = 1e-12);
        assert!(r.rejects_at(0.05));
    }

    #[test]
    fn projections_at_the_mean_give_zero() {
        // g(0.875) = 3/4 = mu_g on the endpoint function
        let r = test_statistic(&[0.875; 7], &endpoints(), &[0.5, 0.5]).unwrap();
        assert_eq!(r.t_hat, 0.0);
        assert_eq!(r.p_tail, 1.0);
    }

    #[test]
    fn tail_accuracy() {
        // reference values of 2(1 - Φ(t))
        for (t, p) in [(1.0, 0.3173105078629141), (1.959963984540054, 0.05), (3.0, 0.002699796063260207)] {
            assert!((two_sided_tail(t) - p).abs() < 1e-12);
        }
        assert!(two_sided_tail(60.0) > 0.0);
    }

    #[test]
    fn mass_estimation() {
        let g = build_g(&[(0.0, 0.2), (0.8, 1.0)]).unwrap();
        let est = estimate_interval_masses(&[0.1, 0.15, 0.9, 0.5], &g).unwrap();
        assert_eq!(est.counts, vec![2, 1]);
        assert_eq!(est.outside, 1);
        assert_abs_diff_eq!(est.masses[0], 2.0 / 3.0);
        assert!(estimate_interval_masses(&[0.5], &g).is_err());
    }
}
