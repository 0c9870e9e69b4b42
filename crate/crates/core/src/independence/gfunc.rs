//! Piecewise-linear score functions with plateaus on hypothesized support
//! intervals and dips of depth 1/2 between them.
//!
//! For test intervals `[a_1, b_1] < ... < [a_m, b_m]` the plateau value on
//! interval `i` (1-based) is `1/2 + (i-1) / (2(m-1))`. Halfway between
//! consecutive intervals the function drops by 1/2 below the left plateau.
//! At 0 it is 0 unless the first interval starts at 0; at 1 it is 1/2 unless
//! the last interval ends at 1.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct GFunction<T = f64> {
    intervals: Vec<(T, T)>,
    knots: Vec<(T, T)>,
}

impl<T: Real> GFunction<T> {
    pub fn intervals(&self) -> &[(T, T)] {
        &self.intervals
    }

    /// Interpolation knots `(x, g(x))`, strictly increasing in `x`.
    pub fn knots(&self) -> &[(T, T)] {
        &self.knots
    }

    /// Number of test intervals.
    pub fn m(&self) -> usize {
        self.intervals.len()
    }

    /// Value of `g` on the `i`-th interval (0-based).
    pub fn plateau(&self, i: usize) -> T {
        plateau(i, self.m())
    }

    pub fn plateaus(&self) -> Vec<T> {
        (0..self.m()).map(|i| self.plateau(i)).collect()
    }

    /// Linear interpolation between knots; arguments outside `[0, 1]` are clamped.
    pub fn eval(&self, x: T) -> T {
        let x = x.max(T::zero()).min(T::one());
        let pos = self.knots.partition_point(|&(kx, _)| kx <= x);
        if pos == 0 {
            return self.knots[0].1;
        }
        let (x0, y0) = self.knots[pos - 1];
        if pos == self.knots.len() || x0 == x {
            return y0;
        }
        let (x1, y1) = self.knots[pos];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Index of the interval containing `x`, if any.
    pub fn interval_of(&self, x: T) -> Option<usize> {
        self.intervals.iter().position(|&(a, b)| x >= a && x <= b)
    }
}

fn plateau<T: Real>(i: usize, m: usize) -> T {
    T::lit(0.5) + T::from_count(i) / (T::lit(2.0) * T::from_count(m - 1))
}

pub fn build_g<T: Real>(intervals: &[(T, T)]) -> Result<GFunction<T>> {
    let m = intervals.len();
    if m < 2 {
        return Err(Error::invalid(format!("need at least 2 test intervals, got {m}")));
    }
    for (i, &(a, b)) in intervals.iter().enumerate() {
        if !(a.is_finite() && b.is_finite() && T::zero() <= a && a <= b && b <= T::one()) {
            return Err(Error::invalid(format!("interval {} = [{a}, {b}] is not inside [0, 1]", i + 1)));
        }
        if i > 0 && intervals[i - 1].1 >= a {
            return Err(Error::invalid(format!(
                "intervals {} and {} overlap or are out of order",
                i,
                i + 1
            )));
        }
    }
    let half = T::lit(0.5);
    let mut knots = Vec::with_capacity(3 * m + 2);
    if intervals[0].0 > T::zero() {
        knots.push((T::zero(), T::zero()));
    }
    for (i, &(a, b)) in intervals.iter().enumerate() {
        let p = plateau::<T>(i, m);
        knots.push((a, p));
        if b > a {
            knots.push((b, p));
        }
        if let Some(&(next_a, _)) = intervals.get(i + 1) {
            knots.push(((b + next_a) * half, p - half));
        }
    }
    if intervals[m - 1].1 < T::one() {
        knots.push((T::one(), half));
    }
    Ok(GFunction { intervals: intervals.to_vec(), knots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn point_intervals_at_the_ends() {
        let g = build_g(&[(0.0, 0.0), (1.0, 1.0)]).unwrap();
        assert_eq!(g.knots(), &[(0.0, 0.5), (0.5, 0.0), (1.0, 1.0)]);
        assert_eq!(g.eval(0.25), 0.25);
        assert_eq!(g.eval(0.75), 0.5);
    }

    #[test]
    fn buffered_ends() {
        let g = build_g(&[(0.0, 0.05), (0.95, 1.0)]).unwrap();
        assert_eq!(g.eval(0.0), 0.5);
        assert_eq!(g.eval(0.05), 0.5);
        assert_eq!(g.eval(0.5), 0.0);
        assert_eq!(g.eval(0.95), 1.0);
        assert_eq!(g.eval(1.0), 1.0);
    }

    #[test]
    fn three_intervals() {
        let g = build_g(&[(0.0, 0.1), (0.45, 0.55), (0.9, 1.0)]).unwrap();
        assert_eq!(g.plateaus(), vec![0.5, 0.75, 1.0]);
        assert_eq!(g.eval(0.275), 0.0);
        assert_abs_diff_eq!(g.eval(0.725), 0.25, epsilon = 1e-15);
        assert_eq!(g.eval(0.5), 0.75);
    }

    #[test]
    fn interior_intervals_touch_the_end_rules() {
        let g = build_g(&[(0.2, 0.3), (0.6, 0.7)]).unwrap();
        assert_eq!(g.eval(0.0), 0.0);
        assert_eq!(g.eval(1.0), 0.5);
        assert_eq!(g.eval(0.1), 0.25);
        assert_eq!(g.interval_of(0.65), Some(1));
        assert_eq!(g.interval_of(0.5), None);
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(build_g(&[(0.0, 0.1)]).is_err());
        assert!(build_g(&[(0.0, 0.5), (0.4, 1.0)]).is_err());
        assert!(build_g(&[(0.5, 0.6), (0.1, 0.2)]).is_err());
        assert!(build_g(&[(0.0, 0.5), (0.5, 1.0)]).is_err());
        assert!(build_g(&[(0.3, 0.2), (0.5, 1.0)]).is_err());
        assert!(build_g(&[(0.0, 0.2), (0.5, 1.1)]).is_err());
    }
}
