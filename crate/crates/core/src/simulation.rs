//! Generators of regularly varying samples whose angular measure is known.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_distr::{Distribution, Exp, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{MappedPoint, SimplexMapping, SimplexPoint};
use crate::rng::{rng_from_seed, Rng};
use crate::sample::Sample;

/// Consecutive rejected proposals after which a region is declared empty.
const MAX_REJECTIONS: usize = 1_000_000;

/// Support of the signal's angular component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AngularRegion {
    /// Ball in mapped coordinates; `center` has `N - 1` entries.
    Disk { center: Vec<f64>, radius: f64 },
    /// Triangle in the mapped plane of `N = 3`.
    Triangle { vertices: [[f64; 2]; 3] },
    /// Point masses at simplex points.
    FaceMixture { points: Vec<Vec<f64>>, masses: Vec<f64> },
    /// `N = 2`, first coordinate uniform on a union of intervals.
    IntervalUnion { intervals: Vec<[f64; 2]> },
}

impl AngularRegion {
    pub fn dims(&self) -> usize {
        match self {
            AngularRegion::Disk { center, .. } => center.len() + 1,
            AngularRegion::Triangle { .. } => 3,
            AngularRegion::FaceMixture { points, .. } => points.first().map(Vec::len).unwrap_or(0),
            AngularRegion::IntervalUnion { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseRadial {
    Exponential { rate: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub signal_count: usize,
    pub noise_count: usize,
    pub radial_alpha: f64,
    pub region: AngularRegion,
    pub noise_radial: NoiseRadial,
    pub seed: u64,
}

impl MixtureSpec {
    /// Disk of radius 1.45/36 centred on a cell centre of the 36-grid.
    ///
    /// Reconstruction: 50 000 Pareto(2) signal points, 100 000 noise points.
    pub fn disk_preset(seed: u64) -> Self {
        Self {
            signal_count: 50_000,
            noise_count: 100_000,
            radial_alpha: 2.0,
            region: AngularRegion::Disk { center: vec![18.5 / 36.0, 10.5 / 36.0], radius: 1.45 / 36.0 },
            noise_radial: NoiseRadial::Exponential { rate: 1.0 },
            seed,
        }
    }

    /// Triangle in the lower middle of the mapped simplex. Reconstruction.
    pub fn triangle_preset(seed: u64) -> Self {
        Self {
            region: AngularRegion::Triangle { vertices: [[0.30, 0.10], [0.70, 0.10], [0.50, 0.45]] },
            ..Self::disk_preset(seed)
        }
    }

    pub fn preset(name: &str, seed: u64) -> Result<Self> {
        match name {
            "disk" => Ok(Self::disk_preset(seed)),
            "triangle" => Ok(Self::triangle_preset(seed)),
            other => Err(Error::invalid(format!("unknown preset {other:?} (expected disk or triangle)"))),
        }
    }
}

pub const PRESETS: [&str; 2] = ["disk", "triangle"];

/// Draws from `P(R > x) = x^(-alpha)`, `x >= 1`.
pub fn pareto_radius(rng: &mut Rng, alpha: f64) -> f64 {
    let u: f64 = 1.0 - rng.random::<f64>();
    u.powf(-1.0 / alpha)
}

/// Uniform point on the simplex via normalised exponential spacings.
pub fn uniform_simplex(rng: &mut Rng, n_dims: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n_dims).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|v| v / total).collect()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("tail index must be positive, got {alpha}")))
    }
}

enum Sampler {
    Rejection { mapping: SimplexMapping<f64>, lo: Vec<f64>, hi: Vec<f64>, accept: Box<dyn Fn(&[f64]) -> bool> },
    Atoms { points: Vec<Vec<f64>>, cumulative: Vec<f64> },
    Intervals { intervals: Vec<[f64; 2]>, cumulative: Vec<f64> },
}

fn pick(cumulative: &[f64], u: f64) -> usize {
    cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1)
}

fn cumulative(weights: &[f64]) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    weights
        .iter()
        .scan(0.0, |acc, w| {
            *acc += w / total;
            Some(*acc)
        })
        .collect()
}

fn check_masses(masses: &[f64]) -> Result<()> {
    if masses.iter().any(|&p| !(p >= 0.0 && p.is_finite())) || (masses.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::DegenerateRegion(format!("masses {masses:?} must be non-negative and sum to 1")));
    }
    Ok(())
}

impl Sampler {
    fn new(region: &AngularRegion) -> Result<Self> {
        match region {
            AngularRegion::Disk { center, radius } => {
                let mapping = SimplexMapping::new(center.len() + 1)?;
                if !(*radius > 0.0) || center.iter().any(|c| !c.is_finite()) {
                    return Err(Error::DegenerateRegion(format!("disk radius {radius} has zero area")));
                }
                let lo = center.iter().map(|c| (c - radius).max(0.0)).collect();
                let hi = center.iter().map(|c| (c + radius).min(1.0)).collect();
                let (c, r2) = (center.clone(), radius * radius);
                let accept = move |u: &[f64]| u.iter().zip(&c).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() < r2;
                Ok(Sampler::Rejection { mapping, lo, hi, accept: Box::new(accept) })
            }
            AngularRegion::Triangle { vertices: [a, b, c] } => {
                let cross = |o: &[f64; 2], p: &[f64; 2], q: &[f64; 2]| {
                    (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])
                };
                let area = cross(a, b, c);
                if !(area.abs() > 1e-15) {
                    return Err(Error::DegenerateRegion("triangle vertices are collinear".into()));
                }
                let mapping = SimplexMapping::new(3)?;
                for v in [a, b, c] {
                    let inside = MappedPoint::new(v.to_vec()).map(|u| mapping.in_image(&u)).unwrap_or(false);
                    if !inside {
                        return Err(Error::invalid(format!("triangle vertex {v:?} lies outside the simplex image")));
                    }
                }
                let lo = (0..2).map(|i| a[i].min(b[i]).min(c[i])).collect();
                let hi = (0..2).map(|i| a[i].max(b[i]).max(c[i])).collect();
                let (a, b, c, s) = (*a, *b, *c, area.signum());
                let accept = move |u: &[f64]| {
                    let p = [u[0], u[1]];
                    s * cross(&a, &b, &p) >= 0.0 && s * cross(&b, &c, &p) >= 0.0 && s * cross(&c, &a, &p) >= 0.0
                };
                Ok(Sampler::Rejection { mapping, lo, hi, accept: Box::new(accept) })
            }
            AngularRegion::FaceMixture { points, masses } => {
                if points.is_empty() || points.len() != masses.len() {
                    return Err(Error::invalid("face mixture needs one mass per point"));
                }
                check_masses(masses)?;
                let points = points
                    .iter()
                    .map(|p| SimplexPoint::new(p.clone()).map(SimplexPoint::into_inner))
                    .collect::<Result<Vec<_>>>()?;
                let n_dims = points[0].len();
                if points.iter().any(|p| p.len() != n_dims) {
                    return Err(Error::invalid("face mixture points differ in dimension"));
                }
                Ok(Sampler::Atoms { points, cumulative: cumulative(masses) })
            }
            AngularRegion::IntervalUnion { intervals } => {
                if intervals.iter().any(|[a, b]| !(0.0 <= *a && a <= b && *b <= 1.0)) {
                    return Err(Error::invalid(format!("intervals {intervals:?} must satisfy 0 <= a <= b <= 1")));
                }
                let lengths: Vec<f64> = intervals.iter().map(|[a, b]| b - a).collect();
                if !(lengths.iter().sum::<f64>() > 0.0) {
                    return Err(Error::DegenerateRegion("intervals have zero total length".into()));
                }
                Ok(Sampler::Intervals { intervals: intervals.clone(), cumulative: cumulative(&lengths) })
            }
        }
    }

    fn draw(&self, rng: &mut Rng) -> Result<Vec<f64>> {
        match self {
            Sampler::Rejection { mapping, lo, hi, accept } => {
                for _ in 0..MAX_REJECTIONS {
                    let u: Vec<f64> = lo.iter().zip(hi).map(|(&l, &h)| l + (h - l) * rng.random::<f64>()).collect();
                    if !accept(&u) {
                        continue;
                    }
                    let Ok(m) = MappedPoint::new(u) else { continue };
                    if let Ok(p) = mapping.unmap(&m) {
                        return Ok(p.into_inner());
                    }
                }
                Err(Error::DegenerateRegion("region does not meet the simplex image".into()))
            }
            Sampler::Atoms { points, cumulative } => Ok(points[pick(cumulative, rng.random())].clone()),
            Sampler::Intervals { intervals, cumulative } => {
                let [a, b] = intervals[pick(cumulative, rng.random())];
                let t = a + (b - a) * rng.random::<f64>();
                Ok(vec![t, 1.0 - t])
            }
        }
    }
}

/// Signal rows (region angle, Pareto radius) followed by noise rows
/// (uniform angle, exponential radius), then shuffled.
pub fn simulate_mixture(spec: &MixtureSpec) -> Result<Sample> {
    check_alpha(spec.radial_alpha)?;
    let NoiseRadial::Exponential { rate } = spec.noise_radial;
    let noise = Exp::new(rate).map_err(|_| Error::invalid(format!("noise rate must be positive, got {rate}")))?;
    let n_dims = spec.region.dims();
    if spec.signal_count + spec.noise_count == 0 {
        return Err(Error::invalid("mixture has no rows"));
    }
    let sampler = Sampler::new(&spec.region)?;
    let mut rng = rng_from_seed(spec.seed);
    let mut rows = Vec::with_capacity(spec.signal_count + spec.noise_count);
    for _ in 0..spec.signal_count {
        let angle = sampler.draw(&mut rng)?;
        let r = pareto_radius(&mut rng, spec.radial_alpha);
        rows.push(angle.into_iter().map(|v| r * v).collect());
    }
    for _ in 0..spec.noise_count {
        let angle = uniform_simplex(&mut rng, n_dims);
        let r: f64 = noise.sample(&mut rng);
        rows.push(angle.into_iter().map(|v| r * v).collect());
    }
    rows.shuffle(&mut rng);
    Sample::from_rows(rows)
}

fn pure_signal(n: usize, alpha: f64, region: AngularRegion, seed: u64) -> Result<Sample> {
    simulate_mixture(&MixtureSpec {
        signal_count: n,
        noise_count: 0,
        radial_alpha: alpha,
        region,
        noise_radial: NoiseRadial::Exponential { rate: 1.0 },
        seed,
    })
}

/// Every row is `R·(1,0)` with probability `masses.0`, else `R·(0,1)`.
pub fn simulate_face_independent(n: usize, masses: (f64, f64), alpha: f64, seed: u64) -> Result<Sample> {
    let region = AngularRegion::FaceMixture { points: vec![vec![1.0, 0.0], vec![0.0, 1.0]], masses: vec![masses.0, masses.1] };
    pure_signal(n, alpha, region, seed)
}

/// Angular first coordinate uniform on `[a, b]`.
pub fn simulate_interval_support(n: usize, interval: (f64, f64), alpha: f64, seed: u64) -> Result<Sample> {
    let (a, b) = interval;
    if !(0.0 <= a && a < b && b <= 1.0) {
        return Err(Error::invalid(format!("interval [{a}, {b}] must satisfy 0 <= a < b <= 1")));
    }
    pure_signal(n, alpha, AngularRegion::IntervalUnion { intervals: vec![[a, b]] }, seed)
}

/// `sectors × per_sector` columns `X = F_s + E` with one shared Pareto factor
/// `F_s` per sector and independent Pareto noise `E` per column.
pub fn simulate_sector_portfolio(n: usize, sectors: usize, per_sector: usize, alpha: f64, seed: u64) -> Result<Sample> {
    check_alpha(alpha)?;
    if sectors * per_sector < 2 {
        return Err(Error::invalid("portfolio needs at least 2 columns"));
    }
    let mut rng = rng_from_seed(seed);
    let rows = (0..n)
        .map(|_| {
            let factors: Vec<f64> = (0..sectors).map(|_| pareto_radius(&mut rng, alpha)).collect();
            factors
                .iter()
                .flat_map(|&f| std::iter::repeat_n(f, per_sector))
                .map(|f| f + pareto_radius(&mut rng, alpha))
                .collect()
        })
        .collect();
    let names = (0..sectors)
        .flat_map(|s| (0..per_sector).map(move |j| format!("s{}_{}", s + 1, j + 1)))
        .collect();
    Sample::new(rows, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_rows() {
        let region = AngularRegion::FaceMixture { points: vec![vec![1.0, 0.0]], masses: vec![1.0] };
        let s = pure_signal(500, 2.0, region, 3).unwrap();
        assert!(s.rows().iter().all(|r| r[0] >= 1.0 && r[1] == 0.0));
    }

    #[test]
    fn pareto_tail_probability() {
        let mut rng = rng_from_seed(17);
        let n = 1_000_000;
        let above = (0..n).filter(|_| pareto_radius(&mut rng, 2.0) > 2.0).count();
        assert!((above as f64 / n as f64 - 0.25).abs() <= 0.002);
    }

    #[test]
    fn mixture_composition_and_determinism() {
        let spec = MixtureSpec { signal_count: 300, noise_count: 700, ..MixtureSpec::disk_preset(5) };
        let s = simulate_mixture(&spec).unwrap();
        assert_eq!(s.n(), 1000);
        assert_eq!(s.dims(), 3);
        assert_eq!(simulate_mixture(&spec).unwrap(), s);
        let mapping = SimplexMapping::<f64>::new(3).unwrap();
        let AngularRegion::Disk { center, radius } = &spec.region else { unreachable!() };
        let on_disk = s
            .rows()
            .iter()
            .filter(|r| {
                let norm: f64 = r.iter().sum();
                let p = SimplexPoint::new(r.iter().map(|v| v / norm).collect()).unwrap();
                let u = mapping.map_raw(&p).unwrap();
                ((u[0] - center[0]).powi(2) + (u[1] - center[1]).powi(2)).sqrt() <= radius + 1e-12
            })
            .count();
        // noise rarely falls on the small disk
        assert!((300..320).contains(&on_disk), "{on_disk}");
    }

    #[test]
    fn degenerate_regions() {
        let zero = MixtureSpec {
            region: AngularRegion::Disk { center: vec![0.5, 0.3], radius: 0.0 },
            ..MixtureSpec::disk_preset(1)
        };
        assert!(matches!(simulate_mixture(&zero), Err(Error::DegenerateRegion(_))));
        let outside = MixtureSpec {
            signal_count: 1,
            region: AngularRegion::Disk { center: vec![0.05, 0.8], radius: 0.01 },
            ..MixtureSpec::disk_preset(1)
        };
        assert!(matches!(simulate_mixture(&outside), Err(Error::DegenerateRegion(_))));
        let flat = MixtureSpec {
            region: AngularRegion::Triangle { vertices: [[0.2, 0.1], [0.4, 0.1], [0.6, 0.1]] },
            ..MixtureSpec::disk_preset(1)
        };
        assert!(matches!(simulate_mixture(&flat), Err(Error::DegenerateRegion(_))));
        assert!(simulate_face_independent(10, (0.7, 0.7), 2.0, 1).is_err());
        assert!(simulate_interval_support(10, (0.5, 0.5), 2.0, 1).is_err());
    }

    #[test]
    fn face_independent_frequencies() {
        let s = simulate_face_independent(10_000, (0.5, 0.5), 2.0, 8).unwrap();
        let first = s.rows().iter().filter(|r| r[1] == 0.0).count();
        assert!(s.rows().iter().all(|r| r[0] == 0.0 || r[1] == 0.0));
        assert!((first as f64 / 1e4 - 0.5).abs() <= 0.015);
        let one_sided = simulate_face_independent(100, (1.0, 0.0), 2.0, 8).unwrap();
        assert!(one_sided.rows().iter().all(|r| r[1] == 0.0));
    }

    #[test]
    fn interval_support_range() {
        let s = simulate_interval_support(100_000, (0.2, 0.5), 2.0, 4).unwrap();
        for r in s.rows() {
            let t = r[0] / (r[0] + r[1]);
            assert!((0.2 - 1e-12..=0.5 + 1e-12).contains(&t));
        }
    }

    #[test]
    fn presets_parse_from_json() {
        let spec = MixtureSpec::triangle_preset(2);
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<MixtureSpec>(&text).unwrap(), spec);
        assert!(MixtureSpec::preset("nope", 1).is_err());
    }
}
