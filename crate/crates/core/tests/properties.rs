use angular_support::geometry::{cellset_point_hausdorff, Metric};
use angular_support::independence::{h1, h2, projection_matrix};
use angular_support::json::format_g17;
use angular_support::pipeline::{log_returns, rank_transform, split_sample, RankBasis};
use angular_support::{
    build_g, cellset_hausdorff_with, empirical_angular_measure, estimate_support, midpoints, rasterize,
    split_transform, threshold_top_k, GridSpec, MappedPoint, Sample, SimplexMapping, SimplexPoint,
};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn simplex_point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 6 => 0.0..1.0f64], n).prop_filter_map("zero vector", |v| {
        let s: f64 = v.iter().sum();
        (s > 1e-3).then(|| v.iter().map(|x| x / s).collect())
    })
}

fn pair_in_dim() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..=6).prop_flat_map(|n| (simplex_point(n), simplex_point(n)))
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn positive_sample() -> impl Strategy<Value = (Vec<Vec<f64>>, usize)> {
    (2usize..=4, 20usize..120).prop_flat_map(|(dims, n)| {
        (prop::collection::vec(prop::collection::vec(0.01..100.0f64, dims), n), 1..n)
    })
}

fn groups(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), 1..n)
        .prop_map(|(perm, cut)| (perm[..cut].to_vec(), perm[cut..].to_vec()))
}

proptest! {
    #[test]
    fn mapping_is_scaled_isometry((x, y) in pair_in_dim()) {
        let t = SimplexMapping::<f64>::new(x.len()).unwrap();
        let tx = t.map_raw(&SimplexPoint::new(x.clone()).unwrap()).unwrap();
        let ty = t.map_raw(&SimplexPoint::new(y.clone()).unwrap()).unwrap();
        prop_assert!((dist(&x, &y) - 2f64.sqrt() * dist(&tx, &ty)).abs() <= 1e-12);
    }

    #[test]
    fn mapping_round_trips_inside_unit_cube((x, _) in pair_in_dim()) {
        let t = SimplexMapping::<f64>::new(x.len()).unwrap();
        let u = t.map(&SimplexPoint::new(x.clone()).unwrap()).unwrap();
        prop_assert!(u.coords().iter().all(|&c| (0.0..=1.0).contains(&c)));
        let back = t.unmap(&u).unwrap();
        for (a, b) in back.coords().iter().zip(&x) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn estimate_shrinks_as_q_grows((rows, k) in positive_sample(), m in 2usize..12, q1 in 0.0..0.5f64, dq in 0.0..0.5f64) {
        let s = Sample::from_rows(rows).unwrap();
        let cloud = threshold_top_k(&s, k).unwrap();
        let q2 = q1 + dq;
        let lo = estimate_support(&cloud, m, q1).unwrap();
        let hi = estimate_support(&cloud, m, q2).unwrap();
        prop_assert!(hi.cells().is_subset(lo.cells()));
    }

    #[test]
    fn masses_sum_to_one_and_small_q_is_zero((rows, k) in positive_sample(), m in 2usize..12, frac in 0.0..1.0f64) {
        let s = Sample::from_rows(rows).unwrap();
        let cloud = threshold_top_k(&s, k).unwrap();
        let grid = GridSpec::new(m, s.dims() - 1).unwrap();
        let measure = empirical_angular_measure(&cloud, &grid).unwrap();
        let num: u64 = measure.masses().map(|(_, w)| w.num).sum();
        prop_assert!(measure.masses().all(|(_, w)| w.den == k as u64));
        prop_assert_eq!(num, k as u64);
        let q = frac / k as f64;
        prop_assume!(q * (k as f64) < 1.0);
        let zero = estimate_support(&cloud, m, 0.0).unwrap();
        let small = estimate_support(&cloud, m, q).unwrap();
        prop_assert_eq!(small.cells(), zero.cells());
        prop_assert_eq!(zero.cells(), &measure.occupied());
    }

    #[test]
    fn rasterization_is_within_cell_diagonal(points in prop::collection::vec(prop::collection::vec(0.0..=1.0f64, 2), 1..30), e in 1u32..7) {
        let m = 1usize << e;
        let mapped: Vec<MappedPoint<f64>> = points.iter().map(|p| MappedPoint::new(p.clone()).unwrap()).collect();
        let cells = rasterize(&mapped, &GridSpec::new(m, 2).unwrap()).unwrap();
        let d: f64 = cellset_point_hausdorff(&cells, &points, Metric::Euclidean).unwrap();
        prop_assert!(d <= 2f64.sqrt() / m as f64 + 1e-7);
    }

    #[test]
    fn refinement_is_within_coarse_cell(points in prop::collection::vec(prop::collection::vec(0.0..=1.0f64, 2), 1..20), e1 in 1u32..4, extra in 1u32..3) {
        let (m1, m2) = (1usize << e1, 1usize << (e1 + extra));
        let mapped: Vec<MappedPoint<f64>> = points.iter().map(|p| MappedPoint::new(p.clone()).unwrap()).collect();
        let coarse = rasterize(&mapped, &GridSpec::new(m1, 2).unwrap()).unwrap();
        let fine = rasterize(&mapped, &GridSpec::new(m2, 2).unwrap()).unwrap();
        let d: f64 = cellset_hausdorff_with(&coarse, &fine, Metric::Chebyshev).unwrap();
        prop_assert!(d <= 1.0 / m1 as f64 + 1e-7);
    }

    #[test]
    fn projection_matrix_laws((a, b) in (2usize..=8).prop_flat_map(groups), seed in prop::collection::vec(0.0..10.0f64, 8)) {
        let n = a.len() + b.len();
        let fp = midpoints::<f64>(n, &a, &b).unwrap();
        let q = projection_matrix(&fp);
        let qm = DMatrix::from_fn(n, n, |i, j| q[i][j]);
        let mm = DMatrix::from_fn(n, 2, |i, j| if j == 0 { fp.midpoint_a().coords()[i] } else { fp.midpoint_b().coords()[i] });
        let oracle = &mm * (mm.transpose() * &mm).try_inverse().unwrap() * mm.transpose();
        prop_assert!((&qm - oracle).abs().max() <= 1e-12);
        prop_assert!((&qm * &qm - &qm).abs().max() <= 1e-12);
        prop_assert!((qm.transpose() - &qm).abs().max() <= 1e-12);
        let x: Vec<f64> = seed[..n].to_vec();
        prop_assume!(x.iter().sum::<f64>() > 1e-6);
        let l1 = |v: &[f64]| v.iter().map(|c| c.abs()).sum::<f64>();
        let qx = h2(&x, &fp).unwrap();
        prop_assert!((l1(&qx) - l1(&x)).abs() <= 1e-12 * l1(&x).max(1.0));
        let one_two = h2(&h1(&x).unwrap(), &fp).unwrap();
        let two_one = h1(&qx).unwrap();
        for (u, v) in one_two.iter().zip(&two_one) {
            prop_assert!((u - v).abs() <= 1e-12);
        }
    }

    #[test]
    fn g_is_bounded_with_exact_plateaus(cuts in prop::collection::btree_set(1u32..999, 2..9), x in 0.0..=1.0f64) {
        let cuts: Vec<f64> = cuts.into_iter().map(|c| c as f64 / 1000.0).collect();
        let intervals: Vec<(f64, f64)> = cuts.chunks(2).filter(|c| c.len() == 2).map(|c| (c[0], c[1])).collect();
        prop_assume!(intervals.len() >= 2);
        let g = build_g(&intervals).unwrap();
        let y = g.eval(x);
        prop_assert!((0.0..=1.0).contains(&y));
        for (i, &(a, b)) in intervals.iter().enumerate() {
            prop_assert_eq!(g.eval(a), g.plateau(i));
            prop_assert_eq!(g.eval(0.5 * (a + b)), g.plateau(i));
        }
    }

    #[test]
    fn rank_transform_spans_one_to_n(values in prop::collection::btree_set(-1_000_000i64..1_000_000, 2..60)) {
        let col: Vec<f64> = values.into_iter().map(|v| v as f64).collect();
        let n = col.len() as f64;
        let rows = col.iter().enumerate().map(|(i, &v)| vec![v, i as f64]).collect();
        let r = rank_transform(&Sample::from_rows(rows).unwrap(), RankBasis::Signed).unwrap();
        for j in 0..2 {
            let c = r.column(j);
            prop_assert_eq!(c.iter().cloned().fold(f64::MIN, f64::max), n);
            prop_assert_eq!(c.iter().cloned().fold(f64::MAX, f64::min), 1.0);
        }
    }

    #[test]
    fn log_returns_round_trip(prices in prop::collection::vec(prop::collection::vec(0.01..1e4f64, 2), 2..50)) {
        let s = Sample::from_rows(prices.clone()).unwrap();
        let r = log_returns(&s).unwrap();
        for j in 0..2 {
            let mut acc = prices[0][j].ln();
            for (t, row) in r.rows().iter().enumerate() {
                acc += row[j];
                let rebuilt = acc.exp();
                prop_assert!((rebuilt - prices[t + 1][j]).abs() <= 1e-10 * prices[t + 1][j]);
            }
        }
    }

    #[test]
    fn split_plan_partitions(n in 2usize..500, fraction in 0.01..0.99f64, seed: u64) {
        prop_assume!(((fraction * n as f64).floor() as usize).clamp(1, n - 1) == (fraction * n as f64).floor() as usize);
        let p = split_sample(n, fraction, seed).unwrap();
        let mut all = [p.estimate_indices.clone(), p.test_indices.clone()].concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        prop_assert_eq!(split_sample(n, fraction, seed).unwrap(), p);
    }

    #[test]
    fn split_transform_halves_the_support(a in 0.0..0.9f64, w in 0.05..0.5f64, n in 2usize..200, seed: u64) {
        let b = (a + w).min(1.0);
        let rows: Vec<Vec<f64>> = (0..n).map(|i| {
            let t = a + (b - a) * (i as f64 + 0.5) / n as f64;
            let r = 1.0 + i as f64;
            vec![r * t, r * (1.0 - t)]
        }).collect();
        let out = split_transform(&Sample::from_rows(rows).unwrap(), seed).unwrap();
        for row in out.sample.rows() {
            let t = row[0] / (row[0] + row[1]);
            let low = (a / 2.0 - 1e-12..=b / 2.0 + 1e-12).contains(&t);
            let high = ((a + 1.0) / 2.0 - 1e-12..=(b + 1.0) / 2.0 + 1e-12).contains(&t);
            prop_assert!(low || high);
        }
    }

    #[test]
    fn g17_round_trips(bits: u64) {
        let v = f64::from_bits(bits);
        prop_assume!(v.is_finite());
        prop_assert_eq!(format_g17(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn single_precision_mapping_is_isometry_to_rounding((x, y) in pair_in_dim()) {
        let to32 = |v: &[f64]| SimplexPoint::<f32>::new(v.iter().map(|&c| c as f32).collect()).unwrap();
        let t = SimplexMapping::<f32>::new(x.len()).unwrap();
        let (px, py) = (to32(&x), to32(&y));
        let (tx, ty) = (t.map_raw(&px).unwrap(), t.map_raw(&py).unwrap());
        let d32 = |a: &[f32], b: &[f32]| a.iter().zip(b).map(|(u, v)| (u - v).powi(2)).sum::<f32>().sqrt();
        prop_assert!((d32(px.coords(), py.coords()) - 2f32.sqrt() * d32(&tx, &ty)).abs() <= 1e-5);
    }
}
