//! Subcommand implementations. JSON output is byte-identical to the service's.

use std::fs;
use std::io::Write;
use std::net::{SocketAddr, ToSocketAddrs};
use std::path::{Path, PathBuf};

use angular_support::json::{self, AngularReport, EstimateReport};
use angular_support::pipeline::{self, RankBasis};
use angular_support::simulation::{self, MixtureSpec};
use angular_support::workflow::{run_angular, run_estimate, run_test};
use angular_support::{
    dependence_graph, reflect_quadrant, split_transform, Error, EstimateParams, Result, Sample, TestParams,
};

use crate::cli::{
    Command, EstimateArgs, HillArgs, Input, Output, PairwiseArgs, ServeArgs, SimulateArgs, SimulateKind, TestArgs,
    TransformOp,
};
use crate::service::{self, ServiceConfig};
use crate::{parse, plot};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Estimate(a) => estimate(a),
        Command::Test(a) => test(a),
        Command::Pairwise(a) => pairwise(a),
        Command::Simulate(a) => simulate(a),
        Command::Transform(a) => transform(a.op),
        Command::Hill(a) => hill(a),
        Command::Serve(a) => serve(a),
    }
}

fn load(input: &Input) -> Result<Sample> {
    let ingested = pipeline::ingest_csv_path::<f64>(&input.input)?;
    if ingested.dropped_rows > 0 {
        eprintln!("note: dropped {} incomplete rows", ingested.dropped_rows);
    }
    Ok(ingested.sample)
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.output {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")?;
        }
    }
    Ok(())
}

fn emit_csv(output: &Output, s: &Sample) -> Result<()> {
    match &output.output {
        Some(path) => pipeline::write_csv(s, fs::File::create(path)?),
        None => pipeline::write_csv(s, std::io::stdout().lock()),
    }
}

fn points_path(plot: &Path) -> PathBuf {
    plot.with_extension("points.json")
}

fn estimate(a: EstimateArgs) -> Result<()> {
    let s = load(&a.input)?;
    let signs = a.signs.as_deref().map(parse::signs).transpose()?;
    let params = EstimateParams { k: a.k, m: a.m, q: a.q, signs: signs.clone() };
    let report = EstimateReport::from(&run_estimate(&s, &params)?);
    if let Some(path) = &a.plot {
        let points: AngularReport = run_angular(&s, a.k, signs.as_deref())?;
        fs::write(path, plot::render(&report, &points)?)?;
        fs::write(points_path(path), json::to_string(&points)? + "\n")?;
    }
    emit(&a.output, &json::to_string(&report)?)
}

pub fn test_params(a: &TestArgs) -> Result<TestParams> {
    Ok(TestParams {
        intervals: parse::intervals(&a.intervals)?,
        masses: a.masses.as_deref().map(parse::numbers).transpose()?,
        k: a.k,
        split_fraction: a.fraction,
        seed: a.seed,
        split_transform: a.split_transform,
        signs: a.signs.as_deref().map(parse::signs).transpose()?,
        groups: a.groups.as_deref().map(parse::groups).transpose()?,
    })
}

fn test(a: TestArgs) -> Result<()> {
    let s = load(&a.input)?;
    let report = run_test(&s, &test_params(&a)?)?;
    emit(&a.output, &json::to_string(&report)?)
}

fn pairwise(a: PairwiseArgs) -> Result<()> {
    let s = load(&a.input)?;
    emit(&a.output, &json::to_string(&dependence_graph(&s, a.k, a.threshold)?)?)
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let s = match a.kind {
        SimulateKind::Mixture { preset, config, seed } => {
            let mut spec = match (preset, config) {
                (Some(name), _) => MixtureSpec::preset(&name, seed.unwrap_or(0))?,
                (None, Some(path)) => serde_json::from_str(&fs::read_to_string(path)?)?,
                (None, None) => return Err(Error::InvalidParameter("give --preset or --config".into())),
            };
            if let Some(seed) = seed {
                spec.seed = seed;
            }
            simulation::simulate_mixture(&spec)?
        }
        SimulateKind::Face { n, masses, alpha, seed } => {
            let m = parse::numbers(&masses)?;
            let [p0, p1] = m[..] else {
                return Err(Error::InvalidParameter(format!("expected two masses, got {}", m.len())));
            };
            simulation::simulate_face_independent(n, (p0, p1), alpha, seed)?
        }
        SimulateKind::Interval { n, interval, alpha, seed } => {
            let [[a, b]] = parse::intervals(&interval)?[..] else {
                return Err(Error::InvalidParameter(format!("expected one interval, got {interval:?}")));
            };
            simulation::simulate_interval_support(n, (a, b), alpha, seed)?
        }
        SimulateKind::Sectors { n, sectors, per_sector, alpha, seed } => {
            simulation::simulate_sector_portfolio(n, sectors, per_sector, alpha, seed)?
        }
    };
    emit_csv(&a.output, &s)
}

fn transform(op: TransformOp) -> Result<()> {
    match op {
        TransformOp::LogReturns { input, output } => emit_csv(&output, &pipeline::log_returns(&load(&input)?)?),
        TransformOp::Rank { input, absolute, output } => {
            let basis = if absolute { RankBasis::Absolute } else { RankBasis::Signed };
            emit_csv(&output, &pipeline::rank_transform(&load(&input)?, basis)?)
        }
        TransformOp::Reflect { input, signs, output } => {
            let r = reflect_quadrant(&load(&input)?, &parse::signs(&signs)?)?;
            if r.dropped > 0 {
                eprintln!("note: dropped {} rows outside the quadrant", r.dropped);
            }
            emit_csv(&output, &r.sample)
        }
        TransformOp::SplitTransform { input, seed, output } => {
            let t = split_transform(&load(&input)?, seed)?;
            if let Some(row) = t.dropped_row {
                eprintln!("note: odd sample size, dropped data row {}", row + 1);
            }
            emit_csv(&output, &t.sample)
        }
        TransformOp::Split { input, fraction, seed, estimate_csv, test_csv, output } => {
            let s = load(&input)?;
            let plan = pipeline::split_sample(s.n(), fraction, seed)?;
            let (est, tst) = plan.apply(&s)?;
            if let Some(path) = estimate_csv {
                pipeline::write_csv(&est, fs::File::create(path)?)?;
            }
            if let Some(path) = test_csv {
                pipeline::write_csv(&tst, fs::File::create(path)?)?;
            }
            emit(&output, &json::to_string(&plan)?)
        }
    }
}

fn hill(a: HillArgs) -> Result<()> {
    let s = load(&a.input)?;
    let report = pipeline::tail_index_report(&s, a.k_hill, a.side.into(), a.warn_ratio)?;
    if let Some(w) = &report.warning {
        eprintln!("warning: {w}");
    }
    emit(&a.output, &json::to_string(&report)?)
}

fn serve(a: ServeArgs) -> Result<()> {
    let addr: SocketAddr = (a.host.as_str(), a.port)
        .to_socket_addrs()?
        .next()
        .ok_or_else(|| Error::InvalidParameter(format!("cannot resolve {}", a.host)))?;
    let cfg = ServiceConfig { max_upload_bytes: a.max_upload_bytes, cache_entries: a.cache_entries };
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(service::serve(addr, cfg))?;
    Ok(())
}
