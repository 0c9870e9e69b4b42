//! Read-only HTTP/JSON service over uploaded datasets.
//!
//! | route | |
//! |---|---|
//! | `POST /datasets` | CSV body, returns `{"id", ...}` |
//! | `GET /datasets/{id}/summary?k_hill&side` | size and per-column Hill report |
//! | `GET /datasets/{id}/angular?k&signs` | mapped points and radii |
//! | `GET /datasets/{id}/estimate?k&m&q&signs` | support estimate |
//! | `POST /datasets/{id}/test` | JSON [`TestParams`], returns the test report |

use std::collections::HashMap;
use std::net::SocketAddr;
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use angular_support::json::{self, AngularReport, EstimateReport};
use angular_support::pipeline::{ingest_csv, tail_index_report, TailIndexReport, TailSide, DEFAULT_WARN_RATIO};
use angular_support::rng::derive_seed;
use angular_support::workflow::{run_angular, run_estimate, run_test};
use angular_support::{Error, ErrorClass, EstimateParams, Sample, TestParams};
use axum::extract::{DefaultBodyLimit, Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use lru::LruCache;
use serde::{Deserialize, Serialize};

use crate::parse;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub max_upload_bytes: usize,
    pub cache_entries: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self { max_upload_bytes: 64 << 20, cache_entries: 256 }
    }
}

struct Dataset {
    sample: Sample,
    dropped_rows: usize,
}

#[derive(Hash, PartialEq, Eq)]
struct EstimateKey {
    id: String,
    k: usize,
    m: usize,
    q_bits: u64,
    signs: Option<Vec<i8>>,
}

struct AppState {
    datasets: RwLock<HashMap<String, Arc<Dataset>>>,
    estimates: Mutex<LruCache<EstimateKey, Arc<String>>>,
    uploads: AtomicU64,
    nonce: u64,
}

type Shared = Arc<AppState>;

pub struct ApiError(Error);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError(e)
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: String,
    class: &'a str,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, class) = match self.0.class() {
            ErrorClass::Validation => (StatusCode::BAD_REQUEST, "validation"),
            ErrorClass::Io => (StatusCode::INTERNAL_SERVER_ERROR, "io"),
            ErrorClass::Numeric => (StatusCode::UNPROCESSABLE_ENTITY, "numeric"),
        };
        (status, Json(ErrorBody { error: self.0.to_string(), class })).into_response()
    }
}

fn not_found(id: &str) -> Response {
    (StatusCode::NOT_FOUND, Json(ErrorBody { error: format!("unknown dataset {id:?}"), class: "validation" })).into_response()
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn render<S: Serialize>(value: &S) -> Result<String, ApiError> {
    Ok(json::to_string(value)?)
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError(Error::Io(std::io::Error::other(e))))?
}

impl AppState {
    fn dataset(&self, id: &str) -> Option<Arc<Dataset>> {
        self.datasets.read().expect("dataset lock").get(id).cloned()
    }
}

pub fn router(cfg: ServiceConfig) -> Router {
    let capacity = NonZeroUsize::new(cfg.cache_entries).unwrap_or(NonZeroUsize::MIN);
    let state: Shared = Arc::new(AppState {
        datasets: RwLock::new(HashMap::new()),
        estimates: Mutex::new(LruCache::new(capacity)),
        uploads: AtomicU64::new(0),
        nonce: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0),
    });
    Router::new()
        .route("/datasets", post(upload))
        .route("/datasets/{id}/summary", get(summary))
        .route("/datasets/{id}/angular", get(angular))
        .route("/datasets/{id}/estimate", get(estimate))
        .route("/datasets/{id}/test", post(test))
        .layer(DefaultBodyLimit::max(cfg.max_upload_bytes))
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, cfg: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(cfg))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

#[derive(Serialize)]
struct Uploaded<'a> {
    id: String,
    n: usize,
    dims: usize,
    column_names: &'a [String],
    dropped_rows: usize,
}

async fn upload(State(state): State<Shared>, body: String) -> Result<Response, ApiError> {
    let ingested = blocking(move || Ok(ingest_csv::<f64, _>(body.as_bytes())?)).await?;
    let seq = state.uploads.fetch_add(1, Ordering::Relaxed);
    let id = format!("{:016x}", derive_seed(state.nonce, seq));
    let dataset = Arc::new(Dataset { sample: ingested.sample, dropped_rows: ingested.dropped_rows });
    let body = render(&Uploaded {
        id: id.clone(),
        n: dataset.sample.n(),
        dims: dataset.sample.dims(),
        column_names: dataset.sample.column_names(),
        dropped_rows: dataset.dropped_rows,
    })?;
    state.datasets.write().expect("dataset lock").insert(id, dataset);
    Ok(json_response(StatusCode::CREATED, body))
}

#[derive(Deserialize)]
struct SummaryQuery {
    k_hill: Option<usize>,
    side: Option<TailSide>,
    warn_ratio: Option<f64>,
}

#[derive(Serialize)]
struct Summary<'a> {
    n: usize,
    dims: usize,
    column_names: &'a [String],
    dropped_rows: usize,
    tail: Option<TailIndexReport>,
    tail_error: Option<String>,
}

/// Default number of order statistics for the summary's Hill report.
pub fn default_k_hill(n: usize) -> usize {
    ((n as f64).sqrt().floor() as usize).max(1)
}

async fn summary(State(state): State<Shared>, Path(id): Path<String>, Query(q): Query<SummaryQuery>) -> Result<Response, ApiError> {
    let Some(ds) = state.dataset(&id) else { return Ok(not_found(&id)) };
    let body = blocking(move || {
        let s = &ds.sample;
        let k_hill = q.k_hill.unwrap_or_else(|| default_k_hill(s.n()));
        let report = tail_index_report(s, k_hill, q.side.unwrap_or_default(), q.warn_ratio.unwrap_or(DEFAULT_WARN_RATIO));
        let (tail, tail_error) = match report {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
        render(&Summary { n: s.n(), dims: s.dims(), column_names: s.column_names(), dropped_rows: ds.dropped_rows, tail, tail_error })
    })
    .await?;
    Ok(json_response(StatusCode::OK, body))
}

#[derive(Deserialize)]
struct AngularQuery {
    k: usize,
    signs: Option<String>,
}

async fn angular(State(state): State<Shared>, Path(id): Path<String>, Query(q): Query<AngularQuery>) -> Result<Response, ApiError> {
    let Some(ds) = state.dataset(&id) else { return Ok(not_found(&id)) };
    let body = blocking(move || {
        let signs = q.signs.as_deref().map(parse::signs).transpose()?;
        let report: AngularReport = run_angular(&ds.sample, q.k, signs.as_deref())?;
        render(&report)
    })
    .await?;
    Ok(json_response(StatusCode::OK, body))
}

#[derive(Deserialize)]
struct EstimateQuery {
    k: usize,
    m: usize,
    q: Option<f64>,
    signs: Option<String>,
}

async fn estimate(State(state): State<Shared>, Path(id): Path<String>, Query(q): Query<EstimateQuery>) -> Result<Response, ApiError> {
    let Some(ds) = state.dataset(&id) else { return Ok(not_found(&id)) };
    let signs = q.signs.as_deref().map(parse::signs).transpose()?;
    let params = EstimateParams { k: q.k, m: q.m, q: q.q.unwrap_or(0.0), signs };
    let key = EstimateKey { id, k: params.k, m: params.m, q_bits: params.q.to_bits(), signs: params.signs.clone() };
    if let Some(hit) = state.estimates.lock().expect("cache lock").get(&key).cloned() {
        return Ok(json_response(StatusCode::OK, hit.as_ref().clone()));
    }
    let body = blocking(move || render(&EstimateReport::from(&run_estimate(&ds.sample, &params)?))).await?;
    state.estimates.lock().expect("cache lock").put(key, Arc::new(body.clone()));
    Ok(json_response(StatusCode::OK, body))
}

async fn test(State(state): State<Shared>, Path(id): Path<String>, Json(params): Json<TestParams>) -> Result<Response, ApiError> {
    let Some(ds) = state.dataset(&id) else { return Ok(not_found(&id)) };
    let body = blocking(move || render(&run_test(&ds.sample, &params)?)).await?;
    Ok(json_response(StatusCode::OK, body))
}
