//! Stateless JSON service over the analysis engine.
//!
//! `POST /analyze`, `POST /advise` and `GET /health`. Request and response
//! bodies are the types in [`mjzero::api`], so the command line and the
//! service print the same JSON.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::State;
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use mjzero::api::{self, AdviseRequest, AnalyzeRequest, ApiError, ErrorKind, Health};
use mjzero::policy::{Advisor, PolicyError, DEFAULT_HORIZON_CAP};
use tower_http::cors::{Any, CorsLayer};

pub const DEFAULT_LISTEN: &str = "127.0.0.1:8080";

#[derive(Clone, Debug)]
pub struct Config {
    pub listen: SocketAddr,
    pub horizon_cap: u32,
    /// Memo table size; `None` keeps the environment or built-in default.
    pub cache_capacity: Option<usize>,
    /// Origin allowed by CORS; `None` allows any.
    pub cors_origin: Option<String>,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            listen: DEFAULT_LISTEN.parse().expect("valid address"),
            horizon_cap: DEFAULT_HORIZON_CAP,
            cache_capacity: None,
            cors_origin: None,
        }
    }
}

struct Error(ApiError);

impl IntoResponse for Error {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.0.kind.http_status()).expect("known status");
        (status, Json(self.0)).into_response()
    }
}

impl From<ApiError> for Error {
    fn from(e: ApiError) -> Error {
        Error(e)
    }
}

impl From<JsonRejection> for Error {
    fn from(e: JsonRejection) -> Error {
        Error(ApiError::new(ErrorKind::Parse, "bad_request", e.body_text()))
    }
}

/// Runs `f` off the async workers; deep horizons can take a while.
async fn blocking<T, F>(f: F) -> Result<T, Error>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .unwrap_or_else(|e| Err(ApiError::new(ErrorKind::Config, "internal", e.to_string())))
        .map_err(Error)
}

async fn analyze(body: Result<Json<AnalyzeRequest>, JsonRejection>) -> Result<Json<api::AnalyzeResponse>, Error> {
    let Json(req) = body?;
    Ok(Json(blocking(move || api::analyze(&req)).await?))
}

async fn advise(
    State(advisor): State<Arc<Advisor>>,
    body: Result<Json<AdviseRequest>, JsonRejection>,
) -> Result<Json<api::AdviseResponse>, Error> {
    let Json(req) = body?;
    Ok(Json(blocking(move || api::advise(&req, &advisor)).await?))
}

async fn health(State(advisor): State<Arc<Advisor>>) -> Json<Health> {
    Json(Health::new(advisor.cap()))
}

fn cors(origin: Option<&str>) -> Result<CorsLayer, ApiError> {
    let layer = CorsLayer::new().allow_methods(Any).allow_headers(Any);
    Ok(match origin {
        None | Some("*") => layer.allow_origin(Any),
        Some(o) => {
            let value = HeaderValue::from_str(o)
                .map_err(|_| ApiError::new(ErrorKind::Config, "bad_origin", format!("invalid CORS origin {o:?}")))?;
            layer.allow_origin(value)
        }
    })
}

/// The application routes. Applies the cache size from `config` as a
/// side effect.
pub fn router(config: &Config) -> Result<Router, ApiError> {
    let advisor = Advisor::new(config.horizon_cap).map_err(|e| match e {
        PolicyError::HorizonTooLarge { k, cap } => ApiError::new(
            ErrorKind::Config,
            "horizon_exceeded",
            format!("horizon cap {k} is above the supported maximum {cap}"),
        ),
        e => ApiError::new(ErrorKind::Config, "zero_horizon", e.to_string()),
    })?;
    if let Some(n) = config.cache_capacity {
        mjzero::deficiency::set_cache_capacity(n);
    }
    Ok(Router::new()
        .route("/analyze", post(analyze))
        .route("/advise", post(advise))
        .route("/health", get(health))
        .layer(cors(config.cors_origin.as_deref())?)
        .with_state(Arc::new(advisor)))
}

/// Binds `config.listen` and serves until the process ends.
pub async fn serve(config: Config) -> std::io::Result<()> {
    let app = router(&config).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e))?;
    let listener = tokio::net::TcpListener::bind(config.listen).await?;
    axum::serve(listener, app).await
}
