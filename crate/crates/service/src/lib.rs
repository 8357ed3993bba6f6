//! Stateless JSON endpoints over the tableau checker, exporter and prover.
//!
//! | route          | body                                         |
//! |----------------|----------------------------------------------|
//! | `POST /check`  | `{proof, expected_sequent?, expect?}`        |
//! | `POST /latex`  | `{proof}`                                    |
//! | `POST /prove`  | `{sequent}`                                  |
//! | `GET /health`  |                                              |

use std::io;

use axum::body::Bytes;
use axum::extract::DefaultBodyLimit;
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::net::TcpListener;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

use tableau_core::checker::Sequent;
use tableau_core::prover::{prove, ProverResult};
use tableau_core::report::{countermodel_json, to_pretty, CheckOptions, Expect, Outcome};
use tableau_core::script::serialize_proof;

/// Requests larger than this are refused with 413.
pub const BODY_LIMIT: usize = 1 << 20;

#[derive(Clone, Debug, Default)]
pub struct Config {
    /// Origins allowed by CORS; empty allows any.
    pub cors_origins: Vec<HeaderValue>,
}

#[derive(Deserialize)]
struct CheckRequest {
    proof: String,
    #[serde(default)]
    expected_sequent: Option<String>,
    #[serde(default)]
    expect: Option<String>,
}

#[derive(Deserialize)]
struct LatexRequest {
    proof: String,
}

#[derive(Deserialize)]
struct ProveRequest {
    sequent: String,
}

struct Reply(StatusCode, Value);

impl IntoResponse for Reply {
    fn into_response(self) -> Response {
        (self.0, [(header::CONTENT_TYPE, "application/json")], to_pretty(&self.1)).into_response()
    }
}

fn error(status: StatusCode, message: impl Into<String>) -> Reply {
    Reply(status, json!({ "error": message.into() }))
}

fn decode<T: DeserializeOwned>(body: &Bytes) -> Result<T, Reply> {
    serde_json::from_slice(body)
        .map_err(|e| error(StatusCode::BAD_REQUEST, format!("malformed request: {e}")))
}

fn require_proof(proof: &str) -> Result<(), Reply> {
    if proof.trim().is_empty() {
        return Err(error(StatusCode::BAD_REQUEST, "the proof is empty"));
    }
    Ok(())
}

fn check_request(body: &Bytes) -> Result<Reply, Reply> {
    let req: CheckRequest = decode(body)?;
    require_proof(&req.proof)?;
    let expect = req
        .expect
        .as_deref()
        .map(str::parse::<Expect>)
        .transpose()
        .map_err(|e| error(StatusCode::BAD_REQUEST, format!("bad 'expect': {e}")))?;
    let expected_sequent = req
        .expected_sequent
        .as_deref()
        .map(Sequent::parse)
        .transpose()
        .map_err(|e| error(StatusCode::BAD_REQUEST, format!("bad 'expected_sequent': {e}")))?;
    let opts = CheckOptions { expect, expected_sequent, latex: false };
    Ok(Reply(StatusCode::OK, Outcome::from_text(&req.proof).to_json(&opts)))
}

fn latex_request(body: &Bytes) -> Result<Reply, Reply> {
    let req: LatexRequest = decode(body)?;
    require_proof(&req.proof)?;
    let outcome = Outcome::from_text(&req.proof);
    match outcome.latex() {
        Some(latex) => Ok(Reply(StatusCode::OK, json!({ "latex": latex }))),
        None => Err(Reply(StatusCode::UNPROCESSABLE_ENTITY, outcome.to_json(&CheckOptions::default()))),
    }
}

fn prove_request(body: &Bytes) -> Result<Reply, Reply> {
    let req: ProveRequest = decode(body)?;
    let seq =
        Sequent::parse(&req.sequent).map_err(|e| error(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    match prove(&seq).map_err(|e| error(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))? {
        ProverResult::Closed(script) => {
            Ok(Reply(StatusCode::OK, json!({ "result": "closed", "script": serialize_proof(&script) })))
        }
        ProverResult::Open(model) => {
            Ok(Reply(StatusCode::OK, json!({ "result": "open", "countermodel": countermodel_json(&model) })))
        }
    }
}

fn either(r: Result<Reply, Reply>) -> Reply {
    r.unwrap_or_else(|e| e)
}

async fn check(body: Bytes) -> Reply {
    either(check_request(&body))
}

async fn latex(body: Bytes) -> Reply {
    either(latex_request(&body))
}

async fn prove_route(body: Bytes) -> Reply {
    tokio::task::spawn_blocking(move || either(prove_request(&body)))
        .await
        .unwrap_or_else(|e| error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))
}

async fn health() -> Reply {
    Reply(StatusCode::OK, json!({ "status": "ok", "version": env!("CARGO_PKG_VERSION") }))
}

pub fn router(config: &Config) -> Router {
    let origins = if config.cors_origins.is_empty() {
        AllowOrigin::from(Any)
    } else {
        AllowOrigin::list(config.cors_origins.clone())
    };
    let cors = CorsLayer::new().allow_origin(origins).allow_methods(Any).allow_headers(Any);
    Router::new()
        .route("/check", post(check))
        .route("/latex", post(latex))
        .route("/prove", post(prove_route))
        .route("/health", get(health))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .layer(cors)
}

/// Serves until Ctrl-C.
pub async fn serve(listener: TcpListener, config: Config) -> io::Result<()> {
    axum::serve(listener, router(&config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
