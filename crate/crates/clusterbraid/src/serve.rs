//! HTTP JSON API backing the explorer.

use std::net::SocketAddr;
use std::sync::{Arc, Mutex};

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use crate::claims::{self, Settings};
use crate::export::VerdictJson;
use crate::ops::Kind;
use crate::session::{Session, SessionStore, StateJson};
use crate::Error;

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<SessionStore>,
    settings: Arc<Settings>,
}

impl AppState {
    pub fn new(settings: Settings) -> Self {
        AppState { sessions: Arc::new(SessionStore::default()), settings: Arc::new(settings) }
    }
}

#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError { status, code, message: message.into() }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UnknownClaim(_) | Error::UnknownKind(_) => StatusCode::BAD_REQUEST,
            Error::EmptyHistory => StatusCode::CONFLICT,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError::new(status, e.code(), e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "bad_request", e.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(e: QueryRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "bad_request", e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/session", post(create))
        .route("/session/{id}", get(show))
        .route("/session/{id}/mutate", post(mutate))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/ceg", get(ceg))
        .route("/session/{id}/presentation", get(presentation))
        .route("/session/{id}/verify", get(verify))
        .fallback(|| async { ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint") })
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, settings: Settings) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(settings))).await
}

fn session(state: &AppState, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
    state
        .sessions
        .get(id)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session `{id}`")))
}

/// Runs `f` on the locked session off the async workers.
async fn with_session<T: Send + 'static>(
    state: &AppState,
    id: &str,
    f: impl FnOnce(&mut Session, &Settings) -> Result<T, Error> + Send + 'static,
) -> Result<T, ApiError> {
    let s = session(state, id)?;
    let settings = state.settings.clone();
    tokio::task::spawn_blocking(move || {
        let mut guard = s.lock().unwrap_or_else(|p| p.into_inner());
        f(&mut guard, &settings)
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
    .map_err(ApiError::from)
}

#[derive(Debug, Deserialize)]
struct CreateBody {
    document: String,
}

#[derive(Debug, Serialize)]
struct Created {
    id: String,
    state: StateJson,
}

async fn create(State(state): State<AppState>, body: Result<Json<CreateBody>, JsonRejection>) -> Result<(StatusCode, Json<Created>), ApiError> {
    let Json(body) = body?;
    let s = state.sessions.create(&body.document)?;
    let s = s.lock().unwrap_or_else(|p| p.into_inner());
    Ok((StatusCode::CREATED, Json(Created { id: s.id().to_string(), state: s.state() })))
}

async fn show(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<StateJson> {
    with_session(&state, &id, |s, _| Ok(s.state())).await.map(Json)
}

#[derive(Debug, Deserialize)]
struct MutateBody {
    vertex: usize,
}

async fn mutate(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MutateBody>, JsonRejection>,
) -> ApiResult<StateJson> {
    let Json(body) = body?;
    with_session(&state, &id, move |s, _| {
        s.mutate(body.vertex)?;
        Ok(s.state())
    })
    .await
    .map(Json)
}

async fn undo(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<StateJson> {
    with_session(&state, &id, |s, _| {
        s.undo()?;
        Ok(s.state())
    })
    .await
    .map(Json)
}

#[derive(Debug, Deserialize)]
struct CegQuery {
    radius: Option<usize>,
    cap: Option<usize>,
}

async fn ceg(State(state): State<AppState>, Path(id): Path<String>, query: Result<Query<CegQuery>, QueryRejection>) -> Result<Response, ApiError> {
    let Query(q) = query?;
    with_session(&state, &id, move |s, settings| {
        let cap = q.cap.unwrap_or(settings.max_vertices).min(settings.max_vertices);
        s.ceg(q.radius.unwrap_or(2), cap)
    })
    .await
    .map(|doc| Json(doc).into_response())
}

#[derive(Debug, Deserialize)]
struct PresentationQuery {
    kind: Option<String>,
    simplify: Option<String>,
}

async fn presentation(
    State(state): State<AppState>,
    Path(id): Path<String>,
    query: Result<Query<PresentationQuery>, QueryRejection>,
) -> Result<Response, ApiError> {
    let Query(q) = query?;
    let kind: Kind = q.kind.as_deref().unwrap_or("cbr").parse()?;
    let simplify = matches!(q.simplify.as_deref(), Some("1" | "true" | "yes"));
    with_session(&state, &id, move |s, settings| s.presentation(kind, simplify, settings.max_vertices))
        .await
        .map(|doc| Json(doc).into_response())
}

#[derive(Debug, Deserialize)]
struct VerifyQuery {
    claim: Option<String>,
}

async fn verify(State(state): State<AppState>, Path(id): Path<String>, query: Result<Query<VerifyQuery>, QueryRejection>) -> ApiResult<VerdictJson> {
    let Query(q) = query?;
    let name = q.claim.ok_or_else(|| ApiError::new(StatusCode::BAD_REQUEST, "bad_request", "missing `claim` parameter"))?;
    let claim = claims::find(&name)?;
    with_session(&state, &id, move |_, settings| Ok(VerdictJson::new(claim.name, &claim.run(settings))))
        .await
        .map(Json)
}
