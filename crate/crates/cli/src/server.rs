//! JSON API for interactive game sessions.
//!
//! | method | path                  | body                                   |
//! |--------|-----------------------|----------------------------------------|
//! | POST   | `/session`            | `{kind, c, seed?, target_n, move_budget?}` |
//! | POST   | `/session/{id}/move`  | `{symbol}` (0-based)                   |
//! | GET    | `/session/{id}`       |                                        |
//! | GET    | `/session/{id}/trace` |                                        |
//! | DELETE | `/session/{id}`       |                                        |
//!
//! Errors come back as `{"error": "..."}` with 400 for bad input or a move
//! after the game ended, 404 for an unknown session and 409 when another
//! request is already working on the same session.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex as StdMutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;
use thuelab_core::session::{GameSession, SessionConfig, SessionKind};
use tokio::sync::Mutex;

pub type SharedSession = Arc<Mutex<GameSession>>;

#[derive(Clone, Default)]
pub struct AppState {
    inner: Arc<Inner>,
}

#[derive(Default)]
struct Inner {
    sessions: StdMutex<HashMap<u64, SharedSession>>,
    next_id: AtomicU64,
    default_seed: u64,
}

impl AppState {
    /// `default_seed` is used by sessions created without a seed.
    pub fn new(default_seed: u64) -> Self {
        Self {
            inner: Arc::new(Inner {
                default_seed,
                ..Inner::default()
            }),
        }
    }

    pub fn session(&self, id: u64) -> Option<SharedSession> {
        self.sessions().get(&id).cloned()
    }

    pub fn len(&self) -> usize {
        self.sessions().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn sessions(&self) -> std::sync::MutexGuard<'_, HashMap<u64, SharedSession>> {
        // A panic while holding the map lock cannot leave it half-updated.
        self.inner.sessions.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn insert(&self, session: GameSession) -> u64 {
        let id = self.inner.next_id.fetch_add(1, Ordering::Relaxed) + 1;
        self.sessions().insert(id, Arc::new(Mutex::new(session)));
        id
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/session", post(create))
        .route("/session/{id}", get(show).delete(remove))
        .route("/session/{id}/move", post(play))
        .route("/session/{id}/trace", get(trace))
        .with_state(state)
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        Self::bad_request(r.body_text())
    }
}

impl From<thuelab_core::Error> for ApiError {
    fn from(e: thuelab_core::Error) -> Self {
        Self::bad_request(e.to_string())
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn parse_id(raw: &str) -> ApiResult<u64> {
    raw.parse()
        .map_err(|_| ApiError::new(StatusCode::NOT_FOUND, format!("no session {raw:?}")))
}

fn lookup(state: &AppState, raw: &str) -> ApiResult<SharedSession> {
    let id = parse_id(raw)?;
    state
        .session(id)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no session {id}")))
}

fn busy() -> ApiError {
    ApiError::new(StatusCode::CONFLICT, "session is busy with another request")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateRequest {
    kind: SessionKind,
    c: usize,
    seed: Option<u64>,
    target_n: usize,
    move_budget: Option<usize>,
}

async fn create(
    State(state): State<AppState>,
    body: Result<Json<CreateRequest>, JsonRejection>,
) -> ApiResult<impl IntoResponse> {
    let Json(req) = body?;
    let mut config = SessionConfig::new(
        req.kind,
        req.c,
        req.seed.unwrap_or(state.inner.default_seed),
        req.target_n,
    );
    if let Some(b) = req.move_budget {
        config.move_budget = b;
    }
    let session = GameSession::new(config)?;
    let snapshot = session.state();
    let id = state.insert(session);
    Ok((StatusCode::CREATED, Json(json!({ "id": id, "state": snapshot }))))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveRequest {
    symbol: usize,
}

async fn play(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> ApiResult<impl IntoResponse> {
    let session = lookup(&state, &id)?;
    let Json(req) = body?;
    let mut game = session.try_lock().map_err(|_| busy())?;
    let appended = game.apply_ben(req.symbol)?;
    let erasures: Vec<_> = appended.iter().filter(|m| m.erased > 0).collect();
    let snapshot = game.state();
    Ok(Json(json!({
        "appended": appended,
        "erasures": erasures,
        "repetition": snapshot.repetition,
        "status": snapshot.status,
        "state": snapshot,
    })))
}

async fn show(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    let session = lookup(&state, &id)?;
    let game = session.try_lock().map_err(|_| busy())?;
    Ok(Json(game.state()))
}

async fn trace(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    let session = lookup(&state, &id)?;
    let game = session.try_lock().map_err(|_| busy())?;
    Ok(Json(game.trace()))
}

async fn remove(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<StatusCode> {
    let id = parse_id(&id)?;
    match state.sessions().remove(&id) {
        Some(_) => Ok(StatusCode::NO_CONTENT),
        None => Err(ApiError::new(StatusCode::NOT_FOUND, format!("no session {id}"))),
    }
}

/// Serves until Ctrl-C.
pub async fn serve(host: &str, port: u16, seed: u64) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(seed)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
