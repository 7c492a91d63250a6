//! HTTP API for solving graphs and playing games in server-side sessions.
//!
//! Sessions live in memory and expire after an idle period. Each session is
//! behind its own lock, so moves on one game are applied one at a time while
//! other games and solves proceed in parallel on the blocking pool.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use spg_core::dispatch::{select, solve_with, Algorithm};
use spg_core::engine::vertex_limit;
use spg_core::rules::Player;
use spg_core::session::{Session, SessionMode, SessionView};
use spg_core::{GameGraph, GraphDocument, SpgError, VertexId};
use uuid::Uuid;

pub const DEFAULT_TTL: Duration = Duration::from_secs(30 * 60);

struct Entry {
    session: Session,
    last_used: Instant,
}

pub struct AppState {
    sessions: Mutex<HashMap<Uuid, Arc<Mutex<Entry>>>>,
    ttl: Duration,
}

impl AppState {
    pub fn new(ttl: Duration) -> Arc<AppState> {
        Arc::new(AppState { sessions: Mutex::new(HashMap::new()), ttl })
    }

    /// Drop sessions idle for longer than the TTL. Sessions locked by a
    /// request in flight are kept.
    pub fn prune(&self) {
        let now = Instant::now();
        self.sessions.lock().unwrap().retain(|_, entry| match entry.try_lock() {
            Ok(e) => now.duration_since(e.last_used) <= self.ttl,
            Err(_) => true,
        });
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn entry(&self, id: Uuid) -> Result<Arc<Mutex<Entry>>, ApiError> {
        self.prune();
        self.sessions.lock().unwrap().get(&id).cloned().ok_or(ApiError::UnknownSession(id))
    }
}

#[derive(Debug)]
pub enum ApiError {
    Game(SpgError),
    UnknownSession(Uuid),
    Internal(String),
}

impl From<SpgError> for ApiError {
    fn from(e: SpgError) -> Self {
        ApiError::Game(e)
    }
}

impl From<tokio::task::JoinError> for ApiError {
    fn from(e: tokio::task::JoinError) -> Self {
        ApiError::Internal(e.to_string())
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    /// The violated rule for rejected moves: `no-edge`, `R1` or `R2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, rule) = match &self {
            ApiError::Game(SpgError::IllegalMove { rule, .. }) => (StatusCode::BAD_REQUEST, Some(rule.to_string())),
            ApiError::Game(SpgError::OutOfTurn { .. } | SpgError::TerminalState) => (StatusCode::CONFLICT, None),
            ApiError::Game(_) => (StatusCode::BAD_REQUEST, None),
            ApiError::UnknownSession(_) => (StatusCode::NOT_FOUND, None),
            ApiError::Internal(_) => (StatusCode::INTERNAL_SERVER_ERROR, None),
        };
        let error = match self {
            ApiError::Game(e) => e.to_string(),
            ApiError::UnknownSession(id) => format!("no session {id}"),
            ApiError::Internal(msg) => msg,
        };
        (status, Json(ErrorBody { error, rule })).into_response()
    }
}

#[derive(Debug, Deserialize)]
pub struct SolveQuery {
    #[serde(default)]
    pub algorithm: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SolveResponse {
    pub cost_a: u64,
    pub cost_b: u64,
    pub walk: Vec<VertexId>,
    pub walk_labels: Vec<String>,
    pub payers: Vec<Player>,
    pub algorithm: String,
    pub node_count: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    pub graph: GraphDocument,
    pub mode: SessionMode,
    #[serde(default)]
    pub hints: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveRequest {
    /// Target vertex by index.
    #[serde(default)]
    pub to: Option<VertexId>,
    /// Target vertex by label, if `to` is absent.
    #[serde(default)]
    pub label: Option<String>,
    /// The side making the move, checked against the side to move.
    #[serde(default)]
    pub player: Option<Player>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SessionResponse {
    pub id: Uuid,
    /// Vertices moved to by this request, the engine's replies included.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub played: Vec<VertexId>,
    pub session: SessionView,
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/solve", post(solve))
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(get_session).delete(delete_session))
        .route("/api/sessions/{id}/moves", post(make_move))
        .with_state(state)
}

/// Serve the API on `addr` until the process is stopped.
pub async fn serve(addr: SocketAddr, ttl: Duration) -> std::io::Result<()> {
    let state = AppState::new(ttl);
    let sweeper = state.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval((ttl / 4).max(Duration::from_secs(1)));
        loop {
            tick.tick().await;
            sweeper.prune();
        }
    });
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}

async fn solve(Query(query): Query<SolveQuery>, Json(doc): Json<GraphDocument>) -> Result<Json<SolveResponse>, ApiError> {
    let requested = match query.algorithm.as_deref() {
        None => Algorithm::Auto,
        Some(name) => name.parse().map_err(|e: String| ApiError::Game(SpgError::MalformedInput(e)))?,
    };
    let response = tokio::task::spawn_blocking(move || -> Result<SolveResponse, SpgError> {
        let g = GameGraph::from_document(&doc, Default::default())?;
        let algorithm = if requested == Algorithm::Auto { select(&g) } else { requested };
        // the uncached search has no size guard of its own
        if algorithm == Algorithm::EngineDfs && g.n() > vertex_limit() {
            return Err(SpgError::TooManyVertices { vertices: g.n(), limit: vertex_limit() });
        }
        let (sol, used) = solve_with(&g, algorithm)?;
        Ok(SolveResponse {
            cost_a: sol.cost_a,
            cost_b: sol.cost_b,
            walk_labels: sol.walk.iter().map(|&v| g.label(v).to_string()).collect(),
            walk: sol.walk,
            payers: sol.payers,
            algorithm: used.to_string(),
            node_count: sol.node_count,
        })
    })
    .await??;
    Ok(Json(response))
}

async fn create_session(
    State(app): State<Arc<AppState>>,
    Json(req): Json<CreateSession>,
) -> Result<(StatusCode, Json<SessionResponse>), ApiError> {
    let (session, view) = tokio::task::spawn_blocking(move || -> Result<_, SpgError> {
        let g = GameGraph::from_document(&req.graph, Default::default())?;
        let mut session = Session::new(g, req.mode, req.hints)?;
        let view = session.view()?;
        Ok((session, view))
    })
    .await??;
    let id = Uuid::new_v4();
    app.prune();
    let entry = Entry { session, last_used: Instant::now() };
    app.sessions.lock().unwrap().insert(id, Arc::new(Mutex::new(entry)));
    Ok((StatusCode::CREATED, Json(SessionResponse { id, played: Vec::new(), session: view })))
}

async fn get_session(State(app): State<Arc<AppState>>, Path(id): Path<Uuid>) -> Result<Json<SessionResponse>, ApiError> {
    let entry = app.entry(id)?;
    let view = tokio::task::spawn_blocking(move || -> Result<_, SpgError> {
        let mut e = entry.lock().unwrap();
        e.last_used = Instant::now();
        e.session.view()
    })
    .await??;
    Ok(Json(SessionResponse { id, played: Vec::new(), session: view }))
}

async fn make_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<Uuid>,
    Json(req): Json<MoveRequest>,
) -> Result<Json<SessionResponse>, ApiError> {
    let entry = app.entry(id)?;
    let (played, view) = tokio::task::spawn_blocking(move || -> Result<_, SpgError> {
        let mut e = entry.lock().unwrap();
        e.last_used = Instant::now();
        let to = match (req.to, &req.label) {
            (Some(v), _) => v,
            (None, Some(label)) => e
                .session
                .graph()
                .vertex_by_label(label)
                .ok_or_else(|| SpgError::MalformedInput(format!("no vertex labelled `{label}`")))?,
            (None, None) => return Err(SpgError::MalformedInput("a move needs `to` or `label`".into())),
        };
        let played = e.session.play(req.player, to)?;
        Ok((played, e.session.view()?))
    })
    .await??;
    Ok(Json(SessionResponse { id, played, session: view }))
}

async fn delete_session(State(app): State<Arc<AppState>>, Path(id): Path<Uuid>) -> Result<StatusCode, ApiError> {
    match app.sessions.lock().unwrap().remove(&id) {
        Some(_) => Ok(StatusCode::NO_CONTENT),
        None => Err(ApiError::UnknownSession(id)),
    }
}
