//! The session API driven in-process through the router.

use std::sync::Arc;
use std::time::Duration;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use spg_cli::server::{router, AppState, DEFAULT_TTL};
use tower::ServiceExt;

fn example2() -> Value {
    json!({
        "directed": true, "n": 6, "labels": ["s", "a", "b", "c", "d", "t"],
        "edges": [[0, 1, 5], [1, 3, 1], [1, 2, 2], [3, 4, 5], [3, 5, 6], [2, 4, 1], [4, 5, 1]],
        "s": 0, "t": 5
    })
}

fn triangle() -> Value {
    json!({"directed": false, "n": 3, "edges": [[0, 1, 1], [1, 2, 1], [0, 2, 5]], "s": 0, "t": 2})
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = req.body(body.map_or(Body::empty(), |b| Body::from(b.to_string()))).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, value)
}

fn app() -> Router {
    router(AppState::new(DEFAULT_TTL))
}

#[tokio::test]
async fn solve_endpoint() {
    let app = app();
    let (status, body) = call(&app, Method::POST, "/api/solve", Some(example2())).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!((body["cost_a"].as_u64(), body["cost_b"].as_u64()), (Some(10), Some(2)));
    assert_eq!(body["walk_labels"], json!(["s", "a", "c", "d", "t"]));
    assert_eq!(body["algorithm"], "dag");
    let (status, body) = call(&app, Method::POST, "/api/solve?algorithm=engine", Some(example2())).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["algorithm"], "engine");
    let (status, body) = call(&app, Method::POST, "/api/solve?algorithm=cactus", Some(example2())).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].as_str().unwrap().contains("cactus"));
}

#[tokio::test]
async fn example2_session_shows_what_if_and_finishes_at_ten_two() {
    let app = app();
    let create = json!({"graph": example2(), "mode": {"kind": "human-vs-engine", "human": "A"}});
    let (status, body) = call(&app, Method::POST, "/api/sessions", Some(create)).await;
    assert_eq!(status, StatusCode::CREATED);
    let id = body["id"].as_str().unwrap().to_string();

    let (status, body) = call(&app, Method::GET, &format!("/api/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    let moves = body["session"]["legal_moves"].as_array().unwrap();
    assert_eq!(moves.len(), 1);
    assert_eq!(moves[0]["label"], "a");
    assert_eq!(moves[0]["what_if"], json!({"decider": 10, "follower": 2}));

    let (status, body) = call(&app, Method::POST, &format!("/api/sessions/{id}/moves"), Some(json!({"to": 1}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["played"], json!([1, 3]));
    let (status, body) =
        call(&app, Method::POST, &format!("/api/sessions/{id}/moves"), Some(json!({"label": "d", "player": "A"}))).await;
    assert_eq!(status, StatusCode::OK);
    let state = &body["session"]["state"];
    assert_eq!((state["cost_a"].as_u64(), state["cost_b"].as_u64()), (Some(10), Some(2)));
    assert_eq!(state["terminal"], true);
    assert_eq!(body["session"]["history"], json!([0, 1, 3, 4, 5]));

    let (status, _) = call(&app, Method::POST, &format!("/api/sessions/{id}/moves"), Some(json!({"to": 5}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn illegal_back_move_is_400_with_rule() {
    let app = app();
    let create = json!({"graph": triangle(), "mode": {"kind": "human-vs-human"}});
    let (_, body) = call(&app, Method::POST, "/api/sessions", Some(create)).await;
    let id = body["id"].as_str().unwrap().to_string();
    let uri = format!("/api/sessions/{id}/moves");
    let (status, _) = call(&app, Method::POST, &uri, Some(json!({"to": 1}))).await;
    assert_eq!(status, StatusCode::OK);
    let (status, body) = call(&app, Method::POST, &uri, Some(json!({"to": 0}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["rule"], "R2");
    let (status, body) = call(&app, Method::POST, &uri, Some(json!({"to": 1}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["rule"], "no-edge");
    // a rejected move leaves the game untouched
    let (_, body) = call(&app, Method::GET, &format!("/api/sessions/{id}"), None).await;
    assert_eq!(body["session"]["history"], json!([0, 1]));
    // hints are on for cacti even when not requested
    assert!(body["session"]["legal_moves"].as_array().unwrap().iter().all(|m| !m["what_if"].is_null()));
}

#[tokio::test]
async fn moves_out_of_turn_are_409() {
    let app = app();
    let create = json!({"graph": example2(), "mode": {"kind": "human-vs-engine", "human": "B"}});
    let (_, body) = call(&app, Method::POST, "/api/sessions", Some(create)).await;
    assert_eq!(body["session"]["history"], json!([0, 1]));
    let id = body["id"].as_str().unwrap().to_string();
    let uri = format!("/api/sessions/{id}/moves");
    let (status, body) = call(&app, Method::POST, &uri, Some(json!({"to": 3, "player": "A"}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["error"], "it is B's turn");
    let (status, body) = call(&app, Method::POST, &uri, Some(json!({"to": 3, "player": "B"}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["played"], json!([3, 4]));
}

#[tokio::test]
async fn unknown_and_deleted_sessions_are_404() {
    let app = app();
    let (status, _) = call(&app, Method::GET, "/api/sessions/00000000-0000-0000-0000-000000000000", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let create = json!({"graph": example2(), "mode": {"kind": "human-vs-human"}});
    let (_, body) = call(&app, Method::POST, "/api/sessions", Some(create)).await;
    let uri = format!("/api/sessions/{}", body["id"].as_str().unwrap());
    assert_eq!(call(&app, Method::DELETE, &uri, None).await.0, StatusCode::NO_CONTENT);
    assert_eq!(call(&app, Method::GET, &uri, None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, Method::DELETE, &uri, None).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn invalid_graphs_are_rejected() {
    let app = app();
    let bad = json!({"graph": {"directed": true, "n": 2, "edges": [[0, 1, -3]], "s": 0, "t": 1}, "mode": {"kind": "human-vs-human"}});
    let (status, body) = call(&app, Method::POST, "/api/sessions", Some(bad)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].is_string());
}

#[tokio::test]
async fn idle_sessions_expire() {
    let state = AppState::new(Duration::from_millis(50));
    let app = router(Arc::clone(&state));
    let create = json!({"graph": example2(), "mode": {"kind": "human-vs-human"}});
    let (_, body) = call(&app, Method::POST, "/api/sessions", Some(create)).await;
    assert_eq!(state.len(), 1);
    tokio::time::sleep(Duration::from_millis(120)).await;
    let uri = format!("/api/sessions/{}", body["id"].as_str().unwrap());
    assert_eq!(call(&app, Method::GET, &uri, None).await.0, StatusCode::NOT_FOUND);
    assert!(state.is_empty());
}

#[tokio::test]
async fn sessions_run_concurrently() {
    let app = app();
    let mut handles = Vec::new();
    for _ in 0..8 {
        let app = app.clone();
        handles.push(tokio::spawn(async move {
            let create = json!({"graph": example2(), "mode": {"kind": "human-vs-engine", "human": "A"}});
            let (_, body) = call(&app, Method::POST, "/api/sessions", Some(create)).await;
            let uri = format!("/api/sessions/{}/moves", body["id"].as_str().unwrap());
            call(&app, Method::POST, &uri, Some(json!({"to": 1}))).await;
            let (_, body) = call(&app, Method::POST, &uri, Some(json!({"to": 4}))).await;
            body["session"]["history"].clone()
        }));
    }
    for h in handles {
        assert_eq!(h.await.unwrap(), json!([0, 1, 3, 4, 5]));
    }
}
