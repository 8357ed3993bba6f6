use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use tableau_core::corpus::example;
use tableau_service::{router, Config, BODY_LIMIT};

fn app() -> Router {
    router(&Config::default())
}

async fn send(app: Router, req: Request<Body>) -> (StatusCode, String) {
    let res = app.oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn post(path: &str, body: impl Into<Body>) -> (StatusCode, Value) {
    let req = Request::post(path).header("content-type", "application/json").body(body.into()).unwrap();
    let (status, text) = send(app(), req).await;
    (status, serde_json::from_str(&text).unwrap())
}

async fn post_json(path: &str, body: Value) -> (StatusCode, Value) {
    post(path, body.to_string()).await
}

#[tokio::test]
async fn health() {
    let (status, text) = send(app(), Request::get("/health").body(Body::empty()).unwrap()).await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["status"], "ok");
    assert!(v["version"].is_string());
}

#[tokio::test]
async fn check_verdicts() {
    let (status, v) = post_json("/check", json!({"proof": example("transitivity").unwrap().text})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["verdict"], "valid");
    let (_, v) = post_json("/check", json!({"proof": example("countermodel-2").unwrap().text})).await;
    assert_eq!(v["verdict"], "countermodel");
    assert_eq!(v["countermodel"], json!({"A": "T", "C": "F"}));
    let (_, v) = post_json("/check", json!({"proof": example("fresh-variable-error").unwrap().text})).await;
    assert_eq!(v["verdict"], "invalid");
    assert_eq!(v["diagnostics"][0]["code"], "NOT_FRESH");
}

#[tokio::test]
async fn check_parse_error_is_still_ok() {
    let (status, v) = post_json("/check", json!({"proof": "T A pre\nX A conclusion"})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["verdict"], "parse_error");
}

#[tokio::test]
async fn grading_fields() {
    let proof = example("transitivity").unwrap().text;
    let (_, v) = post_json(
        "/check",
        json!({"proof": proof, "expect": "valid", "expected_sequent": "A, A->B, B->C |- C"}),
    )
    .await;
    assert_eq!(v["grade_ok"], true);
    let (_, v) = post_json("/check", json!({"proof": proof, "expect": "countermodel"})).await;
    assert_eq!(v["grade_ok"], false);
    let (_, v) = post_json("/check", json!({"proof": proof})).await;
    assert!(v.get("grade_ok").is_none());
    let (status, _) = post_json("/check", json!({"proof": proof, "expect": "maybe"})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn bad_requests() {
    assert_eq!(post_json("/check", json!({"proof": ""})).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(post("/check", "{not json").await.0, StatusCode::BAD_REQUEST);
    assert_eq!(post_json("/check", json!({"text": "T A pre"})).await.0, StatusCode::BAD_REQUEST);
    let huge = json!({"proof": "#".repeat(BODY_LIMIT + 1)}).to_string();
    let req = Request::post("/check").body(Body::from(huge)).unwrap();
    assert_eq!(send(app(), req).await.0, StatusCode::PAYLOAD_TOO_LARGE);
}

#[tokio::test]
async fn latex_endpoint() {
    let (status, v) = post_json("/latex", json!({"proof": example("transitivity").unwrap().text})).await;
    assert_eq!(status, StatusCode::OK);
    assert!(v["latex"].as_str().unwrap().contains("\\Tree"));
    let (_, v) =
        post_json("/latex", json!({"proof": example("transitivity-incomplete").unwrap().text})).await;
    assert!(v["latex"].as_str().unwrap().contains("\\color{red}"));
    let (status, v) = post_json("/latex", json!({"proof": "garbage ((("})).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["verdict"], "parse_error");
}

#[tokio::test]
async fn prove_endpoint() {
    let (status, v) = post_json("/prove", json!({"sequent": "A->B, B->C, A |- C"})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["result"], "closed");
    assert!(v["script"].as_str().unwrap().starts_with("1. T A->B pre"));
    let (_, v) = post_json("/prove", json!({"sequent": "A, A&B->C |- C"})).await;
    assert_eq!(v["result"], "open");
    assert_eq!(v["countermodel"], json!({"A": "T", "B": "F", "C": "F"}));
    let (status, _) = post_json("/prove", json!({"sequent": "Ax H(x) |- H(a)"})).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, _) = post_json("/prove", json!({"sequent": "A |-"})).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn cors_headers() {
    let req = Request::get("/health").header("origin", "http://localhost:5173").body(Body::empty()).unwrap();
    let res = app().oneshot(req).await.unwrap();
    assert_eq!(res.headers()["access-control-allow-origin"], "*");
}

#[tokio::test]
async fn concurrent_identical_requests() {
    let app = app();
    let body = json!({"proof": example("countermodel-1").unwrap().text}).to_string();
    let tasks: Vec<_> = (0..50)
        .map(|_| {
            let app = app.clone();
            let body = body.clone();
            tokio::spawn(
                async move { send(app, Request::post("/check").body(Body::from(body)).unwrap()).await },
            )
        })
        .collect();
    let mut bodies = Vec::new();
    for t in tasks {
        let (status, text) = t.await.unwrap();
        assert_eq!(status, StatusCode::OK);
        bodies.push(text);
    }
    assert!(bodies.windows(2).all(|w| w[0] == w[1]));
}
