use axum::body::{to_bytes, Body};
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use clusterbraid::claims::Settings;
use clusterbraid::serve::{router, AppState};
use serde_json::{json, Value};
use tower::ServiceExt;

const A2: &str = "quiver n=2\narrow a 1 2\n";

fn app() -> Router {
    router(AppState::new(Settings::default()))
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    (status, serde_json::from_slice(&bytes).expect("JSON body"))
}

async fn create(app: &Router, document: &str) -> (String, Value) {
    let (status, v) = call(app, Method::POST, "/session", Some(json!({ "document": document }))).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    (v["id"].as_str().unwrap().to_string(), v["state"].clone())
}

fn arrows(state: &Value) -> Vec<(u64, u64)> {
    state["quiver"]["arrows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| (a["source"].as_u64().unwrap(), a["target"].as_u64().unwrap()))
        .collect()
}

#[tokio::test]
async fn create_and_fetch() {
    let app = app();
    let (id, state) = create(&app, A2).await;
    assert_eq!(state["quiver"]["arrows"].as_array().unwrap().len(), 1);
    assert_eq!(state["quiver"]["n"], 2);
    assert_eq!(state["history"], json!([]));
    assert_eq!(state["v"], 1);
    let (status, fetched) = call(&app, Method::GET, &format!("/session/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(fetched, state);
}

#[tokio::test]
async fn mutation_reverses_and_returns() {
    let app = app();
    let (id, initial) = create(&app, A2).await;
    let uri = format!("/session/{id}/mutate");
    let (status, once) = call(&app, Method::POST, &uri, Some(json!({ "vertex": 2 }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(arrows(&once), vec![(2, 1)]);
    assert_eq!(once["history"], json!([2]));
    let (_, twice) = call(&app, Method::POST, &uri, Some(json!({ "vertex": 2 }))).await;
    assert_eq!(twice["history"], json!([2, 2]));
    assert_eq!(arrows(&twice), arrows(&initial));
}

#[tokio::test]
async fn undo_replays_history() {
    let app = app();
    let (id, initial) = create(&app, "quiver n=3\narrow a 1 2\narrow b 2 3\n").await;
    let mutate = format!("/session/{id}/mutate");
    let undo = format!("/session/{id}/undo");
    let (_, after1) = call(&app, Method::POST, &mutate, Some(json!({ "vertex": 1 }))).await;
    call(&app, Method::POST, &mutate, Some(json!({ "vertex": 2 }))).await;
    let (status, back) = call(&app, Method::POST, &undo, None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(back, after1);
    let (_, start) = call(&app, Method::POST, &undo, None).await;
    assert_eq!(start, initial);
    let (status, err) = call(&app, Method::POST, &undo, None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["code"], "empty_history");
}

#[tokio::test]
async fn neighbourhoods() {
    let app = app();
    let (id, _) = create(&app, A2).await;
    let (status, g) = call(&app, Method::GET, &format!("/session/{id}/ceg?radius=2"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(g["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(g["edges"].as_array().unwrap().len(), 10);
    assert_eq!(g["complete"], true);
    let (_, g) = call(&app, Method::GET, &format!("/session/{id}/ceg?radius=1"), None).await;
    assert_eq!(g["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(g["complete"], false);
    let (status, err) = call(&app, Method::GET, &format!("/session/{id}/ceg?radius=4&cap=2"), None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(err["code"], "cap_exceeded");
}

#[tokio::test]
async fn presentations() {
    let app = app();
    let (id, _) = create(&app, A2).await;
    let (status, p) = call(&app, Method::GET, &format!("/session/{id}/presentation?kind=br"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(p["kind"], "br");
    assert_eq!(p["generators"].as_array().unwrap().len(), 2);
    assert_eq!(p["relators"].as_array().unwrap().len(), 1);
    let (_, p) = call(&app, Method::GET, &format!("/session/{id}/presentation?kind=cbr&simplify=1"), None).await;
    assert_eq!(p["simplified"], true);
    assert!(p["text"].as_str().unwrap().starts_with("gens: "));
    let (status, err) = call(&app, Method::GET, &format!("/session/{id}/presentation?kind=xx"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["code"], "unknown_kind");
}

#[tokio::test]
async fn verification() {
    let app = app();
    let (id, _) = create(&app, A2).await;
    let (status, v) = call(&app, Method::GET, &format!("/session/{id}/verify?claim=ceg-a2-shape"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["status"], "verified");
    assert!(!v["transcript"].as_array().unwrap().is_empty());
    let (status, err) = call(&app, Method::GET, &format!("/session/{id}/verify?claim=nope"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["code"], "unknown_claim");
    let (status, _) = call(&app, Method::GET, &format!("/session/{id}/verify"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn errors_are_json() {
    let app = app();
    let (status, err) = call(&app, Method::POST, "/session", Some(json!({ "document": "quiver n=2\narrow a 1 9\n" }))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(err["code"], "parse_error");
    assert!(err["message"].as_str().unwrap().contains("line 2"));
    let (status, err) = call(&app, Method::POST, "/session", Some(json!({ "text": A2 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["code"], "bad_request");
    let (status, err) = call(&app, Method::GET, "/session/s999", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(err["code"], "unknown_session");
    let (status, err) = call(&app, Method::GET, "/nowhere", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(err["code"], "not_found");
    let (id, _) = create(&app, "quiver n=3\narrow a 1 2\narrow b 2 3\n").await;
    let (status, err) = call(&app, Method::POST, &format!("/session/{id}/mutate"), Some(json!({ "vertex": 7 }))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(err["code"], "invalid_vertex");
    let (status, err) = call(&app, Method::GET, &format!("/session/{id}/ceg?radius=x"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["code"], "bad_request");
}

#[tokio::test]
async fn triangulation_documents_are_accepted() {
    let app = app();
    let (_, state) = create(&app, "surface 0 1 5\narcs 2\ntriangle d0 d1 a0\ntriangle a0 d2 a1\ntriangle a1 d3 d4\n").await;
    assert_eq!(state["quiver"]["n"], 2);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn sessions_are_independent_under_concurrency() {
    let app = app();
    let mut ids = Vec::new();
    for _ in 0..8 {
        ids.push(create(&app, "quiver n=3\narrow a 1 2\narrow b 2 3\n").await.0);
    }
    let tasks: Vec<_> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let app = app.clone();
            let id = id.clone();
            tokio::spawn(async move {
                let steps = i % 3 + 1;
                for _ in 0..steps {
                    let (status, _) = call(&app, Method::POST, &format!("/session/{id}/mutate"), Some(json!({ "vertex": 2 }))).await;
                    assert_eq!(status, StatusCode::OK);
                }
                steps
            })
        })
        .collect();
    for (id, task) in ids.iter().zip(tasks) {
        let steps = task.await.unwrap();
        let (_, state) = call(&app, Method::GET, &format!("/session/{id}"), None).await;
        assert_eq!(state["history"].as_array().unwrap().len(), steps);
    }
}

/// Load A2, mutate 1, mutate 2, undo, then fetch the CBr presentation:
/// every state is the one a fresh replay produces.
#[tokio::test]
async fn golden_script() {
    let app = app();
    let (id, s0) = create(&app, A2).await;
    let mutate = format!("/session/{id}/mutate");
    let (_, s1) = call(&app, Method::POST, &mutate, Some(json!({ "vertex": 1 }))).await;
    let (_, s2) = call(&app, Method::POST, &mutate, Some(json!({ "vertex": 2 }))).await;
    let (_, s3) = call(&app, Method::POST, &format!("/session/{id}/undo"), None).await;
    assert_eq!(arrows(&s0), vec![(1, 2)]);
    assert_eq!(arrows(&s1), vec![(2, 1)]);
    assert_eq!(arrows(&s2), vec![(1, 2)]);
    assert_eq!(s3, s1);
    let (_, p) = call(&app, Method::GET, &format!("/session/{id}/presentation?kind=cbr"), None).await;
    let (other, _) = create(&app, s1["document"].as_str().unwrap()).await;
    let (_, q) = call(&app, Method::GET, &format!("/session/{other}/presentation?kind=cbr"), None).await;
    assert_eq!(p["text"], q["text"]);
}
