use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use wortart::corpus::{read_corpus, write_corpus};
use wortart_cli::server::{router, AppState};
use wortart_cli::ServeConfig;

const CORPUS: &str = "Wer\tPRO INR NOM MAS SIN PRO
braucht\tVER 3PE SIN PRÄ
eine\tART IND AKK FEM SIN
Post\tSUB AKK FEM SIN
?\tSZE

Die\tART DEF NOM FEM SIN
Frau\tSUB NOM FEM SIN
bringt\tVER 3PE SIN PRÄ
das\tART DEF AKK NEU SIN
Essen\tSUB AKK NEU SIN
.\tSZE
";

struct Fixture {
    dir: tempfile::TempDir,
    app: Router,
}

fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir_all(dir.path().join("corpora")).unwrap();
    std::fs::write(dir.path().join("corpora/demo.tsv"), CORPUS).unwrap();
    let www = dir.path().join("www");
    std::fs::create_dir_all(&www).unwrap();
    std::fs::write(www.join("index.html"), "<!doctype html><title>wortart</title>").unwrap();
    let cfg = ServeConfig {
        addr: "127.0.0.1:0".into(),
        data_dir: dir.path().to_path_buf(),
        models: Vec::new(),
        static_dir: Some(www.clone()),
        session_timeout: 1800,
    };
    let state = Arc::new(AppState::new(&cfg).unwrap());
    Fixture {
        app: router(state, Some(www)),
        dir,
    }
}

async fn send(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, String) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(v) => req.header("content-type", "application/json").body(Body::from(v.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn send_json(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let (status, text) = send(app, method, uri, body).await;
    (status, serde_json::from_str(&text).unwrap_or(Value::Null))
}

#[tokio::test]
async fn analyze_endpoint() {
    let f = fixture();
    let (status, v) = send_json(&f.app, Method::POST, "/analyze", Some(json!({ "text": "Küsse" }))).await;
    assert_eq!(status, StatusCode::OK);
    let tokens = v["tokens"].as_array().unwrap();
    assert_eq!(tokens.len(), 1);
    assert_eq!(tokens[0]["surface"], "Küsse");
    let analyses = tokens[0]["analyses"].as_array().unwrap();
    assert_eq!(analyses.len(), 7);
    assert!(analyses.iter().any(|a| a["lemma"] == "küssen" && a["tag"] == "VER IMP SIN"));
}

#[tokio::test]
async fn tag_endpoint() {
    let f = fixture();
    let (status, v) = send_json(
        &f.app,
        Method::POST,
        "/tag",
        Some(json!({ "text": "Die Frau bringt das Essen.", "tagset": "small" })),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["tagset"], "small");
    assert_eq!(v["algo"], "church");
    let tags: Vec<&str> = v["sentences"][0]["tokens"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["tag"].as_str().unwrap())
        .collect();
    assert_eq!(tags, ["ART DEF", "SUB", "VER", "ART DEF", "SUB", "SZE"]);
    let cands = v["sentences"][0]["tokens"][0]["candidates"].as_array().unwrap();
    assert!(cands.iter().any(|c| c["tag"] == "ART DEF" && c["p"].as_f64().unwrap() > 0.0));

    let (status, v) = send_json(
        &f.app,
        Method::POST,
        "/tag",
        Some(json!({ "text": "Ich meine meine Frau.", "algo": "varcontext" })),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["tagset"], "large");
    assert_eq!(v["sentences"][0]["tokens"].as_array().unwrap().len(), 5);

    let (status, v) = send_json(&f.app, Method::POST, "/tag", Some(json!({ "text": "x", "algo": "viterbi" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(v["error"].is_string());
    let (status, _) = send(&f.app, Method::POST, "/tag", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn classification_session_flow() {
    let f = fixture();
    let (status, v) = send_json(
        &f.app,
        Method::POST,
        "/lexicon/sessions",
        Some(json!({ "pos": "VER", "root": "telefonieren" })),
    )
    .await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(v["complete"], false);
    let id = v["session_id"].as_str().unwrap().to_owned();
    assert!(!v["question"]["alternatives"].as_array().unwrap().is_empty());

    let uri = format!("/lexicon/sessions/{id}/answers");
    let (status, _) = send_json(&f.app, Method::POST, &uri, Some(json!({ "choice": 99 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let mut v = v;
    let mut steps = 0;
    while v["complete"] == false {
        let (status, next) = send_json(&f.app, Method::POST, &uri, Some(json!({ "choice": 1 }))).await;
        assert_eq!(status, StatusCode::OK, "{next}");
        v = next;
        steps += 1;
        assert!(steps < 10);
    }
    assert_eq!(v["message"], "Verb klassifiziert!");
    assert_eq!(v["entry"], "telefonieren\tVER\tv_weak\tflags=no_ge_participle");
    let forms = v["forms"].as_array().unwrap();
    assert!(forms.iter().any(|r| r["surface"] == "telefoniert"));
    assert!(!forms.iter().any(|r| r["surface"] == "getelefoniert"));

    let (status, _) = send_json(&f.app, Method::POST, "/lexicon/sessions/nope/answers", Some(json!({ "choice": 1 }))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = send_json(
        &f.app,
        Method::POST,
        "/lexicon/sessions",
        Some(json!({ "pos": "XYZ", "root": "foo" })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (status, v) = send_json(&f.app, Method::POST, "/lexicon/entries", Some(json!({ "session_id": id }))).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(v["entry"], "telefonieren\tVER\tv_weak\tflags=no_ge_participle");
}

#[tokio::test]
async fn lexicon_entry_is_persisted_and_analyzable() {
    let f = fixture();
    let (status, _) = send_json(&f.app, Method::POST, "/analyze", Some(json!({ "text": "faxt" }))).await;
    assert_eq!(status, StatusCode::OK);

    let (status, v) = send_json(
        &f.app,
        Method::POST,
        "/lexicon/entries",
        Some(json!({ "entry": "faxen\tVER\tv_weak\tflags=no_ge_participle" })),
    )
    .await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    assert!(v["forms"].as_array().unwrap().iter().any(|r| r["surface"] == "faxt"));
    let saved = std::fs::read_to_string(f.dir.path().join("lexicon.tsv")).unwrap();
    assert!(saved.ends_with("faxen\tVER\tv_weak\tflags=no_ge_participle\n"));

    let (_, v) = send_json(&f.app, Method::POST, "/analyze", Some(json!({ "text": "faxt" }))).await;
    let analyses = v["tokens"][0]["analyses"].as_array().unwrap();
    assert!(analyses.iter().any(|a| a["lemma"] == "faxen" && a["tag"] == "VER 3PE SIN PRÄ"));

    let (status, _) = send_json(&f.app, Method::POST, "/lexicon/entries", Some(json!({ "entry": "faxen\tVER\tno_such_class" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = send_json(&f.app, Method::POST, "/lexicon/entries", Some(json!({}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn corpus_review_and_export() {
    let f = fixture();
    let (status, v) = send_json(&f.app, Method::GET, "/corpora/demo", None).await;
    assert_eq!(status, StatusCode::OK);
    let sentences = v["sentences"].as_array().unwrap();
    assert_eq!(sentences.len(), 2);
    assert_eq!(sentences[1]["revision"], 0);
    let tok = &sentences[1]["tokens"][0];
    assert_eq!(tok["surface"], "Die");
    assert_eq!(tok["tag"], "ART DEF NOM FEM SIN");
    assert!(tok["candidates"].as_array().unwrap().iter().any(|c| c == "ART DEF NOM FEM SIN"));
    assert!(tok["predicted"].is_string());

    let gold: Vec<String> = CORPUS.split("\n\n").nth(1).unwrap().lines().map(|l| l.split('\t').nth(1).unwrap().to_owned()).collect();
    let mut tags = gold.clone();
    tags[0] = "ART DEF AKK FEM SIN".into();
    let (status, v) = send_json(&f.app, Method::PUT, "/corpora/demo/sentences/1", Some(json!({ "tags": tags, "revision": 0 }))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["revision"], 1);

    let (status, _) = send_json(&f.app, Method::PUT, "/corpora/demo/sentences/1", Some(json!({ "tags": gold, "revision": 0 }))).await;
    assert_eq!(status, StatusCode::CONFLICT);

    let mut odd = gold.clone();
    odd[1] = "ADV".into();
    let (status, v) = send_json(&f.app, Method::PUT, "/corpora/demo/sentences/1", Some(json!({ "tags": odd }))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert!(v["error"].as_str().unwrap().contains("Frau"));
    let (status, v) = send_json(
        &f.app,
        Method::PUT,
        "/corpora/demo/sentences/1",
        Some(json!({ "tags": odd, "override": true, "revision": 1 })),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["revision"], 2);

    let (status, _) = send_json(&f.app, Method::PUT, "/corpora/demo/sentences/1", Some(json!({ "tags": ["SZE"] }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let mut bad = gold.clone();
    bad[0] = "NOPE".into();
    let (status, _) = send_json(&f.app, Method::PUT, "/corpora/demo/sentences/1", Some(json!({ "tags": bad }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = send_json(&f.app, Method::PUT, "/corpora/demo/sentences/7", Some(json!({ "tags": gold }))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let on_disk = std::fs::read_to_string(f.dir.path().join("corpora/demo.tsv")).unwrap();
    let (status, exported) = send(&f.app, Method::GET, "/corpora/demo/export", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(exported, on_disk);
    assert_eq!(exported, write_corpus(&read_corpus(&exported).unwrap()));
    assert!(exported.contains("Die\tART DEF NOM FEM SIN\nFrau\tADV\n"));
    assert!(exported.starts_with("Wer\tPRO INR NOM MAS SIN PRO\n"));
}

#[tokio::test]
async fn unknown_resources_and_static_files() {
    let f = fixture();
    for uri in ["/corpora/missing", "/corpora/missing/export", "/corpora/..%2Fetc/export"] {
        let (status, _) = send(&f.app, Method::GET, uri, None).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{uri}");
    }
    let (status, _) = send(&f.app, Method::POST, "/analyze", Some(json!({ "wrong": 1 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, body) = send(&f.app, Method::GET, "/", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(body.contains("wortart"));
}
