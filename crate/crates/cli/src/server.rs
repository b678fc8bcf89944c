//! HTTP/JSON service over the same operations as the command line.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use wortart::corpus::{read_corpus, write_corpus, AnnotatedCorpus};
use wortart::eval::Algorithm;
use wortart::lexicon::{answer, load_lexicon, start_classification, DialogueState, LexiconEntry, Question};
use wortart::seed;
use wortart::tagger::{candidate_tags, tag_church, train_models, Models};
use wortart::tagset::{parse_tag, PosCategory, Tag, TagSetKind};

use crate::cli::ServeConfig;
use crate::ops::{append_entry, completion_text, load_models, read_file, Engine, Failure};

struct Session {
    state: DialogueState,
    touched: Instant,
}

struct CorpusRecord {
    corpus: AnnotatedCorpus,
    revisions: Vec<u64>,
}

pub struct AppState {
    engine: RwLock<Arc<Engine>>,
    models: BTreeMap<TagSetKind, Models>,
    data_dir: PathBuf,
    lexicon_lock: Mutex<()>,
    sessions: Mutex<HashMap<String, Session>>,
    next_session: AtomicU64,
    timeout: Duration,
    corpora: Mutex<HashMap<String, Arc<Mutex<CorpusRecord>>>>,
}

impl AppState {
    /// Lexicon from `data_dir/lexicon.tsv` when present, models from the
    /// given files, and desk-corpus models for any tag set left over.
    pub fn new(cfg: &ServeConfig) -> Result<AppState, Failure> {
        let lex_path = cfg.data_dir.join("lexicon.tsv");
        let engine = Engine::load(lex_path.exists().then_some(lex_path.as_path()))?;
        let mut models = BTreeMap::new();
        for p in &cfg.models {
            let m = load_models(p)?;
            models.insert(m.kind, m);
        }
        for kind in [TagSetKind::Small, TagSetKind::Large] {
            if !models.contains_key(&kind) {
                let m = train_models(&seed::desk_train(), kind, wortart::eval::N_MAX)
                    .map_err(|e| Failure::Data(e.to_string()))?;
                models.insert(kind, m);
            }
        }
        Ok(AppState {
            engine: RwLock::new(Arc::new(engine)),
            models,
            data_dir: cfg.data_dir.clone(),
            lexicon_lock: Mutex::new(()),
            sessions: Mutex::new(HashMap::new()),
            next_session: AtomicU64::new(1),
            timeout: Duration::from_secs(cfg.session_timeout),
            corpora: Mutex::new(HashMap::new()),
        })
    }

    fn engine(&self) -> Arc<Engine> {
        self.engine.read().expect("engine lock").clone()
    }

    fn corpus_path(&self, id: &str) -> PathBuf {
        self.data_dir.join("corpora").join(format!("{id}.tsv"))
    }

    fn corpus(&self, id: &str) -> Result<Arc<Mutex<CorpusRecord>>, ApiError> {
        if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            return Err(ApiError::not_found(format!("no corpus {id:?}")));
        }
        let mut open = self.corpora.lock().expect("corpora lock");
        if let Some(rec) = open.get(id) {
            return Ok(rec.clone());
        }
        let path = self.corpus_path(id);
        if !path.exists() {
            return Err(ApiError::not_found(format!("no corpus {id:?}")));
        }
        let text = read_file(&path).map_err(|f| ApiError::internal(f.message()))?;
        let corpus = read_corpus(&text).map_err(|e| ApiError::internal(format!("{id}: {e}")))?;
        let rec = Arc::new(Mutex::new(CorpusRecord {
            revisions: vec![0; corpus.sentences.len()],
            corpus,
        }));
        open.insert(id.to_owned(), rec.clone());
        Ok(rec)
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> ApiError {
        ApiError {
            status,
            message: message.into(),
        }
    }

    fn bad_request(m: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::BAD_REQUEST, m)
    }

    fn not_found(m: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::NOT_FOUND, m)
    }

    fn conflict(m: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::CONFLICT, m)
    }

    fn internal(m: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, m)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

type ApiResult = Result<Response, ApiError>;

fn body<T: DeserializeOwned>(bytes: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(bytes).map_err(|e| ApiError::bad_request(format!("malformed body: {e}")))
}

fn ok(v: Value) -> ApiResult {
    Ok(Json(v).into_response())
}

pub fn router(state: Arc<AppState>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/analyze", post(analyze))
        .route("/tag", post(tag))
        .route("/lexicon/sessions", post(new_session))
        .route("/lexicon/sessions/:id/answers", post(session_answer))
        .route("/lexicon/entries", post(add_entry))
        .route("/corpora/:id", get(get_corpus))
        .route("/corpora/:id/sentences/:n", put(put_sentence))
        .route("/corpora/:id/export", get(export_corpus))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(tower_http::services::ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(cfg: ServeConfig) -> Result<(), Failure> {
    let state = Arc::new(AppState::new(&cfg)?);
    let app = router(state, cfg.static_dir.clone());
    let listener = tokio::net::TcpListener::bind(&cfg.addr)
        .await
        .map_err(|e| Failure::Data(format!("{}: {e}", cfg.addr)))?;
    eprintln!("listening on http://{}", cfg.addr);
    axum::serve(listener, app).await.map_err(|e| Failure::Data(e.to_string()))
}

#[derive(Deserialize)]
struct TextBody {
    text: String,
}

async fn analyze(State(st): State<Arc<AppState>>, bytes: Bytes) -> ApiResult {
    let req: TextBody = body(&bytes)?;
    let engine = st.engine();
    let tokens: Vec<Value> = engine
        .analyze_text(&req.text)
        .into_iter()
        .map(|(surface, readings)| {
            let analyses: Vec<Value> = readings
                .iter()
                .map(|a| json!({ "lemma": a.lemma, "tag": a.tag.to_string(), "segments": a.segments }))
                .collect();
            json!({ "surface": surface, "analyses": analyses })
        })
        .collect();
    ok(json!({ "tokens": tokens }))
}

#[derive(Deserialize)]
struct TagBody {
    text: String,
    #[serde(default)]
    tagset: Option<String>,
    #[serde(default)]
    algo: Option<String>,
    #[serde(default)]
    boundaries: Option<bool>,
}

async fn tag(State(st): State<Arc<AppState>>, bytes: Bytes) -> ApiResult {
    let req: TagBody = body(&bytes)?;
    let kind: TagSetKind = req
        .tagset
        .as_deref()
        .unwrap_or("large")
        .parse()
        .map_err(ApiError::bad_request)?;
    let algo: Algorithm = req
        .algo
        .as_deref()
        .unwrap_or("church")
        .parse()
        .map_err(ApiError::bad_request)?;
    let models = &st.models[&kind];
    let engine = st.engine();
    let tagged = engine
        .tag_text(&req.text, models, algo, req.boundaries.unwrap_or(true))
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    let sentences: Vec<Value> = tagged
        .iter()
        .map(|s| {
            let tokens: Vec<Value> = s
                .tokens
                .iter()
                .map(|(form, t)| {
                    let cands: Vec<Value> = candidate_tags(form, &engine.analyzer, models)
                        .into_iter()
                        .map(|(c, p)| json!({ "tag": c.to_string(), "p": p }))
                        .collect();
                    json!({ "surface": form, "tag": t.to_string(), "candidates": cands })
                })
                .collect();
            json!({ "tokens": tokens })
        })
        .collect();
    ok(json!({ "tagset": kind.as_str(), "algo": algo.as_str(), "sentences": sentences }))
}

fn question_json(q: &Question) -> Value {
    let alts: Vec<Value> = q
        .alternatives
        .iter()
        .map(|a| json!({ "number": a.number, "label": a.label, "form": a.form }))
        .collect();
    json!({ "id": q.id, "text": q.text, "alternatives": alts })
}

fn forms_json(engine: &Engine, entry: &LexiconEntry) -> Result<Vec<Value>, ApiError> {
    let table = engine.forms(entry).map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(table
        .rows
        .iter()
        .map(|r| json!({ "surface": r.surface, "tag": r.tag.to_string(), "lemma": r.lemma }))
        .collect())
}

fn session_json(st: &AppState, id: &str, s: &DialogueState) -> Result<Value, ApiError> {
    let mut v = json!({
        "session_id": id,
        "root": s.root,
        "pos": s.pos.code(),
        "answered": s.answered.iter().map(|(q, c)| json!({ "question": q, "choice": c })).collect::<Vec<_>>(),
        "complete": s.is_complete(),
        "question": s.pending.as_ref().map(question_json),
    });
    if let Some(entry) = s.entry() {
        v["message"] = json!(completion_text(s));
        v["entry"] = json!(entry.to_line());
        v["forms"] = json!(forms_json(&st.engine(), entry)?);
    }
    Ok(v)
}

#[derive(Deserialize)]
struct SessionBody {
    pos: String,
    root: String,
}

fn purge(sessions: &mut HashMap<String, Session>, timeout: Duration) {
    sessions.retain(|_, s| s.touched.elapsed() < timeout);
}

async fn new_session(State(st): State<Arc<AppState>>, bytes: Bytes) -> ApiResult {
    let req: SessionBody = body(&bytes)?;
    let pos = PosCategory::from_code(&req.pos).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let engine = st.engine();
    let state = start_classification(pos, &req.root, &engine.classes).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let id = format!("s{}", st.next_session.fetch_add(1, Ordering::Relaxed));
    let v = session_json(&st, &id, &state)?;
    let mut sessions = st.sessions.lock().expect("session lock");
    purge(&mut sessions, st.timeout);
    sessions.insert(
        id,
        Session {
            state,
            touched: Instant::now(),
        },
    );
    Ok((StatusCode::CREATED, Json(v)).into_response())
}

#[derive(Deserialize)]
struct AnswerBody {
    choice: usize,
}

async fn session_answer(State(st): State<Arc<AppState>>, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let req: AnswerBody = body(&bytes)?;
    let engine = st.engine();
    let next = {
        let mut sessions = st.sessions.lock().expect("session lock");
        purge(&mut sessions, st.timeout);
        let s = sessions
            .get_mut(&id)
            .ok_or_else(|| ApiError::not_found(format!("no session {id:?}")))?;
        let next = answer(&s.state, req.choice, &engine.classes).map_err(|e| ApiError::bad_request(e.to_string()))?;
        s.state = next.clone();
        s.touched = Instant::now();
        next
    };
    ok(session_json(&st, &id, &next)?)
}

#[derive(Deserialize)]
struct EntryBody {
    #[serde(default)]
    entry: Option<String>,
    #[serde(default)]
    session_id: Option<String>,
}

async fn add_entry(State(st): State<Arc<AppState>>, bytes: Bytes) -> ApiResult {
    let req: EntryBody = body(&bytes)?;
    let engine = st.engine();
    let entry: LexiconEntry = match (req.entry, req.session_id) {
        (Some(line), None) => {
            let lex = load_lexicon(&line, &engine.classes).map_err(|e| ApiError::bad_request(e.to_string()))?;
            match lex.entries() {
                [e] => e.clone(),
                _ => return Err(ApiError::bad_request("entry must be exactly one lexicon line")),
            }
        }
        (None, Some(id)) => {
            let sessions = st.sessions.lock().expect("session lock");
            let s = sessions
                .get(&id)
                .ok_or_else(|| ApiError::not_found(format!("no session {id:?}")))?;
            s.state
                .entry()
                .cloned()
                .ok_or_else(|| ApiError::bad_request("classification is not complete"))?
        }
        _ => return Err(ApiError::bad_request("give either entry or session_id")),
    };
    let forms = forms_json(&engine, &entry)?;
    {
        let _guard = st.lexicon_lock.lock().expect("lexicon lock");
        let mut lexicon = st.engine().lexicon.clone();
        if lexicon.insert(entry.clone()) {
            let rebuilt = Engine::new(lexicon).map_err(|f| ApiError::bad_request(f.message()))?;
            append_entry(&st.data_dir.join("lexicon.tsv"), &entry).map_err(|f| ApiError::internal(f.message()))?;
            *st.engine.write().expect("engine lock") = Arc::new(rebuilt);
        }
    }
    Ok((StatusCode::CREATED, Json(json!({ "entry": entry.to_line(), "forms": forms }))).into_response())
}

async fn get_corpus(State(st): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let rec = st.corpus(&id)?;
    let (corpus, revisions) = {
        let r = rec.lock().expect("corpus lock");
        (r.corpus.clone(), r.revisions.clone())
    };
    let engine = st.engine();
    let models = &st.models[&TagSetKind::Large];
    let mut sentences = Vec::new();
    for (i, s) in corpus.sentences.iter().enumerate() {
        let forms: Vec<&str> = s.iter().map(|t| t.surface.as_str()).collect();
        let predicted = tag_church(&forms, models, &engine.analyzer)
            .map(|t| t.tags())
            .map_err(|e| ApiError::internal(e.to_string()))?;
        let tokens: Vec<Value> = s
            .iter()
            .zip(predicted)
            .map(|(t, p)| {
                let cands: Vec<String> = candidate_tags(&t.surface, &engine.analyzer, models)
                    .into_iter()
                    .map(|(c, _)| c.to_string())
                    .collect();
                json!({
                    "surface": t.surface,
                    "tag": t.tag.to_string(),
                    "candidates": cands,
                    "predicted": p.to_string(),
                })
            })
            .collect();
        sentences.push(json!({ "index": i, "revision": revisions[i], "tokens": tokens }));
    }
    ok(json!({ "id": id, "sentences": sentences }))
}

#[derive(Deserialize)]
struct SentenceBody {
    tags: Vec<String>,
    #[serde(default, rename = "override")]
    override_: bool,
    #[serde(default)]
    revision: Option<u64>,
}

async fn put_sentence(State(st): State<Arc<AppState>>, Path((id, n)): Path<(String, usize)>, bytes: Bytes) -> ApiResult {
    let req: SentenceBody = body(&bytes)?;
    let rec = st.corpus(&id)?;
    let engine = st.engine();
    let models = &st.models[&TagSetKind::Large];
    let mut r = rec.lock().expect("corpus lock");
    let sentence = r
        .corpus
        .sentences
        .get(n)
        .ok_or_else(|| ApiError::not_found(format!("corpus {id:?} has no sentence {n}")))?;
    if req.tags.len() != sentence.len() {
        return Err(ApiError::bad_request(format!(
            "sentence {n} has {} tokens, got {} tags",
            sentence.len(),
            req.tags.len()
        )));
    }
    if let Some(rev) = req.revision.filter(|rev| *rev != r.revisions[n]) {
        return Err(ApiError::conflict(format!("sentence {n} is at revision {}, not {rev}", r.revisions[n])));
    }
    let mut tags: Vec<Tag> = Vec::with_capacity(req.tags.len());
    for (tok, s) in sentence.iter().zip(&req.tags) {
        let t = parse_tag(s, TagSetKind::Large).map_err(|e| ApiError::bad_request(e.to_string()))?;
        if !req.override_ && !candidate_tags(&tok.surface, &engine.analyzer, models).iter().any(|c| c.0 == t) {
            return Err(ApiError::conflict(format!("{s:?} is not a candidate for {:?}", tok.surface)));
        }
        tags.push(t);
    }
    let mut updated = r.corpus.clone();
    for (tok, t) in updated.sentences[n].iter_mut().zip(tags) {
        tok.tag = t;
    }
    let path = st.corpus_path(&id);
    let tmp = path.with_extension("tsv.tmp");
    std::fs::write(&tmp, write_corpus(&updated))
        .and_then(|_| std::fs::rename(&tmp, &path))
        .map_err(|e| ApiError::internal(e.to_string()))?;
    r.corpus = updated;
    r.revisions[n] += 1;
    ok(json!({ "index": n, "revision": r.revisions[n] }))
}

async fn export_corpus(State(st): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let rec = st.corpus(&id)?;
    let text = write_corpus(&rec.lock().expect("corpus lock").corpus);
    Ok(([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], text).into_response())
}
