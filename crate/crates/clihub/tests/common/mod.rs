#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::{Arc, LazyLock, RwLock};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use clihub::api::{router, AppState};
use clihub::store::Store;
use codemix::corpus::{CorpusRecord, TaggedWord};
use codemix::langid::LangTag;
use codemix::lexicon::LexiconSet;
use codemix::sentiment::Polarity;
use serde_json::Value;
use tower::ServiceExt;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub static LEXICONS: LazyLock<LexiconSet> = LazyLock::new(|| {
    LexiconSet::load(data_dir().join("lexicons"))
        .unwrap()
        .lexicons
});

/// Writes a settings file pointing at the fixture lexicons.
pub fn config_file(dir: &Path, extra: &str) -> PathBuf {
    let path = dir.join("codemix.conf");
    let lex = data_dir().join("lexicons").canonicalize().unwrap();
    fs::write(&path, format!("lexicons = {}\n{extra}", lex.display())).unwrap();
    path
}

pub fn codemix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codemix"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .unwrap()
}

/// Runs the binary, asserts success and parses stdout as JSON.
pub fn codemix_json(args: &[&str]) -> Value {
    let out = codemix(args);
    assert!(
        out.status.success(),
        "codemix {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

const WORDS: [(&str, LangTag); 8] = [
    ("ami", LangTag::Bn),
    ("khub", LangTag::Bn),
    ("happy", LangTag::En),
    ("aj", LangTag::Bn),
    ("movie", LangTag::En),
    ("ta", LangTag::Bn),
    ("!", LangTag::Un),
    ("good", LangTag::En),
];

/// `n` small records with ids 1..=n and varied lengths and labels.
pub fn records(n: i64) -> Vec<CorpusRecord> {
    (1..=n)
        .map(|id| {
            let len = 3 + (id as usize % 4);
            let tokens: Vec<TaggedWord> = (0..len)
                .map(|j| {
                    let (w, tag) = WORDS[(id as usize * 3 + j) % WORDS.len()];
                    TaggedWord {
                        text: w.into(),
                        tag,
                    }
                })
                .collect();
            CorpusRecord {
                id,
                text: tokens
                    .iter()
                    .map(|t| t.text.as_str())
                    .collect::<Vec<_>>()
                    .join(" "),
                tokens,
                sentiment: Polarity::ALL[id as usize % 3],
            }
        })
        .collect()
}

pub fn state(store: Store, adjudicator: Option<&str>) -> Arc<AppState> {
    Arc::new(AppState {
        store: RwLock::new(store),
        lexicons: LEXICONS.clone(),
        adjudicator: adjudicator.map(String::from),
    })
}

pub async fn call(
    state: &Arc<AppState>,
    method: &str,
    uri: &str,
    body: Option<String>,
) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(Body::from).unwrap_or_else(Body::empty))
        .unwrap();
    let resp = router(state.clone()).oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX)
        .await
        .unwrap();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

pub fn annotation(annotator: &str, tags: &[LangTag], sentiment: Polarity) -> String {
    serde_json::json!({
        "annotator_id": annotator,
        "lang_tags": tags.iter().map(|t| t.as_str()).collect::<Vec<_>>(),
        "sentiment": sentiment.value(),
    })
    .to_string()
}
