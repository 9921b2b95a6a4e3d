//! JSON API for the annotation tool, mounted under `/api/v1`.
//!
//! | method | path                          |                                   |
//! |--------|-------------------------------|-----------------------------------|
//! | GET    | `/items`                      | work queue, paged                 |
//! | GET    | `/items/{id}`                 | one item with all its records     |
//! | POST   | `/items/{id}/annotations`     | submit or replace an annotation   |
//! | GET    | `/agreement?a=..&b=..`        | kappa between two annotators      |
//! | GET    | `/guidelines`                 | language and sentiment guidelines |
//! | GET    | `/stats`                      | statistics over the gold export   |
//!
//! Errors are `{"error": "..."}` with a 4xx status.

use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use codemix::corpus::{aspect_stats, AspectReport, CorpusRecord};
use codemix::lexicon::LexiconSet;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::agreement::{agreement, Agreement};
use crate::export::{export_gold, Decision};
use crate::guidelines::{guidelines, Guidelines};
use crate::store::{
    AnnotationInput, AnnotationRecord, Status, Store, StoreError, StoredItem, WorkQueueItem,
};
use crate::summary::ComplexitySummary;

pub const DEFAULT_PER_PAGE: usize = 20;
pub const MAX_PER_PAGE: usize = 200;

pub struct AppState {
    pub store: RwLock<Store>,
    pub lexicons: LexiconSet,
    pub adjudicator: Option<String>,
}

pub type Shared = Arc<AppState>;

#[derive(Debug)]
pub struct ApiError(StatusCode, String);

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError(status, message.into())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        let status = match e {
            StoreError::UnknownItem(_) => StatusCode::NOT_FOUND,
            StoreError::Invalid(_) => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, e.to_string())
    }
}

type ApiResult<T> = Result<T, ApiError>;

pub fn router(state: Shared) -> Router {
    let api = Router::new()
        .route("/items", get(list_items))
        .route("/items/{id}", get(get_item))
        .route(
            "/items/{id}/annotations",
            axum::routing::post(post_annotation),
        )
        .route("/agreement", get(get_agreement))
        .route("/guidelines", get(get_guidelines))
        .route("/stats", get(get_stats));
    Router::new().nest("/api/v1", api).with_state(state)
}

#[derive(Debug, Deserialize)]
struct ListQuery {
    status: Option<String>,
    annotator: Option<String>,
    page: Option<usize>,
    per_page: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct Page {
    pub items: Vec<WorkQueueItem>,
    pub page: usize,
    pub per_page: usize,
    pub total: usize,
}

fn bad_request(m: impl Into<String>) -> ApiError {
    ApiError::new(StatusCode::BAD_REQUEST, m)
}

fn read_store(state: &AppState) -> std::sync::RwLockReadGuard<'_, Store> {
    state.store.read().unwrap_or_else(|p| p.into_inner())
}

async fn list_items(
    State(state): State<Shared>,
    Query(q): Query<ListQuery>,
) -> ApiResult<Json<Page>> {
    let status = match q.status.as_deref() {
        None | Some("all") => None,
        Some("pending") => Some(Status::Pending),
        Some("done") => Some(Status::Done),
        Some(other) => {
            return Err(bad_request(format!(
                "unknown status {other:?}; use pending, done or all"
            )))
        }
    };
    let page = q.page.unwrap_or(1);
    let per_page = q.per_page.unwrap_or(DEFAULT_PER_PAGE);
    if page == 0 {
        return Err(bad_request("page starts at 1"));
    }
    if per_page == 0 || per_page > MAX_PER_PAGE {
        return Err(bad_request(format!(
            "per_page must be between 1 and {MAX_PER_PAGE}"
        )));
    }
    let all = read_store(&state).queue(status, q.annotator.as_deref().filter(|a| !a.is_empty()));
    let total = all.len();
    let items = all
        .into_iter()
        .skip((page - 1) * per_page)
        .take(per_page)
        .collect();
    Ok(Json(Page {
        items,
        page,
        per_page,
        total,
    }))
}

async fn get_item(State(state): State<Shared>, Path(id): Path<i64>) -> ApiResult<Json<StoredItem>> {
    read_store(&state)
        .item(id)
        .cloned()
        .map(Json)
        .ok_or_else(|| StoreError::UnknownItem(id).into())
}

async fn post_annotation(
    State(state): State<Shared>,
    Path(id): Path<i64>,
    body: Bytes,
) -> ApiResult<(StatusCode, Json<AnnotationRecord>)> {
    let value: serde_json::Value =
        serde_json::from_slice(&body).map_err(|e| bad_request(format!("body is not JSON: {e}")))?;
    let input =
        parse_annotation(&value).map_err(|m| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, m))?;
    let mut store = state.store.write().unwrap_or_else(|p| p.into_inner());
    let record = store.annotate(id, input)?;
    log::info!("item {id}: annotation by {}", record.annotator_id);
    Ok((StatusCode::CREATED, Json(record)))
}

fn parse_annotation(v: &serde_json::Value) -> Result<AnnotationInput, String> {
    let obj = v.as_object().ok_or("body must be a JSON object")?;
    let annotator_id = obj
        .get("annotator_id")
        .and_then(|a| a.as_str())
        .ok_or("annotator_id must be a string")?;
    let lang_tags = obj
        .get("lang_tags")
        .and_then(|t| t.as_array())
        .ok_or("lang_tags must be an array of \"bn\", \"en\" or \"un\"")?
        .iter()
        .map(|t| {
            t.as_str()
                .map(String::from)
                .ok_or(format!("lang_tags entry {t} is not a string"))
        })
        .collect::<Result<_, _>>()?;
    let sentiment = obj
        .get("sentiment")
        .and_then(|s| s.as_i64())
        .ok_or("sentiment must be -1, 0 or 1")?;
    Ok(AnnotationInput {
        annotator_id: annotator_id.to_string(),
        lang_tags,
        sentiment,
    })
}

#[derive(Debug, Deserialize)]
struct AgreementQuery {
    a: Option<String>,
    b: Option<String>,
}

async fn get_agreement(
    State(state): State<Shared>,
    Query(q): Query<AgreementQuery>,
) -> ApiResult<Json<Agreement>> {
    let (Some(a), Some(b)) = (q.a, q.b) else {
        return Err(bad_request("both a and b are required"));
    };
    let store = read_store(&state);
    agreement(store.items(), &a, &b)
        .map(Json)
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))
}

async fn get_guidelines() -> Json<Guidelines> {
    Json(guidelines())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stats {
    /// Items with at least one human annotation; the statistics cover these.
    pub annotated: usize,
    pub unannotated: usize,
    pub aspects: AspectReport,
    pub complexity: ComplexitySummary,
}

pub fn stats(
    store: &Store,
    lexicons: &LexiconSet,
    adjudicator: Option<&str>,
) -> Result<Stats, String> {
    let gold = export_gold(store, adjudicator);
    let records: Vec<CorpusRecord> = gold
        .records
        .into_iter()
        .zip(&gold.provenance)
        .filter(|(_, p)| p.decision != Decision::System)
        .map(|(r, _)| r)
        .collect();
    let aspects = aspect_stats(&records, lexicons).map_err(|e| e.to_string())?;
    Ok(Stats {
        annotated: records.len(),
        unannotated: gold.provenance.len() - records.len(),
        aspects,
        complexity: ComplexitySummary::of(&records),
    })
}

async fn get_stats(State(state): State<Shared>) -> ApiResult<Json<Stats>> {
    let store = read_store(&state);
    stats(&store, &state.lexicons, state.adjudicator.as_deref())
        .map(Json)
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e))
}
