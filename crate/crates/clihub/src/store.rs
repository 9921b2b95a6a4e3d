//! Flat-file annotation store: one JSON file per item under `items/`,
//! holding the item's tokens and every annotation record for it.
//!
//! Files are replaced by writing a temporary file in the same directory and
//! renaming it over the old one, so a reader never sees a partial record.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use codemix::corpus::CorpusRecord;
use codemix::langid::LangTag;
use codemix::sentiment::Polarity;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const ITEMS_DIR: &str = "items";
/// Annotator id of the automatic pre-annotation.
pub const SYSTEM_ANNOTATOR: &str = "system";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    System,
    Human,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub item_id: i64,
    pub annotator_id: String,
    pub lang_tags: Vec<LangTag>,
    pub sentiment: Polarity,
    pub created_at: DateTime<Utc>,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredItem {
    pub item_id: i64,
    pub text: String,
    pub tokens: Vec<String>,
    /// The system record first, then human records in submission order.
    pub records: Vec<AnnotationRecord>,
}

impl StoredItem {
    pub fn record_of(&self, annotator: &str) -> Option<&AnnotationRecord> {
        self.records.iter().find(|r| r.annotator_id == annotator)
    }

    pub fn system_record(&self) -> &AnnotationRecord {
        &self.records[0]
    }

    pub fn humans(&self) -> impl Iterator<Item = &AnnotationRecord> {
        self.records.iter().filter(|r| r.source == Source::Human)
    }

    fn check(&self) -> Result<(), String> {
        let Some(first) = self.records.first() else {
            return Err("no system pre-annotation".into());
        };
        if first.source != Source::System || first.annotator_id != SYSTEM_ANNOTATOR {
            return Err("first record is not the system pre-annotation".into());
        }
        let mut seen = Vec::new();
        for r in &self.records {
            if r.item_id != self.item_id {
                return Err(format!(
                    "record for item {} filed under item {}",
                    r.item_id, self.item_id
                ));
            }
            if r.lang_tags.len() != self.tokens.len() {
                return Err(format!(
                    "record by {:?} has {} tags for {} tokens",
                    r.annotator_id,
                    r.lang_tags.len(),
                    self.tokens.len()
                ));
            }
            if (r.source == Source::System) != (r.annotator_id == SYSTEM_ANNOTATOR) {
                return Err(format!(
                    "record by {:?} has source {:?}",
                    r.annotator_id, r.source
                ));
            }
            if seen.contains(&&r.annotator_id) {
                return Err(format!("two records by {:?}", r.annotator_id));
            }
            seen.push(&r.annotator_id);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pending,
    Done,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorkQueueItem {
    pub item_id: i64,
    pub text: String,
    pub tokens: Vec<String>,
    pub system_pre_annotation: AnnotationRecord,
    pub status: Status,
}

/// A submitted annotation before it is stamped and stored.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct AnnotationInput {
    pub annotator_id: String,
    pub lang_tags: Vec<String>,
    pub sentiment: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub path: PathBuf,
    pub message: String,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path.display(), self.message)
    }
}

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("store is corrupt:\n{}", .0.iter().map(|p| format!("  {p}")).collect::<Vec<_>>().join("\n"))]
    Corrupt(Vec<Problem>),
    #[error("{0} is not an initialized store (no {ITEMS_DIR}/ directory)")]
    Missing(PathBuf),
    #[error("store at {0} already has items")]
    NotEmpty(PathBuf),
    #[error("no item {0}")]
    UnknownItem(i64),
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug)]
pub struct Store {
    dir: PathBuf,
    items: BTreeMap<i64, StoredItem>,
}

impl Store {
    /// Creates a store seeded with system pre-annotations.
    pub fn create(dir: impl AsRef<Path>, records: &[CorpusRecord]) -> Result<Store, StoreError> {
        let dir = dir.as_ref().to_path_buf();
        let items_dir = dir.join(ITEMS_DIR);
        if items_dir.is_dir()
            && fs::read_dir(&items_dir)
                .map_err(io_err(&items_dir))?
                .next()
                .is_some()
        {
            return Err(StoreError::NotEmpty(dir));
        }
        fs::create_dir_all(&items_dir).map_err(io_err(&items_dir))?;
        let now = Utc::now();
        let mut store = Store {
            dir,
            items: BTreeMap::new(),
        };
        for r in records {
            if store.items.contains_key(&r.id) {
                return Err(StoreError::Invalid(format!("duplicate item id {}", r.id)));
            }
            let item = StoredItem {
                item_id: r.id,
                text: r.text.clone(),
                tokens: r.tokens.iter().map(|t| t.text.clone()).collect(),
                records: vec![AnnotationRecord {
                    item_id: r.id,
                    annotator_id: SYSTEM_ANNOTATOR.into(),
                    lang_tags: r.tags(),
                    sentiment: r.sentiment,
                    created_at: now,
                    source: Source::System,
                }],
            };
            store.persist(&item)?;
            store.items.insert(r.id, item);
        }
        Ok(store)
    }

    /// Opens an existing store, validating every item file. Any problem
    /// makes the whole store unusable.
    pub fn open(dir: impl AsRef<Path>) -> Result<Store, StoreError> {
        let dir = dir.as_ref().to_path_buf();
        let items_dir = dir.join(ITEMS_DIR);
        if !items_dir.is_dir() {
            return Err(StoreError::Missing(dir));
        }
        let mut items = BTreeMap::new();
        let mut problems = Vec::new();
        let mut entries: Vec<PathBuf> = fs::read_dir(&items_dir)
            .map_err(io_err(&items_dir))?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<_, _>>()
            .map_err(io_err(&items_dir))?;
        entries.sort();
        for path in entries {
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            // leftovers of an interrupted write
            if name.starts_with('.') {
                continue;
            }
            let problem = |message: String| Problem {
                path: path.clone(),
                message,
            };
            let Some(stem) = name.strip_suffix(".json") else {
                problems.push(problem("unexpected file".into()));
                continue;
            };
            let text = match fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    problems.push(problem(e.to_string()));
                    continue;
                }
            };
            let item: StoredItem = match serde_json::from_str(&text) {
                Ok(i) => i,
                Err(e) => {
                    problems.push(problem(format!("invalid JSON: {e}")));
                    continue;
                }
            };
            if stem != item.item_id.to_string() {
                problems.push(problem(format!("holds item {}", item.item_id)));
                continue;
            }
            if let Err(m) = item.check() {
                problems.push(problem(m));
                continue;
            }
            items.insert(item.item_id, item);
        }
        if !problems.is_empty() {
            return Err(StoreError::Corrupt(problems));
        }
        Ok(Store { dir, items })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn items(&self) -> impl Iterator<Item = &StoredItem> {
        self.items.values()
    }

    pub fn item(&self, id: i64) -> Option<&StoredItem> {
        self.items.get(&id)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Items in id order. Without an annotator, an item is done once any
    /// human has annotated it.
    pub fn queue(&self, status: Option<Status>, annotator: Option<&str>) -> Vec<WorkQueueItem> {
        self.items
            .values()
            .map(|item| {
                let done = match annotator {
                    Some(a) => item.record_of(a).is_some(),
                    None => item.humans().next().is_some(),
                };
                WorkQueueItem {
                    item_id: item.item_id,
                    text: item.text.clone(),
                    tokens: item.tokens.clone(),
                    system_pre_annotation: item.system_record().clone(),
                    status: if done { Status::Done } else { Status::Pending },
                }
            })
            .filter(|q| status.is_none_or(|s| s == q.status))
            .collect()
    }

    /// Validates and stores a human annotation, replacing any earlier
    /// record by the same annotator.
    pub fn annotate(
        &mut self,
        id: i64,
        input: AnnotationInput,
    ) -> Result<AnnotationRecord, StoreError> {
        let item = self.items.get(&id).ok_or(StoreError::UnknownItem(id))?;
        let annotator = input.annotator_id.trim();
        if annotator.is_empty() {
            return Err(StoreError::Invalid("annotator_id must not be empty".into()));
        }
        if annotator == SYSTEM_ANNOTATOR {
            return Err(StoreError::Invalid(format!(
                "annotator_id {SYSTEM_ANNOTATOR:?} is reserved"
            )));
        }
        if input.lang_tags.len() != item.tokens.len() {
            return Err(StoreError::Invalid(format!(
                "item {id} has {} tokens but {} lang_tags were given",
                item.tokens.len(),
                input.lang_tags.len()
            )));
        }
        let lang_tags = input
            .lang_tags
            .iter()
            .map(|t| match t.as_str() {
                "bn" => Ok(LangTag::Bn),
                "en" => Ok(LangTag::En),
                "un" => Ok(LangTag::Un),
                other => Err(StoreError::Invalid(format!(
                    "unknown language tag {other:?}; use bn, en or un"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sentiment = Polarity::from_value(input.sentiment)
            .map_err(|e| StoreError::Invalid(e.to_string()))?;
        let record = AnnotationRecord {
            item_id: id,
            annotator_id: annotator.to_string(),
            lang_tags,
            sentiment,
            created_at: Utc::now(),
            source: Source::Human,
        };
        let mut updated = item.clone();
        match updated
            .records
            .iter_mut()
            .find(|r| r.annotator_id == record.annotator_id)
        {
            Some(old) => *old = record.clone(),
            None => updated.records.push(record.clone()),
        }
        self.persist(&updated)?;
        self.items.insert(id, updated);
        Ok(record)
    }

    fn item_path(&self, id: i64) -> PathBuf {
        self.dir.join(ITEMS_DIR).join(format!("{id}.json"))
    }

    fn persist(&self, item: &StoredItem) -> Result<(), StoreError> {
        let path = self.item_path(item.item_id);
        let dir = self.dir.join(ITEMS_DIR);
        let body = serde_json::to_vec_pretty(item).expect("items serialize");
        let mut tmp = tempfile::Builder::new()
            .prefix(".tmp")
            .tempfile_in(&dir)
            .map_err(io_err(&dir))?;
        tmp.write_all(&body).map_err(io_err(tmp.path()))?;
        tmp.as_file().sync_all().map_err(io_err(&path))?;
        tmp.persist(&path).map_err(|e| StoreError::Io {
            path: path.clone(),
            source: e.error,
        })?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use codemix::corpus::TaggedWord;

    fn records() -> Vec<CorpusRecord> {
        (1..=3)
            .map(|id| CorpusRecord {
                id,
                text: "ami khub happy".into(),
                tokens: [
                    ("ami", LangTag::Bn),
                    ("khub", LangTag::Bn),
                    ("happy", LangTag::En),
                ]
                .map(|(t, tag)| TaggedWord {
                    text: t.into(),
                    tag,
                })
                .to_vec(),
                sentiment: Polarity::Positive,
            })
            .collect()
    }

    fn input(who: &str, tags: &[&str], s: i64) -> AnnotationInput {
        AnnotationInput {
            annotator_id: who.into(),
            lang_tags: tags.iter().map(|t| t.to_string()).collect(),
            sentiment: s,
        }
    }

    #[test]
    fn create_annotate_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let mut store = Store::create(dir.path(), &records()).unwrap();
        store
            .annotate(2, input("rina", &["bn", "bn", "en"], 1))
            .unwrap();
        store
            .annotate(2, input("rina", &["bn", "en", "en"], 0))
            .unwrap();
        let reopened = Store::open(dir.path()).unwrap();
        let item = reopened.item(2).unwrap();
        assert_eq!(item.records.len(), 2);
        assert_eq!(item.record_of("rina").unwrap().sentiment, Polarity::Neutral);
        assert_eq!(reopened.queue(Some(Status::Pending), Some("rina")).len(), 2);
        assert_eq!(reopened.queue(Some(Status::Done), None).len(), 1);
    }

    #[test]
    fn rejects_bad_annotations() {
        let dir = tempfile::tempdir().unwrap();
        let mut store = Store::create(dir.path(), &records()).unwrap();
        for bad in [
            input("rina", &["bn"], 1),
            input("rina", &["bn", "bn", "xx"], 1),
            input("rina", &["bn", "bn", "en"], 5),
            input("system", &["bn", "bn", "en"], 1),
            input(" ", &["bn", "bn", "en"], 1),
        ] {
            assert!(matches!(
                store.annotate(1, bad),
                Err(StoreError::Invalid(_))
            ));
        }
        assert!(matches!(
            store.annotate(9, input("a", &[], 0)),
            Err(StoreError::UnknownItem(9))
        ));
    }

    #[test]
    fn refuses_corrupt_store() {
        let dir = tempfile::tempdir().unwrap();
        Store::create(dir.path(), &records()).unwrap();
        let items = dir.path().join(ITEMS_DIR);
        fs::write(items.join(".tmpXYZ"), "{\"item_id\": 1, \"te").unwrap();
        Store::open(dir.path()).unwrap();
        fs::write(items.join("3.json"), "{\"item_id\": 3, \"te").unwrap();
        let Err(StoreError::Corrupt(problems)) = Store::open(dir.path()) else {
            panic!("expected corruption");
        };
        assert_eq!(problems.len(), 1);
        assert!(problems[0].path.ends_with("3.json"));
        assert!(Store::create(dir.path(), &records()).is_err());
    }
}
