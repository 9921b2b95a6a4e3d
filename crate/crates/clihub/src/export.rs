//! Gold export: one release record per item.
//!
//! The adjudicator's record wins outright when present. An item nobody has
//! annotated keeps its system pre-annotation. Otherwise each field
//! (every token's language tag, and the sentiment) takes the majority human
//! value. A tie goes to the system value if it is among the tied values,
//! else to the tied value chosen by the most recent human record.

use std::collections::BTreeMap;

use codemix::corpus::{CorpusRecord, TaggedWord};
use serde::Serialize;

use crate::store::{AnnotationRecord, Store, StoredItem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Adjudicator,
    Majority,
    System,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExportProvenance {
    pub id: i64,
    pub decision: Decision,
    pub annotators: Vec<String>,
    /// Fields where the human vote was tied.
    pub ties: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GoldExport {
    pub records: Vec<CorpusRecord>,
    pub provenance: Vec<ExportProvenance>,
    /// Items left out because they hold no record at all.
    pub skipped: Vec<i64>,
}

fn vote<T: Ord + Copy>(
    humans: &[&AnnotationRecord],
    system: T,
    field: impl Fn(&AnnotationRecord) -> T,
) -> (T, bool) {
    let mut counts: BTreeMap<T, usize> = BTreeMap::new();
    for r in humans {
        *counts.entry(field(r)).or_default() += 1;
    }
    let top = counts.values().copied().max().unwrap_or(0);
    let tied: Vec<T> = counts
        .iter()
        .filter(|(_, &c)| c == top)
        .map(|(&v, _)| v)
        .collect();
    if tied.len() == 1 {
        return (tied[0], false);
    }
    if tied.contains(&system) {
        return (system, true);
    }
    let latest = humans
        .iter()
        .filter(|r| tied.contains(&field(r)))
        .max_by_key(|r| r.created_at)
        .expect("tied values come from human records");
    (field(latest), true)
}

fn export_item(
    item: &StoredItem,
    adjudicator: Option<&str>,
) -> Option<(CorpusRecord, ExportProvenance)> {
    let system = item.records.first()?;
    let humans: Vec<&AnnotationRecord> = item.humans().collect();
    let annotators = humans.iter().map(|r| r.annotator_id.clone()).collect();
    let adjudicated = adjudicator.and_then(|a| item.humans().find(|r| r.annotator_id == a));
    let (tags, sentiment, decision, ties) = match adjudicated {
        Some(r) => (
            r.lang_tags.clone(),
            r.sentiment,
            Decision::Adjudicator,
            Vec::new(),
        ),
        None if humans.is_empty() => (
            system.lang_tags.clone(),
            system.sentiment,
            Decision::System,
            Vec::new(),
        ),
        None => {
            let mut ties = Vec::new();
            let tags = (0..item.tokens.len())
                .map(|i| {
                    let (tag, tied) = vote(&humans, system.lang_tags[i], |r| r.lang_tags[i]);
                    if tied {
                        ties.push(format!("lang_tags[{i}]"));
                    }
                    tag
                })
                .collect();
            let (sentiment, tied) = vote(&humans, system.sentiment, |r| r.sentiment);
            if tied {
                ties.push("sentiment".into());
            }
            (tags, sentiment, Decision::Majority, ties)
        }
    };
    let record = CorpusRecord {
        id: item.item_id,
        text: item.text.clone(),
        tokens: item
            .tokens
            .iter()
            .zip(tags)
            .map(|(t, tag)| TaggedWord {
                text: t.clone(),
                tag,
            })
            .collect(),
        sentiment,
    };
    let provenance = ExportProvenance {
        id: item.item_id,
        decision,
        annotators,
        ties,
    };
    Some((record, provenance))
}

pub fn export_gold(store: &Store, adjudicator: Option<&str>) -> GoldExport {
    let mut out = GoldExport::default();
    for item in store.items() {
        match export_item(item, adjudicator) {
            Some((r, p)) => {
                out.records.push(r);
                out.provenance.push(p);
            }
            None => out.skipped.push(item.item_id),
        }
    }
    out
}
