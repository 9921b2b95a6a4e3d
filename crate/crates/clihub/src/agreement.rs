//! Inter-annotator agreement between two annotators over the items both
//! have annotated. Language tags are pooled over all tokens of those items;
//! sentiment is compared once per item.

use codemix::learners::cohen_kappa;
use serde::Serialize;
use thiserror::Error;

use crate::store::StoredItem;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Agreement {
    pub a: String,
    pub b: String,
    pub n_items: usize,
    pub n_tokens: usize,
    pub kappa_language: f64,
    pub kappa_sentiment: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum AgreementError {
    #[error("annotators {0:?} and {1:?} have no items in common")]
    NoOverlap(String, String),
    #[error("{0}")]
    Kappa(String),
}

pub fn agreement<'a>(
    items: impl IntoIterator<Item = &'a StoredItem>,
    a: &str,
    b: &str,
) -> Result<Agreement, AgreementError> {
    let mut lang_a = Vec::new();
    let mut lang_b = Vec::new();
    let mut sent_a = Vec::new();
    let mut sent_b = Vec::new();
    for item in items {
        if let (Some(ra), Some(rb)) = (item.record_of(a), item.record_of(b)) {
            lang_a.extend_from_slice(&ra.lang_tags);
            lang_b.extend_from_slice(&rb.lang_tags);
            sent_a.push(ra.sentiment);
            sent_b.push(rb.sentiment);
        }
    }
    if sent_a.is_empty() {
        return Err(AgreementError::NoOverlap(a.into(), b.into()));
    }
    let kappa = |e: codemix::learners::LearnError| AgreementError::Kappa(e.to_string());
    // items with no tokens contribute nothing to the language kappa
    let kappa_language = if lang_a.is_empty() {
        1.0
    } else {
        cohen_kappa(&lang_a, &lang_b).map_err(kappa)?
    };
    Ok(Agreement {
        a: a.into(),
        b: b.into(),
        n_items: sent_a.len(),
        n_tokens: lang_a.len(),
        kappa_language,
        kappa_sentiment: cohen_kappa(&sent_a, &sent_b).map_err(kappa)?,
    })
}
