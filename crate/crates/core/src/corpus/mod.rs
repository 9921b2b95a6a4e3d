//! Corpus construction and analysis: stream filtering, seed lists, the JSON
//! release format, code-mixing complexity and per-polarity statistics.

mod aspects;
mod complexity;
mod filter;
mod release;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::langid::LangTag;
use crate::text::{normalize, NormalizedWord};

pub use aspects::{aspect_stats, AspectReport, PolarityAspects};
pub use complexity::{
    cmi, complexity, complexity_with, components, ArithmeticMean, ComplexityFormula,
    ComplexityFormulas, ComplexityReport, Components, GeometricMean, Scaled,
};
pub use filter::{
    filter_jsonl, filter_stream, message_key, FilterConfig, FilterOutcome, RawMessage,
    RejectReason, Rejected, StreamFilter,
};
pub use release::{
    check_alignment, parse_release, sanitize_token, write_release, CorpusRecord, TaggedWord,
};

pub const DEFAULT_SEED_CAP: usize = 1500;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus is empty")]
    Empty,
    #[error("filter setting {0} must be at least 1")]
    Threshold(&'static str),
    #[error("seed keyword list is empty")]
    NoSeeds,
    #[error("record {id}: no language tags")]
    Untagged { id: i64 },
    #[error("release record {}: {message}", id.map_or_else(|| format!("#{index}"), |i| i.to_string()))]
    Release {
        id: Option<i64>,
        index: usize,
        message: String,
    },
    #[error("invalid release JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Frequencies of BN-tagged words, most frequent first, ties in
/// lexicographic order, truncated to `cap` entries.
pub fn build_seed_list(
    records: &[CorpusRecord],
    cap: usize,
) -> Result<Vec<(NormalizedWord, u64)>, CorpusError> {
    if records.is_empty() {
        return Err(CorpusError::Empty);
    }
    let mut counts: BTreeMap<NormalizedWord, u64> = BTreeMap::new();
    for w in records
        .iter()
        .flat_map(|r| &r.tokens)
        .filter(|w| w.tag == LangTag::Bn)
    {
        let key = normalize(&w.text);
        if !key.is_empty() {
            *counts.entry(key).or_default() += 1;
        }
    }
    let mut ranked: Vec<(NormalizedWord, u64)> = counts.into_iter().collect();
    // stable sort keeps the lexicographic order of the map among equal counts
    ranked.sort_by_key(|e| std::cmp::Reverse(e.1));
    ranked.truncate(cap);
    Ok(ranked)
}
