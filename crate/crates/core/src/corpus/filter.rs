use std::collections::{BTreeSet, HashSet};
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::CorpusError;
use crate::text::{normalize, NormalizedWord, TokenKind, Tokenizer};

/// Thresholds for keeping a message.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterConfig {
    /// Minimum number of tokens that are seed keywords.
    pub alpha: usize,
    /// Minimum number of non-punctuation tokens.
    pub beta: usize,
    pub seed_keywords: BTreeSet<NormalizedWord>,
}

impl FilterConfig {
    pub fn new(
        alpha: usize,
        beta: usize,
        seed_keywords: BTreeSet<NormalizedWord>,
    ) -> Result<Self, CorpusError> {
        if alpha == 0 {
            return Err(CorpusError::Threshold("alpha"));
        }
        if beta == 0 {
            return Err(CorpusError::Threshold("beta"));
        }
        if seed_keywords.is_empty() {
            return Err(CorpusError::NoSeeds);
        }
        Ok(FilterConfig {
            alpha,
            beta,
            seed_keywords,
        })
    }
}

/// One line of the raw input stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMessage {
    pub id: i64,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RejectReason {
    NonRoman,
    BelowAlpha,
    BelowBeta,
    Duplicate,
    Malformed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rejected {
    pub reason: RejectReason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<i64>,
    /// 1-based input line, for line-oriented input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FilterOutcome {
    pub kept: Vec<RawMessage>,
    pub rejected: Vec<Rejected>,
}

/// Normalized, whitespace-collapsed form of a message. Two messages with
/// the same key are duplicates.
pub fn message_key(text: &str) -> String {
    text.split_whitespace()
        .map(|w| normalize(w).into_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Single-pass, order-dependent filter. Every check runs on the message
/// key, so duplicates always receive the same threshold decisions.
#[derive(Debug, Clone)]
pub struct StreamFilter {
    config: FilterConfig,
    tokenizer: Tokenizer,
    seen: HashSet<String>,
}

impl StreamFilter {
    pub fn new(config: FilterConfig, tokenizer: Tokenizer) -> Self {
        StreamFilter {
            config,
            tokenizer,
            seen: HashSet::new(),
        }
    }

    /// Decides one message; a kept message is remembered for deduplication.
    pub fn check(&mut self, text: &str) -> Result<(), RejectReason> {
        let key = message_key(text);
        let letters: Vec<char> = key.chars().filter(|c| c.is_alphabetic()).collect();
        let foreign = letters.iter().filter(|c| !c.is_ascii()).count();
        if !letters.is_empty() && foreign * 2 > letters.len() {
            return Err(RejectReason::NonRoman);
        }
        let tokens = self.tokenizer.tokenize(&key);
        let seeds = tokens
            .iter()
            .filter(|t| {
                t.kind == TokenKind::Word
                    && self
                        .config
                        .seed_keywords
                        .contains(normalize(&t.text).as_str())
            })
            .count();
        if seeds < self.config.alpha {
            return Err(RejectReason::BelowAlpha);
        }
        let length = tokens.iter().filter(|t| t.kind != TokenKind::Punct).count();
        if length < self.config.beta {
            return Err(RejectReason::BelowBeta);
        }
        if !self.seen.insert(key) {
            return Err(RejectReason::Duplicate);
        }
        Ok(())
    }
}

pub fn filter_stream<I>(docs: I, config: &FilterConfig) -> FilterOutcome
where
    I: IntoIterator<Item = RawMessage>,
{
    let mut filter = StreamFilter::new(config.clone(), Tokenizer::default());
    let mut out = FilterOutcome::default();
    for msg in docs {
        match filter.check(&msg.text) {
            Ok(()) => out.kept.push(msg),
            Err(reason) => out.rejected.push(Rejected {
                reason,
                id: Some(msg.id),
                line: None,
                text: Some(msg.text),
                error: None,
            }),
        }
    }
    out
}

/// Filters newline-delimited `{"id": .., "text": ..}` objects. Lines that
/// do not parse become `Malformed` rejects; blank lines are skipped.
pub fn filter_jsonl(
    input: impl BufRead,
    config: &FilterConfig,
) -> Result<FilterOutcome, CorpusError> {
    let mut filter = StreamFilter::new(config.clone(), Tokenizer::default());
    let mut out = FilterOutcome::default();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<RawMessage>(&line) {
            Ok(msg) => match filter.check(&msg.text) {
                Ok(()) => out.kept.push(msg),
                Err(reason) => out.rejected.push(Rejected {
                    reason,
                    id: Some(msg.id),
                    line: Some(i + 1),
                    text: Some(msg.text),
                    error: None,
                }),
            },
            Err(e) => out.rejected.push(Rejected {
                reason: RejectReason::Malformed,
                id: None,
                line: Some(i + 1),
                text: Some(line),
                error: Some(e.to_string()),
            }),
        }
    }
    Ok(out)
}
