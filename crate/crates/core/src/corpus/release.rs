//! The JSON release format.
//!
//! A release is one JSON array of objects with exactly the keys `id`,
//! `lang_tagged_text`, `sentiment` and `text`, written in that order and
//! pretty-printed. `lang_tagged_text` joins `token\tag` pairs with single
//! spaces; a token is split from its tag at the last backslash.

use serde::Serialize;
use serde_json::{Map, Value};

use super::CorpusError;
use crate::langid::{LangTag, TaggedToken};
use crate::sentiment::Polarity;
use crate::text::tokenize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedWord {
    pub text: String,
    pub tag: LangTag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusRecord {
    pub id: i64,
    pub text: String,
    pub tokens: Vec<TaggedWord>,
    pub sentiment: Polarity,
}

/// Removes backslashes so the last-backslash split stays unambiguous.
pub fn sanitize_token(token: &str) -> String {
    token.replace('\\', "")
}

impl CorpusRecord {
    /// Builds a record from tagger output, sanitizing token text. Tokens
    /// that sanitize to nothing are dropped.
    pub fn from_tagged(id: i64, text: &str, tagged: &[TaggedToken], sentiment: Polarity) -> Self {
        let tokens = tagged
            .iter()
            .filter_map(|t| {
                let clean = sanitize_token(&t.token.text);
                (!clean.is_empty()).then_some(TaggedWord {
                    text: clean,
                    tag: t.tag,
                })
            })
            .collect();
        CorpusRecord {
            id,
            text: text.to_string(),
            tokens,
            sentiment,
        }
    }

    pub fn lang_tagged_text(&self) -> String {
        self.tokens
            .iter()
            .map(|t| format!("{}\\{}", t.text, t.tag))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn tags(&self) -> Vec<LangTag> {
        self.tokens.iter().map(|t| t.tag).collect()
    }
}

#[derive(Serialize)]
struct Wire<'a> {
    id: i64,
    lang_tagged_text: String,
    sentiment: Polarity,
    text: &'a str,
}

pub fn write_release(records: &[CorpusRecord]) -> String {
    let wire: Vec<Wire> = records
        .iter()
        .map(|r| Wire {
            id: r.id,
            lang_tagged_text: r.lang_tagged_text(),
            sentiment: r.sentiment,
            text: &r.text,
        })
        .collect();
    serde_json::to_string_pretty(&wire).expect("release records serialize")
}

const KEYS: [&str; 4] = ["id", "lang_tagged_text", "sentiment", "text"];

fn parse_record(index: usize, value: &Value) -> Result<CorpusRecord, CorpusError> {
    let obj: &Map<String, Value> = value.as_object().ok_or_else(|| CorpusError::Release {
        id: None,
        index,
        message: "not a JSON object".into(),
    })?;
    let id = obj.get("id").and_then(Value::as_i64);
    let fail = |message: String| CorpusError::Release { id, index, message };
    for key in KEYS {
        if !obj.contains_key(key) {
            return Err(fail(format!("missing key {key:?}")));
        }
    }
    if let Some(extra) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(fail(format!("unexpected key {extra:?}")));
    }
    let id = id.ok_or_else(|| fail("id must be an integer".into()))?;
    let text = obj["text"]
        .as_str()
        .ok_or_else(|| fail("text must be a string".into()))?;
    let sentiment = obj["sentiment"]
        .as_i64()
        .and_then(|v| Polarity::from_value(v).ok())
        .ok_or_else(|| {
            fail(format!(
                "sentiment must be -1, 0 or 1, got {}",
                obj["sentiment"]
            ))
        })?;
    let tagged = obj["lang_tagged_text"]
        .as_str()
        .ok_or_else(|| fail("lang_tagged_text must be a string".into()))?;
    let tokens = tagged
        .split_whitespace()
        .map(|pair| {
            let (token, tag) = pair
                .rsplit_once('\\')
                .ok_or_else(|| fail(format!("token {pair:?} has no tag")))?;
            if token.is_empty() {
                return Err(fail(format!("empty token in {pair:?}")));
            }
            let tag = match tag {
                "bn" => LangTag::Bn,
                "en" => LangTag::En,
                "un" => LangTag::Un,
                other => return Err(fail(format!("unknown tag suffix {other:?}"))),
            };
            Ok(TaggedWord {
                text: token.to_string(),
                tag,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CorpusRecord {
        id,
        text: text.to_string(),
        tokens,
        sentiment,
    })
}

pub fn parse_release(input: &str) -> Result<Vec<CorpusRecord>, CorpusError> {
    let value: Value = serde_json::from_str(input)?;
    let items = value.as_array().ok_or_else(|| CorpusError::Release {
        id: None,
        index: 0,
        message: "top level must be an array".into(),
    })?;
    items
        .iter()
        .enumerate()
        .map(|(i, v)| parse_record(i, v))
        .collect()
}

/// Checks that the tagged tokens reproduce the tokenization of `text`.
/// Returns the first mismatching position and the two tokens.
pub fn check_alignment(
    record: &CorpusRecord,
) -> Result<(), (usize, Option<String>, Option<String>)> {
    let expected: Vec<String> = tokenize(&record.text)
        .into_iter()
        .map(|t| sanitize_token(&t.text))
        .filter(|t| !t.is_empty())
        .collect();
    let n = expected.len().max(record.tokens.len());
    for i in 0..n {
        let want = expected.get(i);
        let got = record.tokens.get(i).map(|t| &t.text);
        if want != got {
            return Err((i, want.cloned(), got.cloned()));
        }
    }
    Ok(())
}
