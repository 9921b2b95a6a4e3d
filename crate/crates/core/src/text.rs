//! Tokenization and surface analysis of romanized social media text.
//!
//! A message is split into [`Token`]s on whitespace and punctuation
//! boundaries. URLs, mentions, hashtags and emoticons are recognized before
//! punctuation splitting, so `http://t.co/x` or `:-)` come out as single
//! tokens. Offsets are character (not byte) offsets into the source.

use std::borrow::Borrow;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// Runs of one repeated character longer than this are collapsed to two.
pub const DEFAULT_ELONGATION_LIMIT: usize = 3;

/// Emoticons recognized when no lexicon-provided map is available.
pub const DEFAULT_EMOTICONS: &[&str] = &[
    ":)", ":-)", ":(", ":-(", ":D", ":-D", ";)", ";-)", ":P", ":-P", ":p", ":'(", ":/", ":-/",
    ":|", ":o", ":O", "<3", "</3", "^_^", "-_-", "xD", "XD", ":*", ":3",
];

/// Code point ranges treated as emoji.
pub const DEFAULT_EMOJI_RANGES: &[RangeInclusive<u32>] = &[
    0x1F1E6..=0x1F1FF,
    0x1F300..=0x1F5FF,
    0x1F600..=0x1F64F,
    0x1F680..=0x1F6FF,
    0x1F900..=0x1F9FF,
    0x1FA70..=0x1FAFF,
    0x2600..=0x26FF,
    0x2700..=0x27BF,
    0x231A..=0x23FF,
    0x2B50..=0x2B55,
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("hashtag {0:?} does not start with '#'")]
    NotAHashtag(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    Word,
    Hashtag,
    Mention,
    Url,
    Emoticon,
    Number,
    Punct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    /// `(start, end)` character offsets, end exclusive.
    pub span: (usize, usize),
    pub kind: TokenKind,
}

impl Token {
    pub fn new(text: impl Into<String>, span: (usize, usize), kind: TokenKind) -> Self {
        Token {
            text: text.into(),
            span,
            kind,
        }
    }

    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

/// A lowercased, diacritic-free word with elongations collapsed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalizedWord(String);

impl NormalizedWord {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Borrow<str> for NormalizedWord {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for NormalizedWord {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NormalizedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn normalize(word: &str) -> NormalizedWord {
    normalize_with(word, DEFAULT_ELONGATION_LIMIT)
}

/// Lowercases, strips combining marks and collapses any run of the same
/// character longer than `limit` down to two characters.
pub fn normalize_with(word: &str, limit: usize) -> NormalizedWord {
    let limit = limit.max(2);
    let stripped: Vec<char> = word
        .to_lowercase()
        .nfd()
        .filter(|c| !is_combining_mark(*c))
        .collect();

    let mut out = String::with_capacity(stripped.len());
    let mut i = 0;
    while i < stripped.len() {
        let c = stripped[i];
        let mut j = i;
        while j < stripped.len() && stripped[j] == c {
            j += 1;
        }
        let run = j - i;
        let keep = if run > limit { 2 } else { run };
        out.extend(std::iter::repeat_n(c, keep));
        i = j;
    }
    NormalizedWord(out)
}

/// Splits a hashtag into lowercased segments at underscores and at
/// lowercase-to-uppercase transitions. Digits never start a new segment.
pub fn split_hashtag(tag: &str) -> Result<Vec<String>, TextError> {
    let body = tag
        .strip_prefix('#')
        .ok_or_else(|| TextError::NotAHashtag(tag.to_string()))?;

    let mut segments = Vec::new();
    for piece in body.split('_') {
        let mut current = String::new();
        let mut prev_lower = false;
        for c in piece.chars() {
            if c.is_uppercase() && prev_lower && !current.is_empty() {
                segments.push(std::mem::take(&mut current).to_lowercase());
            }
            prev_lower = c.is_lowercase();
            current.push(c);
        }
        if !current.is_empty() {
            segments.push(current.to_lowercase());
        }
    }
    Ok(segments)
}

/// Splits text into tokens. Cheap to clone; holds only the emoticon table.
#[derive(Debug, Clone)]
pub struct Tokenizer {
    // longest first
    emoticons: Vec<Vec<char>>,
    emoji_ranges: Vec<RangeInclusive<u32>>,
}

impl Default for Tokenizer {
    fn default() -> Self {
        Tokenizer::new(DEFAULT_EMOTICONS.iter().copied())
    }
}

impl Tokenizer {
    pub fn new<I, S>(emoticons: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Tokenizer::with_emoji_ranges(emoticons, DEFAULT_EMOJI_RANGES.to_vec())
    }

    pub fn with_emoji_ranges<I, S>(emoticons: I, emoji_ranges: Vec<RangeInclusive<u32>>) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut emoticons: Vec<Vec<char>> = emoticons
            .into_iter()
            .map(|e| e.as_ref().chars().collect::<Vec<_>>())
            .filter(|e| !e.is_empty() && !e.iter().any(|c| c.is_whitespace()))
            .collect();
        emoticons.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        emoticons.dedup();
        Tokenizer {
            emoticons,
            emoji_ranges,
        }
    }

    pub fn is_emoji(&self, c: char) -> bool {
        let cp = c as u32;
        self.emoji_ranges.iter().any(|r| r.contains(&cp))
    }

    pub fn tokenize(&self, text: &str) -> Vec<Token> {
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let (end, kind) = self.scan(&chars, i);
            debug_assert!(end > i);
            tokens.push(Token::new(
                chars[i..end].iter().collect::<String>(),
                (i, end),
                kind,
            ));
            i = end;
        }
        tokens
    }

    /// Classifies a standalone string: its single token if it tokenizes to
    /// exactly one, otherwise a `Word` spanning the whole input.
    pub fn token_for(&self, text: &str) -> Token {
        let mut tokens = self.tokenize(text);
        if tokens.len() == 1 {
            tokens.pop().unwrap()
        } else {
            Token::new(text, (0, text.chars().count()), TokenKind::Word)
        }
    }

    fn scan(&self, chars: &[char], i: usize) -> (usize, TokenKind) {
        if let Some(end) = scan_url(chars, i) {
            return (end, TokenKind::Url);
        }
        if let Some(end) = self.scan_emoticon(chars, i) {
            return (end, TokenKind::Emoticon);
        }
        let c = chars[i];
        if c == '#' || c == '@' {
            let mut end = i + 1;
            while end < chars.len() && is_tag_char(chars[end]) {
                end += 1;
            }
            let kind = if c == '#' {
                TokenKind::Hashtag
            } else {
                TokenKind::Mention
            };
            return (end, kind);
        }
        if is_word_char(c) {
            let mut end = i + 1;
            loop {
                if end < chars.len() && is_word_char(chars[end]) {
                    end += 1;
                } else if end + 1 < chars.len()
                    && is_apostrophe(chars[end])
                    && chars[end + 1].is_alphanumeric()
                {
                    end += 2;
                } else {
                    break;
                }
            }
            let numeric = chars[i..end].iter().all(|c| c.is_numeric());
            let kind = if numeric {
                TokenKind::Number
            } else {
                TokenKind::Word
            };
            return (end, kind);
        }
        // runs of one punctuation character stay together ("!!!", "...")
        let mut end = i + 1;
        while end < chars.len()
            && chars[end] == c
            && self.scan_emoticon(chars, end).is_none()
            && scan_url(chars, end).is_none()
        {
            end += 1;
        }
        (end, TokenKind::Punct)
    }

    fn scan_emoticon(&self, chars: &[char], i: usize) -> Option<usize> {
        for emo in &self.emoticons {
            let end = i + emo.len();
            if end > chars.len() || chars[i..end] != emo[..] {
                continue;
            }
            let last_alnum = emo.last().is_some_and(|c| c.is_alphanumeric());
            if last_alnum && end < chars.len() && chars[end].is_alphanumeric() {
                continue;
            }
            let first_alnum = emo[0].is_alphanumeric();
            if first_alnum && i > 0 && chars[i - 1].is_alphanumeric() {
                continue;
            }
            return Some(end);
        }
        if self.is_emoji(chars[i]) {
            return Some(self.scan_emoji_sequence(chars, i));
        }
        None
    }

    fn scan_emoji_sequence(&self, chars: &[char], i: usize) -> usize {
        let regional = |c: char| (0x1F1E6..=0x1F1FF).contains(&(c as u32));
        let mut end = i + 1;
        if regional(chars[i]) && end < chars.len() && regional(chars[end]) {
            return end + 1;
        }
        loop {
            match chars.get(end) {
                Some('\u{FE0F}') => end += 1,
                Some(c) if (0x1F3FB..=0x1F3FF).contains(&(*c as u32)) => end += 1,
                Some('\u{200D}') if chars.get(end + 1).is_some_and(|c| self.is_emoji(*c)) => {
                    end += 2
                }
                _ => break,
            }
        }
        end
    }
}

/// Tokenizes with the default emoticon table.
pub fn tokenize(text: &str) -> Vec<Token> {
    Tokenizer::default().tokenize(text)
}

/// True when `text` has the shape of a URL.
pub fn is_url(text: &str) -> bool {
    let chars: Vec<char> = text.chars().collect();
    !chars.is_empty() && scan_url(&chars, 0) == Some(chars.len())
}

fn scan_url(chars: &[char], i: usize) -> Option<usize> {
    const PREFIXES: [&str; 3] = ["http://", "https://", "www."];
    let matched = PREFIXES.iter().find(|p| {
        let n = p.chars().count();
        i + n <= chars.len()
            && chars[i..i + n]
                .iter()
                .zip(p.chars())
                .all(|(a, b)| a.to_ascii_lowercase() == b)
    })?;
    if i > 0 && is_word_char(chars[i - 1]) {
        return None;
    }
    let prefix_len = matched.len();
    let mut end = i;
    while end < chars.len() && !chars[end].is_whitespace() {
        end += 1;
    }
    while end > i + prefix_len && is_url_trailer(chars[end - 1]) {
        end -= 1;
    }
    (end > i + prefix_len).then_some(end)
}

fn is_url_trailer(c: char) -> bool {
    matches!(
        c,
        '.' | ',' | ';' | ':' | '!' | '?' | ')' | ']' | '}' | '"' | '\''
    )
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_combining_mark(c)
}

fn is_tag_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || is_combining_mark(c)
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}
