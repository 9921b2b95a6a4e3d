use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use regex::Regex;
use serde::Serialize;

use super::Polarity;
use crate::lexicon::LexiconSet;
use crate::text::{normalize, split_hashtag, tokenize, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    #[serde(rename = "FLNG")]
    Flng,
    #[serde(rename = "EMO")]
    Emo,
    #[serde(rename = "HT")]
    Ht,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Flng => "FLNG",
            Rule::Emo => "EMO",
            Rule::Ht => "HT",
        })
    }
}

/// A rule's decision. Rules never produce a neutral verdict; having no
/// evidence is expressed by returning `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleVerdict {
    pub polarity: Polarity,
    pub rule: Rule,
    pub evidence: String,
}

impl RuleVerdict {
    fn new(sign: i64, rule: Rule, evidence: String) -> Option<Self> {
        let polarity = match sign.signum() {
            1 => Polarity::Positive,
            -1 => Polarity::Negative,
            _ => return None,
        };
        Some(RuleVerdict {
            polarity,
            rule,
            evidence,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmoMethod {
    /// The sign with more emoticons.
    HighFrequency,
    /// The sign of the last emoticon.
    #[default]
    GreatestIndex,
    /// Sign of the position-weighted mean of signs.
    AverageIndex,
}

impl EmoMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EmoMethod::HighFrequency => "high_frequency",
            EmoMethod::GreatestIndex => "greatest_index",
            EmoMethod::AverageIndex => "average_index",
        }
    }
}

impl fmt::Display for EmoMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EmoMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "highfrequency" => Ok(EmoMethod::HighFrequency),
            "greatestindex" => Ok(EmoMethod::GreatestIndex),
            "averageindex" => Ok(EmoMethod::AverageIndex),
            _ => Err(format!("unknown emoticon method {s:?}")),
        }
    }
}

static FEELING_MARKER: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)[-\u{2013}\u{2014}]\s*feeling\s+(\S+)").expect("valid pattern")
});

/// Looks for a "- feeling <word>" self-tag and scores the word.
///
/// Matching is on the raw text, case-insensitive, with a hyphen, en dash or
/// em dash before "feeling". Markers are tried left to right; the first
/// whose word has a known polarity decides.
pub fn flng(text: &str, set: &LexiconSet) -> Option<RuleVerdict> {
    FEELING_MARKER.captures_iter(text).find_map(|cap| {
        let word = tokenize(&cap[1])
            .into_iter()
            .find(|t| t.kind == TokenKind::Word)?;
        let word = normalize(&word.text);
        let polarity = set.word_polarity(word.as_str())?;
        RuleVerdict::new(polarity as i64, Rule::Flng, word.into_string())
    })
}

/// Whether the text carries a "- feeling" self-tag at all.
pub fn has_feeling_marker(text: &str) -> bool {
    FEELING_MARKER.is_match(text)
}

pub(crate) fn emoticon_polarity(text: &str, set: &LexiconSet) -> Option<i8> {
    if let Some(&p) = set.emoticons.get(text) {
        return Some(p);
    }
    // fall back to the bare emoji without presentation selector or skin tone
    let bare: String = text
        .chars()
        .filter(|&c| c != '\u{FE0F}' && !('\u{1F3FB}'..='\u{1F3FF}').contains(&c))
        .collect();
    set.emoticons.get(&bare).copied()
}

/// Scores the emoticons in a token sequence.
///
/// Only emoticon tokens listed in the lexicon with a non-zero polarity are
/// considered. Positions are 1-based token indices.
pub fn emo(tokens: &[Token], set: &LexiconSet, method: EmoMethod) -> Option<RuleVerdict> {
    let hits: Vec<(usize, i8, &str)> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.kind == TokenKind::Emoticon)
        .filter_map(|(i, t)| {
            let p = emoticon_polarity(&t.text, set)?;
            (p != 0).then_some((i + 1, p.signum(), t.text.as_str()))
        })
        .collect();
    let (&(_, _, last), _) = hits.split_last()?;
    match method {
        EmoMethod::GreatestIndex => {
            RuleVerdict::new(hits.last()?.1 as i64, Rule::Emo, last.to_string())
        }
        EmoMethod::HighFrequency => {
            let net: i64 = hits.iter().map(|h| h.1 as i64).sum();
            let evidence = hits
                .iter()
                .filter(|h| h.1 as i64 == net.signum())
                .map(|h| h.2)
                .collect::<Vec<_>>()
                .join(" ");
            RuleVerdict::new(net, Rule::Emo, evidence)
        }
        EmoMethod::AverageIndex => {
            // the denominator is positive, so the sign of the weighted sum
            // is the sign of the weighted mean
            let weighted: i64 = hits.iter().map(|&(i, s, _)| i as i64 * s as i64).sum();
            let evidence = hits.iter().map(|h| h.2).collect::<Vec<_>>().join(" ");
            RuleVerdict::new(weighted, Rule::Emo, evidence)
        }
    }
}

/// Splits hashtags into words and nets out their polarity hits.
pub fn ht(tokens: &[Token], set: &LexiconSet) -> Option<RuleVerdict> {
    let mut net = 0i64;
    let mut evidence = Vec::new();
    for t in tokens.iter().filter(|t| t.kind == TokenKind::Hashtag) {
        let Ok(segments) = split_hashtag(&t.text) else {
            continue;
        };
        let mut hit = false;
        for seg in segments {
            if let Some(p) = set.word_polarity(normalize(&seg).as_str()) {
                net += p as i64;
                hit = true;
            }
        }
        if hit {
            evidence.push(t.text.as_str());
        }
    }
    RuleVerdict::new(net, Rule::Ht, evidence.join(" "))
}
