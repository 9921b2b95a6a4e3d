//! Sentence-level sentiment for code-mixed text.
//!
//! Three rule detectors look for explicit evidence: a "feeling" self-tag,
//! emoticons and hashtags. When none of them fires, a supervised classifier
//! decides from lexical features (word n-grams, negation, polarity lexicons,
//! phrase matches, acronyms, SentiWordNet, SO-CAL and NRC scores).

mod features;
mod pipeline;
mod rules;
mod settings;
mod vocab;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::config::ConfigError;
use crate::learners::LearnError;

pub use features::{
    extract_features, match_phrase, socal_case, socal_combine, word_forms, MatchKind,
    SentiFeatures, SocalCase, FIXED_FEATURES,
};
pub use pipeline::{
    hybrid_classify, train_sentiment, HybridOutcome, LabeledDoc, Provenance, SentimentModel,
    StageOutcome,
};
pub(crate) use rules::emoticon_polarity;
pub use rules::{emo, flng, has_feeling_marker, ht, EmoMethod, Rule, RuleVerdict};
pub use settings::{SentimentConfig, TgpWeights};
pub use vocab::{build_ngram_vocab, NgramVocab, DEFAULT_STOPWORDS, DEFAULT_VOCAB_SIZE};

#[derive(Debug, Error)]
pub enum SentimentError {
    #[error("training corpus is empty")]
    EmptyCorpus,
    #[error("polarity must be -1, 0 or 1, got {0}")]
    InvalidPolarity(i64),
    #[error(transparent)]
    Learn(#[from] LearnError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("vocabulary line {line}: {message}")]
    VocabParse { line: usize, message: String },
    #[error("model expects classes neg, neu, pos; found {0:?}")]
    WrongClasses(Vec<String>),
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
}

/// Sentence polarity, serialized as -1, 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Negative,
    Neutral,
    Positive,
}

impl Polarity {
    /// Classifier label order; also the tie-break order.
    pub const ALL: [Polarity; 3] = [Polarity::Negative, Polarity::Neutral, Polarity::Positive];

    pub fn value(self) -> i8 {
        match self {
            Polarity::Negative => -1,
            Polarity::Neutral => 0,
            Polarity::Positive => 1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self, SentimentError> {
        match v {
            -1 => Ok(Polarity::Negative),
            0 => Ok(Polarity::Neutral),
            1 => Ok(Polarity::Positive),
            other => Err(SentimentError::InvalidPolarity(other)),
        }
    }

    /// Sign of a real score; zero is neutral.
    pub fn from_sign(x: f64) -> Self {
        if x > 0.0 {
            Polarity::Positive
        } else if x < 0.0 {
            Polarity::Negative
        } else {
            Polarity::Neutral
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Polarity::Negative => "neg",
            Polarity::Neutral => "neu",
            Polarity::Positive => "pos",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Negative and positive swap; neutral stays.
    pub fn flipped(self) -> Self {
        match self {
            Polarity::Negative => Polarity::Positive,
            Polarity::Neutral => Polarity::Neutral,
            Polarity::Positive => Polarity::Negative,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Polarity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.value())
    }
}

impl<'de> Deserialize<'de> for Polarity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Polarity::from_value(v).map_err(serde::de::Error::custom)
    }
}
