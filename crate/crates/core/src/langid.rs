//! Word-level language tagging for Bengali-English code-mixed text.
//!
//! Each token goes through a fixed cascade and the first stage that can
//! decide wins:
//!
//! 1. non-word tokens (punctuation, emoticons, URLs, numbers, mentions,
//!    hashtags) are `UN`;
//! 2. a word found in exactly one of the Bengali/English word lists takes
//!    that list's language;
//! 3. a known acronym is `EN`;
//! 4. a word whose stem (the word minus an English suffix) is an English
//!    word is `EN`;
//! 5. everything else, including words listed in both languages, goes to a
//!    linear character n-gram classifier that only ever answers `BN` or `EN`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::learners::{self, Hyperparams, LinearLoss, SparseVector};
use crate::lexicon::{char_ngrams, LexiconSet};
use crate::text::{normalize, NormalizedWord, Token, TokenKind, Tokenizer};

pub const LANG_MODEL_HEADER: &str = "LANGMODEL v1";

const NGRAM_SIZES: [usize; 2] = [2, 3];
const MIN_STEM_CHARS: usize = 2;

#[derive(Debug, Error, PartialEq)]
pub enum LangError {
    #[error("training list for {0} is empty")]
    EmptyClass(LangTag),
    #[error("gold standard is empty")]
    EmptyGold,
    #[error("unknown language tag {0:?}")]
    UnknownTag(String),
    #[error("language model line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LangTag {
    Bn,
    En,
    Un,
}

impl LangTag {
    pub const ALL: [LangTag; 3] = [LangTag::Bn, LangTag::En, LangTag::Un];

    pub fn as_str(self) -> &'static str {
        match self {
            LangTag::Bn => "bn",
            LangTag::En => "en",
            LangTag::Un => "un",
        }
    }
}

impl fmt::Display for LangTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LangTag {
    type Err = LangError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bn" => Ok(LangTag::Bn),
            "en" => Ok(LangTag::En),
            "un" => Ok(LangTag::Un),
            _ => Err(LangError::UnknownTag(s.to_string())),
        }
    }
}

/// Which cascade stage produced a tag, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TagSource {
    KindRule,
    Lexicon,
    Acronym,
    Suffix,
    Classifier,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaggedToken {
    pub token: Token,
    pub tag: LangTag,
    pub source: TagSource,
}

/// Two-class (BN vs EN) linear model over character 2- and 3-gram counts.
#[derive(Debug, Clone, PartialEq)]
pub struct LangModel {
    /// n-gram to feature index; exactly the n-grams seen in training.
    features: BTreeMap<String, usize>,
    weights_bn: Vec<f64>,
    weights_en: Vec<f64>,
    bias_bn: f64,
    bias_en: f64,
    pub hyperparams: Hyperparams,
    /// Tag returned when the margin is exactly zero.
    pub tie: LangTag,
}

impl LangModel {
    pub fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.features.keys().map(String::as_str)
    }

    pub fn num_features(&self) -> usize {
        self.features.len()
    }

    fn featurize(&self, word: &str) -> SparseVector {
        let dim = self.features.len();
        let entries = NGRAM_SIZES
            .iter()
            .flat_map(|&n| char_ngrams(word, n))
            .filter_map(|g| self.features.get(&g).map(|&i| (i, 1.0)));
        SparseVector::new(dim, entries).expect("indices come from the vocabulary")
    }

    /// BN score minus EN score; positive means Bengali.
    pub fn margin(&self, word: &str) -> f64 {
        let x = self.featurize(word);
        (x.dot(&self.weights_bn) + self.bias_bn) - (x.dot(&self.weights_en) + self.bias_en)
    }

    pub fn classify(&self, word: &str) -> LangTag {
        let m = self.margin(word);
        if m > 0.0 {
            LangTag::Bn
        } else if m < 0.0 {
            LangTag::En
        } else {
            self.tie
        }
    }

    pub fn to_text(&self) -> String {
        let f = fmt_real;
        let mut out = String::new();
        let h = &self.hyperparams;
        let _ = writeln!(out, "{LANG_MODEL_HEADER}");
        let _ = writeln!(out, "meta\tlearning_rate\t{}", f(h.learning_rate));
        let _ = writeln!(out, "meta\tl2\t{}", f(h.l2));
        let _ = writeln!(out, "meta\tepochs\t{}", h.epochs);
        let _ = writeln!(out, "meta\tseed\t{}", h.seed);
        let _ = writeln!(out, "meta\ttie\t{}", self.tie);
        let _ = writeln!(out, "bias\t{}\t{}", f(self.bias_bn), f(self.bias_en));
        for (gram, &i) in &self.features {
            let _ = writeln!(
                out,
                "{gram}\t{}\t{}",
                f(self.weights_bn[i]),
                f(self.weights_en[i])
            );
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, LangError> {
        let err = |line: usize, message: String| LangError::Parse { line, message };
        let real = |s: &str, line: usize| {
            s.parse::<f64>()
                .map_err(|_| err(line, format!("invalid number {s:?}")))
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        if lines.next().map(|(_, l)| l) != Some(LANG_MODEL_HEADER) {
            return Err(err(1, format!("expected header {LANG_MODEL_HEADER:?}")));
        }
        let mut hyper = Hyperparams::default();
        let mut tie = LangTag::En;
        let mut bias = None;
        let mut rows: Vec<(String, f64, f64)> = Vec::new();
        for (n, line) in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            match fields.as_slice() {
                ["meta", key, value] => {
                    let int = || {
                        value
                            .parse::<u64>()
                            .map_err(|_| err(n, format!("invalid integer {value:?}")))
                    };
                    match *key {
                        "learning_rate" => hyper.learning_rate = real(value, n)?,
                        "l2" => hyper.l2 = real(value, n)?,
                        "epochs" => hyper.epochs = int()? as usize,
                        "seed" => hyper.seed = int()?,
                        "tie" => tie = value.parse()?,
                        other => return Err(err(n, format!("unknown meta key {other:?}"))),
                    }
                }
                ["bias", bn, en] => bias = Some((real(bn, n)?, real(en, n)?)),
                [gram, bn, en] => rows.push((gram.to_string(), real(bn, n)?, real(en, n)?)),
                _ => return Err(err(n, "expected three tab-separated fields".into())),
            }
        }
        let (bias_bn, bias_en) = bias.ok_or_else(|| err(0, "missing bias row".into()))?;
        let mut sorted: BTreeMap<String, (f64, f64)> = BTreeMap::new();
        for (gram, bn, en) in rows {
            if sorted.insert(gram.clone(), (bn, en)).is_some() {
                return Err(err(0, format!("duplicate n-gram {gram:?}")));
            }
        }
        // indices follow sorted n-gram order, like a freshly trained model
        let mut features = BTreeMap::new();
        let mut weights_bn = Vec::with_capacity(sorted.len());
        let mut weights_en = Vec::with_capacity(sorted.len());
        for (i, (gram, (bn, en))) in sorted.into_iter().enumerate() {
            features.insert(gram, i);
            weights_bn.push(bn);
            weights_en.push(en);
        }
        Ok(LangModel {
            features,
            weights_bn,
            weights_en,
            bias_bn,
            bias_en,
            hyperparams: hyper,
            tie,
        })
    }
}

fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Trains the fallback classifier on two word lists with hinge-loss SGD.
pub fn train_lang_model(
    bn_words: &[NormalizedWord],
    en_words: &[NormalizedWord],
    hyper: &Hyperparams,
) -> Result<LangModel, LangError> {
    if bn_words.is_empty() {
        return Err(LangError::EmptyClass(LangTag::Bn));
    }
    if en_words.is_empty() {
        return Err(LangError::EmptyClass(LangTag::En));
    }
    let mut features: BTreeMap<String, usize> = BTreeMap::new();
    for w in bn_words.iter().chain(en_words) {
        for n in NGRAM_SIZES {
            for g in char_ngrams(w.as_str(), n) {
                features.entry(g).or_insert(0);
            }
        }
    }
    for (i, idx) in features.values_mut().enumerate() {
        *idx = i;
    }
    let mut model = LangModel {
        features,
        weights_bn: Vec::new(),
        weights_en: Vec::new(),
        bias_bn: 0.0,
        bias_en: 0.0,
        hyperparams: hyper.clone(),
        tie: LangTag::En,
    };
    let rows: Vec<(SparseVector, usize)> = bn_words
        .iter()
        .map(|w| (model.featurize(w.as_str()), 0))
        .chain(en_words.iter().map(|w| (model.featurize(w.as_str()), 1)))
        .collect();
    let (params, _) =
        learners::train_one_vs_rest(LinearLoss::Hinge, model.features.len(), 2, &rows, hyper);
    let mut weights = params.weights.into_iter();
    model.weights_bn = weights.next().unwrap_or_default();
    model.weights_en = weights.next().unwrap_or_default();
    model.bias_bn = params.bias[0];
    model.bias_en = params.bias[1];
    Ok(model)
}

/// Runs the tagging cascade over tokens with shared lexicons and model.
#[derive(Debug, Clone, Copy)]
pub struct LangTagger<'a> {
    pub lexicons: &'a LexiconSet,
    pub model: &'a LangModel,
}

impl<'a> LangTagger<'a> {
    pub fn new(lexicons: &'a LexiconSet, model: &'a LangModel) -> Self {
        LangTagger { lexicons, model }
    }

    pub fn tag_word(&self, token: &Token) -> TaggedToken {
        let (tag, source) = self.decide(token);
        TaggedToken {
            token: token.clone(),
            tag,
            source,
        }
    }

    pub fn tag_sentence(&self, tokens: &[Token]) -> Vec<TaggedToken> {
        tokens.iter().map(|t| self.tag_word(t)).collect()
    }

    fn decide(&self, token: &Token) -> (LangTag, TagSource) {
        if token.kind != TokenKind::Word {
            return (LangTag::Un, TagSource::KindRule);
        }
        let word = normalize(&token.text);
        let lex = self.lexicons;
        let in_bn = lex.bn_words.contains(word.as_str());
        let in_en = lex.en_words.contains(word.as_str());
        match (in_bn, in_en) {
            (true, false) => return (LangTag::Bn, TagSource::Lexicon),
            (false, true) => return (LangTag::En, TagSource::Lexicon),
            _ => {}
        }
        if lex.acronyms.contains_key(word.as_str()) {
            return (LangTag::En, TagSource::Acronym);
        }
        if self.has_english_stem(word.as_str()) {
            return (LangTag::En, TagSource::Suffix);
        }
        (self.model.classify(word.as_str()), TagSource::Classifier)
    }

    fn has_english_stem(&self, word: &str) -> bool {
        self.lexicons.en_suffixes.iter().any(|suffix| {
            word.strip_suffix(suffix.as_str()).is_some_and(|stem| {
                stem.chars().count() >= MIN_STEM_CHARS && self.lexicons.en_words.contains(stem)
            })
        })
    }
}

pub fn tag_word(token: &Token, set: &LexiconSet, model: &LangModel) -> TaggedToken {
    LangTagger::new(set, model).tag_word(token)
}

pub fn tag_sentence(tokens: &[Token], set: &LexiconSet, model: &LangModel) -> Vec<TaggedToken> {
    LangTagger::new(set, model).tag_sentence(tokens)
}

/// Fraction of gold `(word, tag)` pairs the cascade reproduces.
pub fn evaluate_lang_tagger(
    gold: &[(String, LangTag)],
    set: &LexiconSet,
    model: &LangModel,
) -> Result<f64, LangError> {
    if gold.is_empty() {
        return Err(LangError::EmptyGold);
    }
    let tokenizer = Tokenizer::default();
    let tagger = LangTagger::new(set, model);
    let correct = gold
        .iter()
        .filter(|(word, tag)| tagger.tag_word(&tokenizer.token_for(word)).tag == *tag)
        .count();
    Ok(correct as f64 / gold.len() as f64)
}
