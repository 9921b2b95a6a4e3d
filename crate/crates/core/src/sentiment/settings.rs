use std::fmt::Write as _;

use super::{EmoMethod, MatchKind, DEFAULT_STOPWORDS, DEFAULT_VOCAB_SIZE};
use crate::config::{parse_key_values, ConfigEntry, ConfigError};
use crate::learners::ClassifierKind;

/// Weight of each phrase match kind; a non-match always weighs 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TgpWeights {
    pub perfect: f64,
    pub sparse: f64,
    pub partial: f64,
}

impl Default for TgpWeights {
    fn default() -> Self {
        TgpWeights {
            perfect: 1.0,
            sparse: 0.6,
            partial: 0.3,
        }
    }
}

impl TgpWeights {
    pub fn weight(&self, kind: MatchKind) -> f64 {
        match kind {
            MatchKind::Perfect => self.perfect,
            MatchKind::Sparse => self.sparse,
            MatchKind::Partial => self.partial,
            MatchKind::NoMatch => 0.0,
        }
    }
}

/// Settings for training and running the sentiment pipeline.
///
/// | key                 | default          | meaning                                    |
/// |---------------------|------------------|--------------------------------------------|
/// | `emo_method`        | `greatest_index` | `high_frequency`, `greatest_index`, `average_index` |
/// | `tgp_weights`       | `1.0,0.6,0.3`    | perfect, sparse and partial phrase weights |
/// | `stopword_k`        | `50`             | most frequent unigrams treated as stop words |
/// | `vocab_k`           | `2000`           | n-grams kept per order                     |
/// | `negation_postrule` | `on`             | flip classifier output on odd negation     |
/// | `classifier`        | `sgdc`           | `gnb`, `bnb`, `mnb`, `sgdc`, `lrc`         |
#[derive(Debug, Clone, PartialEq)]
pub struct SentimentConfig {
    pub emo_method: EmoMethod,
    pub tgp_weights: TgpWeights,
    pub stopword_k: usize,
    pub vocab_k: usize,
    pub negation_postrule: bool,
    pub classifier: ClassifierKind,
}

impl Default for SentimentConfig {
    fn default() -> Self {
        SentimentConfig {
            emo_method: EmoMethod::default(),
            tgp_weights: TgpWeights::default(),
            stopword_k: DEFAULT_STOPWORDS,
            vocab_k: DEFAULT_VOCAB_SIZE,
            negation_postrule: true,
            classifier: ClassifierKind::Sgdc,
        }
    }
}

impl SentimentConfig {
    /// Applies one entry. Returns `Ok(false)` if the key is not a sentiment
    /// setting, so callers can share a file with other settings.
    pub fn apply(&mut self, entry: &ConfigEntry) -> Result<bool, ConfigError> {
        match entry.key.as_str() {
            "emo_method" => {
                self.emo_method = entry
                    .value
                    .parse()
                    .map_err(|_| entry.invalid("high_frequency, greatest_index or average_index"))?
            }
            "tgp_weights" => {
                let parts: Vec<f64> = entry
                    .value
                    .split(',')
                    .map(|s| s.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| entry.invalid("three comma-separated numbers"))?;
                let [perfect, sparse, partial] = parts[..] else {
                    return Err(entry.invalid("three comma-separated numbers"));
                };
                if parts.iter().any(|w| !w.is_finite()) {
                    return Err(entry.invalid("finite weights"));
                }
                self.tgp_weights = TgpWeights {
                    perfect,
                    sparse,
                    partial,
                };
            }
            "stopword_k" => self.stopword_k = entry.parse("a non-negative integer")?,
            "vocab_k" => self.vocab_k = entry.parse("a non-negative integer")?,
            "negation_postrule" => self.negation_postrule = entry.parse_switch()?,
            "classifier" => self.classifier = entry.parse("gnb, bnb, mnb, sgdc or lrc")?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    /// Parses a file holding only sentiment settings.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = SentimentConfig::default();
        for entry in parse_key_values(text)? {
            if !cfg.apply(&entry)? {
                return Err(entry.unknown());
            }
        }
        Ok(cfg)
    }

    pub fn to_text(&self) -> String {
        let w = &self.tgp_weights;
        let mut out = String::new();
        let _ = writeln!(out, "emo_method = {}", self.emo_method);
        let _ = writeln!(
            out,
            "tgp_weights = {:?},{:?},{:?}",
            w.perfect, w.sparse, w.partial
        );
        let _ = writeln!(out, "stopword_k = {}", self.stopword_k);
        let _ = writeln!(out, "vocab_k = {}", self.vocab_k);
        let _ = writeln!(
            out,
            "negation_postrule = {}",
            if self.negation_postrule { "on" } else { "off" }
        );
        let _ = writeln!(
            out,
            "classifier = {}",
            self.classifier.as_str().to_lowercase()
        );
        out
    }
}
