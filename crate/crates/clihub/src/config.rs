//! Project settings, read from a `key = value` file.
//!
//! | key            | default       | meaning                                    |
//! |----------------|---------------|--------------------------------------------|
//! | `lexicons`     | `data/lexicons` | lexicon directory, relative to the file  |
//! | `seed`         | `13`          | RNG seed for all training                  |
//! | `alpha`        | `2`           | minimum seed keywords per message          |
//! | `beta`         | `4`           | minimum non-punctuation tokens per message |
//! | `seed_cap`     | `1500`        | length of a generated seed list            |
//! | `learning_rate`| `0.1`         | SGD step size                              |
//! | `l2`           | `0.0001`      | SGD regularization                         |
//! | `epochs`       | `20`          | SGD passes                                 |
//! | `adjudicator`  | none          | annotator whose record decides on export   |
//!
//! Sentiment keys (`emo_method`, `tgp_weights`, `stopword_k`, `vocab_k`,
//! `negation_postrule`, `classifier`) are accepted in the same file.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use codemix::config::{parse_key_values, ConfigError};
use codemix::corpus::DEFAULT_SEED_CAP;
use codemix::learners::Hyperparams;
use codemix::sentiment::SentimentConfig;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectConfig {
    pub lexicons: PathBuf,
    pub alpha: usize,
    pub beta: usize,
    pub seed_cap: usize,
    pub adjudicator: Option<String>,
    pub hyper: Hyperparams,
    pub sentiment: SentimentConfig,
}

impl Default for ProjectConfig {
    fn default() -> Self {
        ProjectConfig {
            lexicons: PathBuf::from("data/lexicons"),
            alpha: 2,
            beta: 4,
            seed_cap: DEFAULT_SEED_CAP,
            adjudicator: None,
            hyper: Hyperparams::default(),
            sentiment: SentimentConfig::default(),
        }
    }
}

impl ProjectConfig {
    /// Parses settings; relative paths are resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let mut cfg = ProjectConfig::default();
        for e in parse_key_values(text)? {
            if cfg.sentiment.apply(&e)? {
                continue;
            }
            match e.key.as_str() {
                "lexicons" => cfg.lexicons = base.join(&e.value),
                "seed" => cfg.hyper.seed = e.parse("an unsigned integer")?,
                "alpha" => cfg.alpha = e.parse("a positive integer")?,
                "beta" => cfg.beta = e.parse("a positive integer")?,
                "seed_cap" => cfg.seed_cap = e.parse("a positive integer")?,
                "learning_rate" => cfg.hyper.learning_rate = positive(&e)?,
                "l2" => cfg.hyper.l2 = e.parse::<f64>("a number").and_then(|v| finite(&e, v))?,
                "epochs" => cfg.hyper.epochs = e.parse("a positive integer")?,
                "adjudicator" => cfg.adjudicator = Some(e.value.clone()).filter(|v| !v.is_empty()),
                _ => return Err(e.unknown()),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        ProjectConfig::parse(&text, base).with_context(|| format!("in {}", path.display()))
    }

    /// Canonical text form; the manifest hashes this.
    pub fn to_text(&self) -> String {
        let h = &self.hyper;
        let mut out = format!(
            "lexicons = {}\nseed = {}\nalpha = {}\nbeta = {}\nseed_cap = {}\nlearning_rate = {:?}\nl2 = {:?}\nepochs = {}\n",
            self.lexicons.display(),
            h.seed,
            self.alpha,
            self.beta,
            self.seed_cap,
            h.learning_rate,
            h.l2,
            h.epochs
        );
        if let Some(a) = &self.adjudicator {
            out.push_str(&format!("adjudicator = {a}\n"));
        }
        out.push_str(&self.sentiment.to_text());
        out
    }

    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }
}

fn finite(e: &codemix::config::ConfigEntry, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(e.invalid("a finite non-negative number"))
    }
}

fn positive(e: &codemix::config::ConfigEntry) -> Result<f64, ConfigError> {
    let v: f64 = e.parse("a positive number")?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(e.invalid("a positive number"))
    }
}
