use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    build_ngram_vocab, emo, extract_features, flng, ht, word_forms, NgramVocab, Polarity,
    RuleVerdict, SentiFeatures, SentimentConfig, SentimentError,
};
use crate::learners::{self, ClassifierModel, Dataset, Hyperparams};
use crate::lexicon::LexiconSet;
use crate::text::Token;

pub const CONFIG_FILE: &str = "sentiment.conf";
pub const VOCAB_FILE: &str = "vocab.txt";
pub const CLASSIFIER_FILE: &str = "classifier.txt";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDoc {
    pub text: String,
    #[serde(alias = "sentiment")]
    pub polarity: Polarity,
}

/// Which cascade stage produced the final polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "FLNG")]
    Flng,
    #[serde(rename = "EMO")]
    Emo,
    #[serde(rename = "HT")]
    Ht,
    #[serde(rename = "Classifier")]
    Classifier,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Flng => "FLNG",
            Provenance::Emo => "EMO",
            Provenance::Ht => "HT",
            Provenance::Classifier => "Classifier",
        })
    }
}

/// One consulted stage; `verdict` is `None` when a rule abstained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageOutcome {
    pub stage: Provenance,
    pub verdict: Option<Polarity>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HybridOutcome {
    pub polarity: Polarity,
    pub provenance: Provenance,
    /// Matched word, emoticons or hashtags for rule decisions.
    pub evidence: Option<String>,
    /// Stages in the order they were consulted.
    pub trace: Vec<StageOutcome>,
    /// Classifier argmax before the negation rule, when the classifier ran.
    pub classifier_raw: Option<Polarity>,
    pub negation_flipped: bool,
}

/// A trained classifier together with its vocabulary and settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SentimentModel {
    pub config: SentimentConfig,
    pub vocab: NgramVocab,
    pub classifier: ClassifierModel,
}

fn class_labels() -> Vec<String> {
    Polarity::ALL
        .iter()
        .map(|p| p.label().to_string())
        .collect()
}

impl SentimentModel {
    pub fn features(&self, tokens: &[Token], set: &LexiconSet) -> SentiFeatures {
        extract_features(tokens, set, &self.vocab, &self.config.tgp_weights)
    }

    /// Classifier argmax with no rules and no negation rule.
    pub fn raw_polarity(&self, features: &SentiFeatures) -> Polarity {
        let x = features.to_vector(self.vocab.len());
        let prediction = self
            .classifier
            .predict(&x)
            .expect("feature layout matches the trained model");
        Polarity::ALL[prediction.label]
    }

    /// Supervised decision: the raw argmax, flipped when the negation rule
    /// is on and the sentence has an odd number of negations.
    /// Returns `(final, raw)`.
    pub fn supervised(&self, tokens: &[Token], set: &LexiconSet) -> (Polarity, Polarity) {
        let f = self.features(tokens, set);
        let raw = self.raw_polarity(&f);
        let flip = self.config.negation_postrule && f.negation_parity == 1;
        (if flip { raw.flipped() } else { raw }, raw)
    }

    pub fn classify(&self, text: &str, set: &LexiconSet) -> HybridOutcome {
        let tokens = set.tokenizer().tokenize(text);
        let mut trace = Vec::with_capacity(4);
        let rules: [(Provenance, &dyn Fn() -> Option<RuleVerdict>); 3] = [
            (Provenance::Flng, &|| flng(text, set)),
            (Provenance::Emo, &|| {
                emo(&tokens, set, self.config.emo_method)
            }),
            (Provenance::Ht, &|| ht(&tokens, set)),
        ];
        for (stage, rule) in rules {
            let verdict = rule();
            trace.push(StageOutcome {
                stage,
                verdict: verdict.as_ref().map(|v| v.polarity),
            });
            if let Some(v) = verdict {
                return HybridOutcome {
                    polarity: v.polarity,
                    provenance: stage,
                    evidence: Some(v.evidence),
                    trace,
                    classifier_raw: None,
                    negation_flipped: false,
                };
            }
        }
        let (polarity, raw) = self.supervised(&tokens, set);
        trace.push(StageOutcome {
            stage: Provenance::Classifier,
            verdict: Some(polarity),
        });
        HybridOutcome {
            polarity,
            provenance: Provenance::Classifier,
            evidence: None,
            trace,
            classifier_raw: Some(raw),
            negation_flipped: polarity != raw,
        }
    }

    pub fn save(&self, dir: impl AsRef<Path>) -> Result<(), SentimentError> {
        let dir = dir.as_ref();
        let io = |path: &Path, source| SentimentError::Io {
            path: path.to_path_buf(),
            source,
        };
        fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        for (name, body) in [
            (CONFIG_FILE, self.config.to_text()),
            (VOCAB_FILE, self.vocab.to_text()),
            (CLASSIFIER_FILE, self.classifier.to_text()),
        ] {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| io(&path, e))?;
        }
        Ok(())
    }

    pub fn load(dir: impl AsRef<Path>) -> Result<Self, SentimentError> {
        let dir = dir.as_ref();
        let read = |name: &str| {
            let path = dir.join(name);
            fs::read_to_string(&path).map_err(|source| SentimentError::Io { path, source })
        };
        let config = SentimentConfig::parse(&read(CONFIG_FILE)?)?;
        let vocab = NgramVocab::from_text(&read(VOCAB_FILE)?)?;
        let classifier = ClassifierModel::from_text(&read(CLASSIFIER_FILE)?)?;
        if classifier.labels != class_labels() {
            return Err(SentimentError::WrongClasses(classifier.labels));
        }
        let expected = vocab.len() + super::FIXED_FEATURES;
        if classifier.dim != expected {
            return Err(learners::LearnError::DimensionMismatch {
                expected,
                got: classifier.dim,
            }
            .into());
        }
        Ok(SentimentModel {
            config,
            vocab,
            classifier,
        })
    }
}

pub fn hybrid_classify(text: &str, set: &LexiconSet, model: &SentimentModel) -> HybridOutcome {
    model.classify(text, set)
}

/// Builds the vocabulary and trains the configured classifier.
///
/// With the negation rule on, a polar training label on a sentence with an
/// odd number of negations is flipped before training, so the classifier
/// learns the un-negated polarity that the rule will later reverse.
pub fn train_sentiment(
    docs: &[LabeledDoc],
    set: &LexiconSet,
    config: &SentimentConfig,
    hyper: &Hyperparams,
) -> Result<SentimentModel, SentimentError> {
    if docs.is_empty() {
        return Err(SentimentError::EmptyCorpus);
    }
    let tokenizer = set.tokenizer();
    let tokenized: Vec<Vec<Token>> = docs.iter().map(|d| tokenizer.tokenize(&d.text)).collect();
    let word_lists: Vec<_> = tokenized.iter().map(|t| word_forms(t)).collect();
    let vocab = build_ngram_vocab(&word_lists, config.vocab_k, config.stopword_k)?;

    let mut data = Dataset::new(class_labels(), vocab.len() + super::FIXED_FEATURES);
    for (doc, tokens) in docs.iter().zip(&tokenized) {
        let f = extract_features(tokens, set, &vocab, &config.tgp_weights);
        let label = if config.negation_postrule && f.negation_parity == 1 {
            doc.polarity.flipped()
        } else {
            doc.polarity
        };
        data.push(f.to_vector(vocab.len()), label.index())?;
    }
    let classifier = learners::train(config.classifier, &data, hyper)?;
    Ok(SentimentModel {
        config: config.clone(),
        vocab,
        classifier,
    })
}
