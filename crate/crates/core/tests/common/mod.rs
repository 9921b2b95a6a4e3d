#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;
use std::sync::LazyLock;

use codemix::langid::{train_lang_model, LangModel};
use codemix::learners::Hyperparams;
use codemix::lexicon::LexiconSet;
use codemix::sentiment::{train_sentiment, LabeledDoc, SentimentConfig, SentimentModel};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub static LEXICONS: LazyLock<LexiconSet> = LazyLock::new(|| {
    LexiconSet::load(data_dir().join("lexicons"))
        .expect("fixture lexicons")
        .lexicons
});

pub static LANG_MODEL: LazyLock<LangModel> = LazyLock::new(|| {
    let bn: Vec<_> = LEXICONS.bn_words.iter().cloned().collect();
    let en: Vec<_> = LEXICONS.en_words.iter().cloned().collect();
    train_lang_model(&bn, &en, &Hyperparams::default()).unwrap()
});

pub fn labeled(name: &str) -> Vec<LabeledDoc> {
    let text = fs::read_to_string(data_dir().join("sentiment").join(name)).expect("fixture");
    serde_json::from_str(&text).expect("fixture json")
}

pub static SENTIMENT: LazyLock<SentimentModel> = LazyLock::new(|| {
    train_sentiment(
        &labeled("train.json"),
        &LEXICONS,
        &SentimentConfig::default(),
        &Hyperparams::default(),
    )
    .unwrap()
});
