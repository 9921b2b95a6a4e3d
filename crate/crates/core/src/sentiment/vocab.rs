use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use super::SentimentError;
use crate::text::{normalize, NormalizedWord};

pub const DEFAULT_VOCAB_SIZE: usize = 2000;
pub const DEFAULT_STOPWORDS: usize = 50;
pub const VOCAB_HEADER: &str = "NGRAMVOCAB v1";

/// Word 1-, 2- and 3-grams kept as classifier features, plus the stop-word
/// list used for phrase matching. N-grams are space-joined normalized words.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NgramVocab {
    grams: Vec<String>,
    index: HashMap<String, usize>,
    pub stopwords: BTreeSet<NormalizedWord>,
}

impl NgramVocab {
    pub fn from_parts(grams: Vec<String>, stopwords: BTreeSet<NormalizedWord>) -> Self {
        let index = grams
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        NgramVocab {
            grams,
            index,
            stopwords,
        }
    }

    pub fn len(&self) -> usize {
        self.grams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grams.is_empty()
    }

    pub fn grams(&self) -> &[String] {
        &self.grams
    }

    pub fn index_of(&self, gram: &str) -> Option<usize> {
        self.index.get(gram).copied()
    }

    /// Occurrence counts of vocabulary n-grams in `words`, sorted by index.
    pub fn count(&self, words: &[NormalizedWord]) -> Vec<(usize, u32)> {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for n in 1..=3 {
            for gram in ngrams(words, n) {
                if let Some(i) = self.index_of(&gram) {
                    *counts.entry(i).or_default() += 1;
                }
            }
        }
        counts.into_iter().collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{VOCAB_HEADER}\n");
        for w in &self.stopwords {
            let _ = writeln!(out, "stop\t{w}");
        }
        for g in &self.grams {
            let _ = writeln!(out, "gram\t{g}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, SentimentError> {
        let err = |line: usize, message: String| SentimentError::VocabParse { line, message };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        if lines.next().map(|(_, l)| l) != Some(VOCAB_HEADER) {
            return Err(err(1, format!("expected header {VOCAB_HEADER:?}")));
        }
        let mut grams = Vec::new();
        let mut stopwords = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for (n, line) in lines {
            if line.is_empty() {
                continue;
            }
            match line.split_once('\t') {
                Some(("stop", w)) => {
                    stopwords.insert(normalize(w));
                }
                Some(("gram", g)) => {
                    if g.is_empty() || g.split(' ').count() > 3 {
                        return Err(err(n, format!("bad n-gram {g:?}")));
                    }
                    if !seen.insert(g.to_string()) {
                        return Err(err(n, format!("duplicate n-gram {g:?}")));
                    }
                    grams.push(g.to_string());
                }
                _ => return Err(err(n, "expected `stop` or `gram` row".into())),
            }
        }
        Ok(NgramVocab::from_parts(grams, stopwords))
    }
}

pub(crate) fn ngrams(words: &[NormalizedWord], n: usize) -> impl Iterator<Item = String> + '_ {
    words.windows(n).map(|w| {
        w.iter()
            .map(NormalizedWord::as_str)
            .collect::<Vec<_>>()
            .join(" ")
    })
}

fn top_k(counts: HashMap<String, u64>, k: usize) -> Vec<String> {
    let mut ranked: Vec<(String, u64)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(k);
    ranked.into_iter().map(|(g, _)| g).collect()
}

/// Keeps the `k` most frequent n-grams for each n in 1..=3 (ties broken
/// lexicographically) and the `stopword_k` most frequent unigrams as stop
/// words. Indices run over unigrams first, then bigrams, then trigrams.
pub fn build_ngram_vocab(
    docs: &[Vec<NormalizedWord>],
    k: usize,
    stopword_k: usize,
) -> Result<NgramVocab, SentimentError> {
    if docs.is_empty() {
        return Err(SentimentError::EmptyCorpus);
    }
    let mut grams = Vec::new();
    let mut stopwords = BTreeSet::new();
    for n in 1..=3 {
        let mut counts: HashMap<String, u64> = HashMap::new();
        for doc in docs {
            for g in ngrams(doc, n) {
                *counts.entry(g).or_default() += 1;
            }
        }
        if n == 1 {
            stopwords = top_k(counts.clone(), stopword_k)
                .into_iter()
                .map(|w| normalize(&w))
                .collect();
        }
        grams.extend(top_k(counts, k));
    }
    Ok(NgramVocab::from_parts(grams, stopwords))
}
