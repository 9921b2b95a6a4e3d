use std::collections::BTreeSet;

use serde::Serialize;

use super::{NgramVocab, TgpWeights};
use crate::learners::SparseVector;
use crate::lexicon::LexiconSet;
use crate::text::{normalize, NormalizedWord, Token, TokenKind};

/// How a polar phrase occurs in a sentence, strongest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MatchKind {
    /// All phrase words, contiguous and in order.
    Perfect,
    /// All phrase words, anywhere.
    Sparse,
    /// Some adjacent phrase word pair, contiguous and in order, that is not
    /// made of two stop words.
    Partial,
    NoMatch,
}

pub fn match_phrase(
    sentence: &[NormalizedWord],
    phrase: &[NormalizedWord],
    stopwords: &BTreeSet<NormalizedWord>,
) -> MatchKind {
    if phrase.is_empty() {
        return MatchKind::NoMatch;
    }
    if sentence.windows(phrase.len()).any(|w| w == phrase) {
        return MatchKind::Perfect;
    }
    if phrase.iter().all(|p| sentence.contains(p)) {
        return MatchKind::Sparse;
    }
    let partial = phrase.windows(2).any(|pair| {
        !(stopwords.contains(&pair[0]) && stopwords.contains(&pair[1]))
            && sentence.windows(2).any(|w| w == pair)
    });
    if partial {
        MatchKind::Partial
    } else {
        MatchKind::NoMatch
    }
}

/// Which branch of the intensifier rule applies to a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SocalCase {
    BothPositive,
    BothNegative,
    PositiveIntensifierNegativeWord,
    NegativeIntensifierPositiveWord,
    ZeroOperand,
}

pub fn socal_case(intensifier: f64, word: f64) -> SocalCase {
    if intensifier == 0.0 || word == 0.0 {
        SocalCase::ZeroOperand
    } else if intensifier > 0.0 && word > 0.0 {
        SocalCase::BothPositive
    } else if intensifier < 0.0 && word < 0.0 {
        SocalCase::BothNegative
    } else if intensifier > 0.0 {
        SocalCase::PositiveIntensifierNegativeWord
    } else {
        SocalCase::NegativeIntensifierPositiveWord
    }
}

/// Combines an intensifier score with the score of the word it modifies.
pub fn socal_combine(intensifier: f64, word: f64) -> f64 {
    match socal_case(intensifier, word) {
        SocalCase::BothPositive => intensifier + word,
        SocalCase::BothNegative => -(intensifier + word),
        SocalCase::PositiveIntensifierNegativeWord => word - intensifier,
        SocalCase::NegativeIntensifierPositiveWord => intensifier + word,
        SocalCase::ZeroOperand => word,
    }
}

/// Number of lexicon-derived columns appended after the n-gram block.
pub const FIXED_FEATURES: usize = 14;

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SentiFeatures {
    /// `(vocabulary index, count)` pairs sorted by index.
    pub ngram_slots: Vec<(usize, u32)>,
    pub negation_parity: u8,
    pub posu_count: u32,
    pub negu_count: u32,
    pub phrase_score: f64,
    pub acronym_polarity_sum: i64,
    /// Summed positive, negative and objective SentiWordNet scores.
    pub swn_triple: (f64, f64, f64),
    pub socal_sum: f64,
    pub nrc_pos: u32,
    pub nrc_neg: u32,
}

impl SentiFeatures {
    /// Dense layout: the n-gram block, then the lexicon columns. Signed
    /// quantities are split into positive and negative parts so every
    /// column is non-negative.
    pub fn to_vector(&self, vocab_len: usize) -> SparseVector {
        let split = |x: f64| (x.max(0.0), (-x).max(0.0));
        let (phrase_pos, phrase_neg) = split(self.phrase_score);
        let (acr_pos, acr_neg) = split(self.acronym_polarity_sum as f64);
        let (socal_pos, socal_neg) = split(self.socal_sum);
        let (swn_pos, swn_neg, swn_obj) = self.swn_triple;
        let fixed = [
            self.negation_parity as f64,
            self.posu_count as f64,
            self.negu_count as f64,
            phrase_pos,
            phrase_neg,
            acr_pos,
            acr_neg,
            swn_pos,
            swn_neg,
            swn_obj,
            socal_pos,
            socal_neg,
            self.nrc_pos as f64,
            self.nrc_neg as f64,
        ];
        let entries = self.ngram_slots.iter().map(|&(i, c)| (i, c as f64)).chain(
            fixed
                .into_iter()
                .enumerate()
                .map(|(j, v)| (vocab_len + j, v)),
        );
        SparseVector::new(vocab_len + FIXED_FEATURES, entries).expect("indices within layout")
    }
}

/// Normalized forms of the word tokens.
pub fn word_forms(tokens: &[Token]) -> Vec<NormalizedWord> {
    tokens
        .iter()
        .filter(|t| t.kind == TokenKind::Word)
        .map(|t| normalize(&t.text))
        .collect()
}

pub fn extract_features(
    tokens: &[Token],
    set: &LexiconSet,
    vocab: &NgramVocab,
    weights: &TgpWeights,
) -> SentiFeatures {
    let words = word_forms(tokens);
    let mut f = SentiFeatures {
        ngram_slots: vocab.count(&words),
        ..SentiFeatures::default()
    };
    let mut negations = 0u32;
    for w in &words {
        let w = w.as_str();
        negations += u32::from(set.is_negation(w));
        f.posu_count += u32::from(set.posu.contains(w));
        f.negu_count += u32::from(set.negu.contains(w));
        if let Some(a) = set.acronyms.get(w) {
            f.acronym_polarity_sum += a.polarity as i64;
        }
        if let Some(s) = set.swn.get(w) {
            f.swn_triple.0 += s.pos;
            f.swn_triple.1 += s.neg;
            f.swn_triple.2 += s.obj;
        }
        if let Some(e) = set.nrc.get(w) {
            f.nrc_pos += u32::from(e.positive);
            f.nrc_neg += u32::from(e.negative);
        }
    }
    f.negation_parity = (negations % 2) as u8;
    f.phrase_score = set
        .phrases
        .iter()
        .map(|p| {
            p.polarity as f64 * weights.weight(match_phrase(&words, &p.tokens, &vocab.stopwords))
        })
        .sum();
    f.socal_sum = socal_sum(&words, set);
    f
}

fn socal_sum(words: &[NormalizedWord], set: &LexiconSet) -> f64 {
    let mut total = 0.0;
    let mut i = 0;
    while i < words.len() {
        let here = words[i].as_str();
        let next = words
            .get(i + 1)
            .and_then(|w| set.socal_words.get(w.as_str()));
        match (set.socal_intensifiers.get(here), next) {
            (Some(&intensity), Some(&score)) => {
                total += socal_combine(intensity, score);
                i += 2;
                continue;
            }
            _ => {
                if let Some(&score) = set.socal_words.get(here) {
                    total += score;
                }
            }
        }
        i += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{Acronym, NrcEntry, PolarPhrase, SwnScore};
    use crate::sentiment::build_ngram_vocab;
    use crate::text::tokenize;

    fn words(text: &str) -> Vec<NormalizedWord> {
        text.split_whitespace().map(normalize).collect()
    }

    #[test]
    fn phrase_match_kinds() {
        let phrase = words("boshe dekha jaye na");
        let none = BTreeSet::new();
        let m = |s: &str| match_phrase(&words(s), &phrase, &none);
        assert_eq!(m("ajke boshe dekha jaye na"), MatchKind::Perfect);
        assert_eq!(m("na jaye dekha boshe"), MatchKind::Sparse);
        assert_eq!(m("boshe dekha hobe"), MatchKind::Partial);
        assert_eq!(m("ami asbo"), MatchKind::NoMatch);
        assert_eq!(match_phrase(&words("a b"), &[], &none), MatchKind::NoMatch);
    }

    #[test]
    fn stopword_bigrams_do_not_count() {
        let stop: BTreeSet<_> = words("ami to").into_iter().collect();
        let phrase = words("ami to jabo");
        assert_eq!(
            match_phrase(&words("ami to na"), &phrase, &stop),
            MatchKind::NoMatch
        );
        assert_eq!(
            match_phrase(&words("to jabo"), &phrase, &stop),
            MatchKind::Partial
        );
    }

    #[test]
    fn socal_rule_table() {
        assert_eq!(socal_combine(2.0, 3.0), 5.0);
        assert_eq!(socal_combine(-1.0, -2.0), 3.0);
        assert_eq!(socal_combine(1.0, -2.0), -3.0);
        assert_eq!(socal_combine(-1.0, 3.0), 2.0);
        assert_eq!(socal_combine(0.0, -4.0), -4.0);
        assert_eq!(socal_combine(2.0, 0.0), 0.0);
    }

    fn lexicons() -> LexiconSet {
        let mut s = LexiconSet::default();
        s.posu.insert(normalize("bhalo"));
        s.negu.insert(normalize("baje"));
        s.negations_bn.insert(normalize("na"));
        s.negations_en.insert(normalize("not"));
        s.acronyms.insert(
            normalize("hpy"),
            Acronym {
                expansion: "happy".into(),
                polarity: 1,
            },
        );
        s.swn.insert(
            normalize("good"),
            SwnScore {
                pos: 0.75,
                neg: 0.0,
                obj: 0.25,
            },
        );
        s.socal_words.insert(normalize("good"), 3.0);
        s.socal_words.insert(normalize("bad"), -3.0);
        s.socal_intensifiers.insert(normalize("very"), 1.0);
        s.nrc.insert(
            normalize("bad"),
            NrcEntry {
                positive: false,
                negative: true,
            },
        );
        s.phrases.push(PolarPhrase {
            tokens: words("boshe dekha jaye na"),
            polarity: -1,
        });
        s
    }

    #[test]
    fn bhalo_na() {
        let set = lexicons();
        let vocab = NgramVocab::default();
        let f = extract_features(&tokenize("bhalo na"), &set, &vocab, &TgpWeights::default());
        assert_eq!(f.posu_count, 1);
        assert_eq!(f.negation_parity, 1);
        assert_eq!(f.negu_count, 0);
    }

    #[test]
    fn empty_document_is_all_zero() {
        let set = lexicons();
        let vocab = build_ngram_vocab(&[words("bhalo na")], 10, 1).unwrap();
        let f = extract_features(&[], &set, &vocab, &TgpWeights::default());
        assert_eq!(f, SentiFeatures::default());
        assert_eq!(f.to_vector(vocab.len()).nnz(), 0);
    }

    #[test]
    fn every_field() {
        let set = lexicons();
        let vocab = build_ngram_vocab(&[words("very good day"), words("na")], 10, 0).unwrap();
        let text = "very good hpy , not bad boshe dekha jaye na good";
        let f = extract_features(&tokenize(text), &set, &vocab, &TgpWeights::default());
        assert_eq!(f.negation_parity, 0);
        assert_eq!(f.acronym_polarity_sum, 1);
        assert_eq!(f.swn_triple, (1.5, 0.0, 0.5));
        // (very, good) -> 4, bad -> -3, good -> 3
        assert_eq!(f.socal_sum, 4.0);
        assert_eq!((f.nrc_pos, f.nrc_neg), (0, 1));
        assert_eq!(f.phrase_score, -1.0);
        let named: Vec<&str> = f
            .ngram_slots
            .iter()
            .map(|&(i, _)| vocab.grams()[i].as_str())
            .collect();
        assert_eq!(named, ["good", "na", "very", "very good"]);
        let v = f.to_vector(vocab.len());
        assert_eq!(v.dim(), vocab.len() + FIXED_FEATURES);
        assert!(v.entries().iter().all(|&(_, x)| x >= 0.0));
    }
}
