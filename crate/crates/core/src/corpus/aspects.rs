use serde::Serialize;

use super::{CorpusError, CorpusRecord};
use crate::langid::LangTag;
use crate::lexicon::LexiconSet;
use crate::sentiment::{emoticon_polarity, has_feeling_marker, Polarity};
use crate::text::normalize;

/// Language and sentiment statistics for the records of one polarity.
///
/// Negation and emoticon counts are lexical: they only see what the
/// lexicons list, so they are lower bounds on the true counts.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct PolarityAspects {
    pub documents: u64,
    pub tokens: u64,
    /// Tokens per document; 0 for an empty bucket.
    pub mean_length: f64,
    pub negation_count: u64,
    pub bn_count: u64,
    pub en_count: u64,
    pub un_count: u64,
    /// `None` when there are no EN tokens.
    pub bn_en_ratio: Option<f64>,
    pub pos_emoji: u64,
    pub neg_emoji: u64,
    pub pos_word_en: u64,
    pub pos_word_bn: u64,
    pub neg_word_en: u64,
    pub neg_word_bn: u64,
    /// Documents carrying a "- feeling" self-tag.
    pub feeling_tag_count: u64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct AspectReport {
    pub negative: PolarityAspects,
    pub neutral: PolarityAspects,
    pub positive: PolarityAspects,
}

impl AspectReport {
    pub fn bucket(&self, p: Polarity) -> &PolarityAspects {
        match p {
            Polarity::Negative => &self.negative,
            Polarity::Neutral => &self.neutral,
            Polarity::Positive => &self.positive,
        }
    }

    fn bucket_mut(&mut self, p: Polarity) -> &mut PolarityAspects {
        match p {
            Polarity::Negative => &mut self.negative,
            Polarity::Neutral => &mut self.neutral,
            Polarity::Positive => &mut self.positive,
        }
    }
}

pub fn aspect_stats(
    records: &[CorpusRecord],
    set: &LexiconSet,
) -> Result<AspectReport, CorpusError> {
    let mut report = AspectReport::default();
    for r in records {
        if r.tokens.is_empty() && !r.text.trim().is_empty() {
            return Err(CorpusError::Untagged { id: r.id });
        }
        let b = report.bucket_mut(r.sentiment);
        b.documents += 1;
        b.feeling_tag_count += u64::from(has_feeling_marker(&r.text));
        for t in &r.tokens {
            b.tokens += 1;
            match t.tag {
                LangTag::Bn => b.bn_count += 1,
                LangTag::En => b.en_count += 1,
                LangTag::Un => b.un_count += 1,
            }
            match emoticon_polarity(&t.text, set) {
                Some(p) if p > 0 => b.pos_emoji += 1,
                Some(p) if p < 0 => b.neg_emoji += 1,
                _ => {}
            }
            let word = normalize(&t.text);
            b.negation_count += u64::from(set.is_negation(word.as_str()));
            match (set.word_polarity(word.as_str()), t.tag) {
                (Some(1), LangTag::En) => b.pos_word_en += 1,
                (Some(1), LangTag::Bn) => b.pos_word_bn += 1,
                (Some(-1), LangTag::En) => b.neg_word_en += 1,
                (Some(-1), LangTag::Bn) => b.neg_word_bn += 1,
                _ => {}
            }
        }
    }
    for p in Polarity::ALL {
        let b = report.bucket_mut(p);
        b.mean_length = if b.documents == 0 {
            0.0
        } else {
            b.tokens as f64 / b.documents as f64
        };
        b.bn_en_ratio = (b.en_count > 0).then(|| b.bn_count as f64 / b.en_count as f64);
    }
    Ok(report)
}
