mod common;

use std::collections::HashMap;

use codemix::sentiment::{
    build_ngram_vocab, emo, extract_features, flng, ht, match_phrase, socal_case, socal_combine,
    word_forms, EmoMethod, MatchKind, Polarity, Provenance, SocalCase,
};
use codemix::text::{normalize, NormalizedWord};
use common::{labeled, LEXICONS, SENTIMENT};
use proptest::prelude::*;

fn words(text: &str) -> Vec<NormalizedWord> {
    text.split_whitespace().map(normalize).collect()
}

fn plain_sentence() -> impl Strategy<Value = String> {
    let pool = vec![
        "ami", "aaj", "office", "bus", "movie", "match", "bhalo", "darun", "kharap", "baje",
        "good", "bad", "khub", "very", "happy", "sad", "jhakkas", "bekar", "posachhe", "the",
        "kal", "hobe", "song", "love", "hate",
    ];
    prop::collection::vec(prop::sample::select(pool), 1..10).prop_map(|w| w.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn socal_cases_are_exhaustive(i in -10.0f64..10.0, w in -10.0f64..10.0, zero in 0u8..4) {
        let (i, w) = match zero { 0 => (0.0, w), 1 => (i, 0.0), _ => (i, w) };
        let hits = [i > 0.0 && w > 0.0, i < 0.0 && w < 0.0, i > 0.0 && w < 0.0, i < 0.0 && w > 0.0, i == 0.0 || w == 0.0];
        prop_assert_eq!(hits.iter().filter(|&&h| h).count(), 1);
        let branch = hits.iter().position(|&h| h).unwrap();
        let case = [
            SocalCase::BothPositive,
            SocalCase::BothNegative,
            SocalCase::PositiveIntensifierNegativeWord,
            SocalCase::NegativeIntensifierPositiveWord,
            SocalCase::ZeroOperand,
        ][branch];
        prop_assert_eq!(socal_case(i, w), case);
        prop_assert!(socal_combine(i, w).is_finite());
    }

    #[test]
    fn contiguous_phrase_is_perfect(pre in plain_sentence(), post in plain_sentence(), shuffle in any::<bool>()) {
        let phrase = words("boshe dekha jaye na");
        let stop = SENTIMENT.vocab.stopwords.clone();
        let sentence = words(&format!("{pre} boshe dekha jaye na {post}"));
        prop_assert_eq!(match_phrase(&sentence, &phrase, &stop), MatchKind::Perfect);
        if shuffle {
            let sparse = words(&format!("na {pre} jaye dekha {post} boshe"));
            prop_assert_eq!(match_phrase(&sparse, &phrase, &stop), MatchKind::Sparse);
        }
    }

    #[test]
    fn feature_extraction_is_pure(text in plain_sentence()) {
        let tokens = LEXICONS.tokenizer().tokenize(&text);
        let a = SENTIMENT.features(&tokens, &LEXICONS);
        let b = SENTIMENT.features(&LEXICONS.tokenizer().tokenize(&text), &LEXICONS);
        prop_assert_eq!(a.to_vector(SENTIMENT.vocab.len()), b.to_vector(SENTIMENT.vocab.len()));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn double_negation_is_an_involution(text in plain_sentence()) {
        // "never" is a negation word absent from the training data, so it
        // adds no n-gram features; two of them leave the parity unchanged
        let base = SENTIMENT.classify(&text, &LEXICONS);
        prop_assume!(base.provenance == Provenance::Classifier);
        let twice = SENTIMENT.classify(&format!("{text} never never"), &LEXICONS);
        prop_assert_eq!(twice.polarity, base.polarity);
        prop_assert_eq!(twice.classifier_raw, base.classifier_raw);
        let once = SENTIMENT.classify(&format!("{text} never"), &LEXICONS);
        prop_assert_eq!(Some(once.polarity), once.classifier_raw.map(Polarity::flipped));
    }

    #[test]
    fn rules_never_say_neutral(text in "\\PC{0,40}", extra in prop::sample::select(vec!["", " 🙂 😠", " #bhalo_din", " - feeling meh", " 😠 🙂 🙂"])) {
        let text = format!("{text}{extra}");
        let tokens = LEXICONS.tokenizer().tokenize(&text);
        let verdicts = [
            flng(&text, &LEXICONS),
            emo(&tokens, &LEXICONS, EmoMethod::HighFrequency),
            emo(&tokens, &LEXICONS, EmoMethod::GreatestIndex),
            emo(&tokens, &LEXICONS, EmoMethod::AverageIndex),
            ht(&tokens, &LEXICONS),
        ];
        for v in verdicts.into_iter().flatten() {
            prop_assert_ne!(v.polarity, Polarity::Neutral);
        }
    }

    #[test]
    fn earlier_rules_preempt_later_stages(
        base in plain_sentence(),
        f in prop::option::of(any::<bool>()),
        e in prop::option::of(any::<bool>()),
        h in prop::option::of(any::<bool>()),
    ) {
        let mut text = base;
        if let Some(pos) = h {
            text = format!("{} {text}", if pos { "#best_day" } else { "#baje_din" });
        }
        if let Some(pos) = e {
            text = format!("{text} {}", if pos { ":)" } else { ":(" });
        }
        if let Some(pos) = f {
            text = format!("{text} \u{2014} feeling {}", if pos { "blessed" } else { "angry" });
        }
        let out = SENTIMENT.classify(&text, &LEXICONS);
        let stages: Vec<Provenance> = out.trace.iter().map(|s| s.stage).collect();
        let order = [Provenance::Flng, Provenance::Emo, Provenance::Ht, Provenance::Classifier];
        prop_assert_eq!(&stages[..], &order[..stages.len()]);
        prop_assert_eq!(stages.last(), Some(&out.provenance));
        prop_assert!(out.trace[..out.trace.len() - 1].iter().all(|s| s.verdict.is_none()));
        let first = [(Provenance::Flng, f), (Provenance::Emo, e), (Provenance::Ht, h)]
            .into_iter()
            .find_map(|(stage, s)| s.map(|p| (stage, if p { Polarity::Positive } else { Polarity::Negative })));
        if let Some((stage, polarity)) = first {
            prop_assert_eq!((out.provenance, out.polarity), (stage, polarity));
            prop_assert_eq!(out.classifier_raw, None);
        }
    }
}

#[test]
fn vocabulary_matches_counting_oracle() {
    let docs: Vec<Vec<NormalizedWord>> = labeled("train.json")
        .iter()
        .take(100)
        .map(|d| word_forms(&LEXICONS.tokenizer().tokenize(&d.text)))
        .collect();
    let k = 40;
    let vocab = build_ngram_vocab(&docs, k, 10).unwrap();
    let mut expected = Vec::new();
    for n in 1..=3 {
        let mut counts: HashMap<String, u64> = HashMap::new();
        for d in &docs {
            for w in d.windows(n) {
                let g: Vec<&str> = w.iter().map(|x| x.as_str()).collect();
                *counts.entry(g.join(" ")).or_default() += 1;
            }
        }
        let mut ranked: Vec<(String, u64)> = counts.into_iter().collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        if n == 1 {
            let stop: Vec<&str> = ranked.iter().take(10).map(|(g, _)| g.as_str()).collect();
            let got: Vec<&str> = vocab.stopwords.iter().map(|w| w.as_str()).collect();
            let mut stop_sorted = stop.clone();
            stop_sorted.sort();
            assert_eq!(got, stop_sorted);
        }
        expected.extend(ranked.into_iter().take(k).map(|(g, _)| g));
    }
    assert_eq!(vocab.grams(), &expected[..]);
}

#[test]
fn fixture_sentence_features_match_recount() {
    let text = "Khub bhalo na, very good movie but hpy bekar boring :) boshe dekha jaye na";
    let tokens = LEXICONS.tokenizer().tokenize(text);
    let f = extract_features(
        &tokens,
        &LEXICONS,
        &SENTIMENT.vocab,
        &SENTIMENT.config.tgp_weights,
    );
    let ws: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty() && *w != ":)")
        .collect();
    let lower: Vec<String> = ws.iter().map(|w| w.to_lowercase()).collect();
    let count = |list: &[&str]| lower.iter().filter(|w| list.contains(&w.as_str())).count() as u32;
    assert_eq!(f.posu_count, count(&["bhalo", "good"]));
    assert_eq!(f.negu_count, count(&["boring"]));
    assert_eq!(f.negation_parity, (count(&["na"]) % 2) as u8);
    assert_eq!(f.acronym_polarity_sum, 1);
    // "very good" is an intensified pair (1 + 3); "boring" stands alone (-2)
    assert_eq!(f.socal_sum, 4.0 - 2.0);
    let swn = (0.75, 0.5, 0.25 + 0.5 + 1.0);
    assert!((f.swn_triple.0 - swn.0).abs() < 1e-12 && (f.swn_triple.1 - swn.1).abs() < 1e-12);
    assert!((f.swn_triple.2 - swn.2).abs() < 1e-12);
    assert_eq!((f.nrc_pos, f.nrc_neg), (0, 0));
    // the negative phrase matches perfectly
    assert_eq!(f.phrase_score, -1.0);
}

#[test]
fn empty_document_has_zero_features() {
    let f = SENTIMENT.features(&[], &LEXICONS);
    assert_eq!(f.to_vector(SENTIMENT.vocab.len()).nnz(), 0);
}

#[test]
fn negated_example_sentence() {
    let out = SENTIMENT.classify("Dhurr ar posachhe na all these things.", &LEXICONS);
    assert_eq!(out.provenance, Provenance::Classifier);
    assert!(out.negation_flipped);
    assert_eq!(out.polarity, Polarity::Negative);
    let out = SENTIMENT.classify("ki din gelo \u{2014} feeling blessed", &LEXICONS);
    assert_eq!(
        (out.polarity, out.provenance),
        (Polarity::Positive, Provenance::Flng)
    );
}
