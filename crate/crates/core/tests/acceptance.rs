//! Acceptance gate. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line even under a captured `cargo test`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use codemix::corpus::{cmi, filter_stream, parse_release, write_release, FilterConfig, RawMessage};
use codemix::langid::{train_lang_model, LangModel, LangTag, LangTagger, TagSource};
use codemix::learners::{
    self, cohen_kappa, metrics, ClassifierKind, ConfusionMatrix, Dataset, Hyperparams, SparseVector,
};
use codemix::lexicon::LexiconSet;
use codemix::sentiment::{
    socal_case, socal_combine, train_sentiment, LabeledDoc, Polarity, Provenance, SentimentConfig,
    SentimentModel, SocalCase,
};
use codemix::text::{normalize, Tokenizer};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn lexicons() -> LexiconSet {
    LexiconSet::load(data().join("lexicons"))
        .expect("fixture lexicons")
        .lexicons
}

fn labeled(name: &str) -> Vec<LabeledDoc> {
    let text = fs::read_to_string(data().join("sentiment").join(name)).expect("fixture");
    serde_json::from_str(&text).expect("fixture json")
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn metric_fidelity() -> Outcome {
    let start = Instant::now();
    let labels = ["pos", "neg", "neu"].map(String::from).to_vec();
    let cm = ConfusionMatrix::from_counts(
        labels,
        vec![vec![161, 12, 27], vec![17, 145, 38], vec![13, 21, 166]],
    )
    .map_err(|e| e.to_string())?;
    let r = metrics(&cm).map_err(|e| e.to_string())?;
    let got = [
        r.accuracy,
        r.macro_precision,
        r.macro_recall,
        r.macro_f1,
        r.macro_g,
    ];
    let published = [78.66, 79.20, 78.66, 78.70, 78.81];
    for (g, p) in got.iter().zip(published) {
        check((g - p).abs() <= 0.05, || {
            format!("{got:?} vs {published:?}")
        })?;
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("acc/P/R/F1/G = {got:?}"))
}

fn release_fidelity() -> Outcome {
    let start = Instant::now();
    let input =
        fs::read_to_string(data().join("release/sample83.json")).map_err(|e| e.to_string())?;
    let records = parse_release(&input).map_err(|e| e.to_string())?;
    check(records.len() == 1 && records[0].id == 83, || {
        "expected record 83".into()
    })?;
    let r = &records[0];
    use LangTag::*;
    let expected = [
        ("Onekdin", Bn),
        ("por", Bn),
        ("spotlight", En),
        ("e", Bn),
        ("fire", Bn),
        ("eshe", Bn),
        ("nijeke", Bn),
        ("besh", Bn),
        ("bikheto", Bn),
        ("bikheto", Bn),
        ("lagche", Bn),
        (",", Un),
        ("I", En),
        ("am", En),
        ("toh", Bn),
        ("very", En),
        ("hpy", En),
        (".", Un),
    ];
    let got: Vec<(&str, LangTag)> = r.tokens.iter().map(|t| (t.text.as_str(), t.tag)).collect();
    check(got == expected, || {
        format!("token assignment differs: {got:?}")
    })?;
    check(r.sentiment == Polarity::Positive, || "sentiment".into())?;
    let written = write_release(&records);
    check(written == input, || "write(parse(x)) differs from x".into())?;
    check(
        write_release(&parse_release(&written).map_err(|e| e.to_string())?) == written,
        || "second write differs".into(),
    )?;
    within(Duration::from_secs(1), start)?;
    Ok(format!(
        "{} tagged tokens, byte-identical round trip",
        r.tokens.len()
    ))
}

/// Opposes each rule's evidence to the classifier's own answer and checks
/// that the first rule with evidence wins.
fn cascade_order(set: &LexiconSet, model: &SentimentModel) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let pos_words = [
        "bhalo", "darun", "good", "great", "awesome", "fatafati", "posachhe",
    ];
    let neg_words = ["kharap", "baje", "bad", "awful", "boring", "bekar", "faltu"];
    let filler = [
        "ami", "aaj", "office", "movie", "match", "kal", "bus", "the",
    ];
    let feeling = |s: i8| if s > 0 { "happy" } else { "sad" };
    let emoticon = |s: i8| if s > 0 { "🙂" } else { "😠" };
    let hashtag = |s: i8| if s > 0 { "#bhalo_din" } else { "#baje_din" };
    let mut violations = Vec::new();
    let mut by_stage: BTreeMap<String, usize> = BTreeMap::new();
    for i in 0..200 {
        let lean: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let pool = if lean > 0 { &pos_words } else { &neg_words };
        let mut words: Vec<&str> = (0..rng.gen_range(2..5))
            .map(|_| *filler.choose(&mut rng).unwrap())
            .collect();
        for _ in 0..rng.gen_range(1..3) {
            words.push(pool.choose(&mut rng).unwrap());
        }
        let base = words.join(" ");
        let raw = model.supervised(&set.tokenizer().tokenize(&base), set).0;
        let against: i8 = match raw {
            Polarity::Positive => -1,
            Polarity::Negative => 1,
            Polarity::Neutral => -lean,
        };
        // each rule independently gets opposed evidence, agreeing evidence or none
        let mut pick = || match rng.gen_range(0..4) {
            0 => None,
            1 => Some(-against),
            _ => Some(against),
        };
        let (f, e, h) = if i < 50 {
            (None, None, None)
        } else {
            (pick(), pick(), pick())
        };
        let mut text = base.clone();
        if let Some(s) = h {
            text = format!("{} {text}", hashtag(s));
        }
        if let Some(s) = e {
            text = format!("{text} {}", emoticon(s));
        }
        if let Some(s) = f {
            text = format!("{text} - feeling {}", feeling(s));
        }
        let expected = [
            (Provenance::Flng, f),
            (Provenance::Emo, e),
            (Provenance::Ht, h),
        ]
        .into_iter()
        .find_map(|(stage, s)| s.map(|s| (stage, Polarity::from_sign(s as f64))))
        .unwrap_or((Provenance::Classifier, raw));
        let out = model.classify(&text, set);
        let trace_len = match expected.0 {
            Provenance::Flng => 1,
            Provenance::Emo => 2,
            Provenance::Ht => 3,
            Provenance::Classifier => 4,
        };
        if (out.provenance, out.polarity) != expected || out.trace.len() != trace_len {
            violations.push(format!(
                "{text:?}: {:?}/{:?} expected {expected:?}",
                out.provenance, out.polarity
            ));
        }
        *by_stage.entry(expected.0.to_string()).or_default() += 1;
    }
    check(violations.is_empty(), || {
        format!("{} violations, first {}", violations.len(), violations[0])
    })?;
    Ok(format!(
        "200 documents, zero violations, decided by {by_stage:?}"
    ))
}

fn socal_table() -> Outcome {
    let examples = [
        ((2.0, 3.0), 5.0),
        ((-1.0, -2.0), 3.0),
        ((1.0, -2.0), -3.0),
        ((-1.0, 3.0), 2.0),
    ];
    for ((i, w), want) in examples {
        let got = socal_combine(i, w);
        check(got == want, || {
            format!("socal_combine({i}, {w}) = {got}, want {want}")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10_000);
    let mut seen = BTreeSet::new();
    for k in 0..10_000 {
        let draw = |rng: &mut ChaCha8Rng| match rng.gen_range(0..6) {
            0 => 0.0,
            1 => -0.0,
            _ => rng.gen_range(-5.0..5.0),
        };
        let (i, w) = if k < 9 {
            ([-1.0, 0.0, 1.0][k / 3], [-1.0, 0.0, 1.0][k % 3])
        } else {
            (draw(&mut rng), draw(&mut rng))
        };
        // oracle: exactly one of the branch predicates holds
        let branches = [
            i > 0.0 && w > 0.0,
            i < 0.0 && w < 0.0,
            i > 0.0 && w < 0.0,
            i < 0.0 && w > 0.0,
            i == 0.0 || w == 0.0,
        ];
        check(branches.iter().filter(|&&b| b).count() == 1, || {
            format!("({i}, {w}) hits several branches")
        })?;
        let expected = if branches[0] || branches[3] {
            i + w
        } else if branches[1] {
            -(i + w)
        } else if branches[2] {
            w - i
        } else {
            w
        };
        let case = socal_case(i, w);
        let case_ok = matches!(
            (case, branches),
            (SocalCase::BothPositive, [true, ..])
                | (SocalCase::BothNegative, [_, true, ..])
                | (SocalCase::PositiveIntensifierNegativeWord, [_, _, true, ..])
                | (
                    SocalCase::NegativeIntensifierPositiveWord,
                    [_, _, _, true, _]
                )
                | (SocalCase::ZeroOperand, [_, _, _, _, true])
        );
        check(case_ok, || format!("({i}, {w}) classified as {case:?}"))?;
        let got = socal_combine(i, w);
        check(got == expected, || {
            format!("socal_combine({i}, {w}) = {got}, oracle {expected}")
        })?;
        seen.insert(format!("{case:?}"));
    }
    check(seen.len() == 5, || format!("only cases {seen:?} reached"))?;
    Ok("4 examples exact, 10000 pairs each hit exactly one case".into())
}

const REGIMES: [(usize, usize); 5] = [(2, 4), (2, 5), (3, 6), (4, 7), (5, 8)];

fn synthetic_stream(seeds: &[&str]) -> Vec<RawMessage> {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let other = [
        "office", "movie", "the", "match", "today", "bus", "na", "jabo", "go", "2", "bar",
    ];
    let mut msgs: Vec<RawMessage> = Vec::new();
    for id in 0..1000 {
        let text = match rng.gen_range(0..10) {
            // near-duplicate of an earlier message
            0 if !msgs.is_empty() => {
                let prev = &msgs[rng.gen_range(0..msgs.len())].text;
                let mut t = prev.to_uppercase().replace(' ', "   ");
                if rng.gen_bool(0.3) {
                    t.push_str("oooo");
                }
                t
            }
            1 => "আমি খুব ভালো আছি আজ bhalo".to_string(),
            _ => {
                let len = rng.gen_range(1..11);
                let mut words: Vec<String> = (0..len)
                    .map(|_| {
                        if rng.gen_bool(0.45) {
                            seeds.choose(&mut rng).unwrap().to_string()
                        } else {
                            other.choose(&mut rng).unwrap().to_string()
                        }
                    })
                    .collect();
                if rng.gen_bool(0.3) {
                    words.insert(
                        rng.gen_range(0..=words.len()),
                        ["!", "?", "...", ","].choose(&mut rng).unwrap().to_string(),
                    );
                }
                words.join(" ")
            }
        };
        msgs.push(RawMessage { id, text });
    }
    msgs
}

/// Brute-force filter over whitespace chunks; the synthetic stream has no
/// attached punctuation, so chunks are tokens.
fn filter_oracle(
    msgs: &[RawMessage],
    seeds: &HashSet<String>,
    alpha: usize,
    beta: usize,
) -> BTreeSet<i64> {
    let mut seen = HashSet::new();
    let mut kept = BTreeSet::new();
    for m in msgs {
        let chunks: Vec<String> = m
            .text
            .split_whitespace()
            .map(|c| normalize(c).into_string())
            .collect();
        let letters: Vec<char> = chunks
            .concat()
            .chars()
            .filter(|c| c.is_alphabetic())
            .collect();
        if letters.iter().filter(|c| !c.is_ascii()).count() * 2 > letters.len() {
            continue;
        }
        if chunks.iter().filter(|c| seeds.contains(c.as_str())).count() < alpha {
            continue;
        }
        if chunks
            .iter()
            .filter(|c| !c.chars().all(|ch| ch.is_ascii_punctuation()))
            .count()
            < beta
        {
            continue;
        }
        if seen.insert(chunks.join(" ")) {
            kept.insert(m.id);
        }
    }
    kept
}

fn filter_monotonicity() -> Outcome {
    let seed_words = [
        "ami", "khub", "bhalo", "kharap", "ki", "toh", "ar", "ekta", "kichu", "onek",
    ];
    let msgs = synthetic_stream(&seed_words);
    let seeds: HashSet<String> = seed_words.iter().map(|s| s.to_string()).collect();
    let mut kept = Vec::new();
    for (alpha, beta) in REGIMES {
        let cfg = FilterConfig::new(
            alpha,
            beta,
            seed_words.iter().map(|w| normalize(w)).collect(),
        )
        .map_err(|e| e.to_string())?;
        let ids: BTreeSet<i64> = filter_stream(msgs.clone(), &cfg)
            .kept
            .iter()
            .map(|m| m.id)
            .collect();
        let oracle = filter_oracle(&msgs, &seeds, alpha, beta);
        check(ids == oracle, || {
            format!("({alpha},{beta}): filter and oracle disagree")
        })?;
        kept.push(((alpha, beta), ids));
    }
    let mut violations = 0;
    for (a, ka) in &kept {
        for (b, kb) in &kept {
            if b.0 >= a.0 && b.1 >= a.1 && !kb.is_subset(ka) {
                violations += 1;
            }
        }
    }
    check(violations == 0, || {
        format!("{violations} subset violations")
    })?;
    let sizes: Vec<usize> = kept.iter().map(|(_, k)| k.len()).collect();
    check(sizes.first() > sizes.last(), || {
        format!("degenerate stream: {sizes:?}")
    })?;
    Ok(format!("kept per regime {sizes:?}, zero violations"))
}

fn cmi_properties() -> Outcome {
    use LangTag::*;
    check(cmi(&[Bn, Bn, Bn]) == 0.0 && cmi(&[En, En]) == 0.0, || {
        "monolingual".into()
    })?;
    check(cmi(&[Bn, En]) == 50.0, || {
        format!("[BN,EN] = {}", cmi(&[Bn, En]))
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    for _ in 0..10_000 {
        let tags: Vec<LangTag> = (0..rng.gen_range(0..30))
            .map(|_| LangTag::ALL[rng.gen_range(0..3)])
            .collect();
        let swapped: Vec<LangTag> = tags
            .iter()
            .map(|t| match t {
                Bn => En,
                En => Bn,
                Un => Un,
            })
            .collect();
        let v = cmi(&tags);
        check((0.0..=100.0).contains(&v), || {
            format!("{v} out of range for {tags:?}")
        })?;
        check(v == cmi(&swapped), || {
            format!("swap changes CMI for {tags:?}")
        })?;
    }
    Ok("bounds and label-swap invariance over 10000 sequences".into())
}

fn kappa_oracle(a: &[u8], b: &[u8]) -> f64 {
    let n = a.len() as f64;
    let labels: BTreeSet<u8> = a.iter().chain(b).copied().collect();
    let mut table = vec![vec![0.0; 256]; 256];
    for (&x, &y) in a.iter().zip(b) {
        table[x as usize][y as usize] += 1.0;
    }
    let po: f64 = labels
        .iter()
        .map(|&l| table[l as usize][l as usize])
        .sum::<f64>()
        / n;
    let pe: f64 = labels
        .iter()
        .map(|&l| {
            let row: f64 = table[l as usize].iter().sum();
            let col: f64 = table.iter().map(|r| r[l as usize]).sum();
            (row / n) * (col / n)
        })
        .sum();
    if po == 1.0 {
        1.0
    } else {
        (po - pe) / (1.0 - pe)
    }
}

fn kappa() -> Outcome {
    let err = |e: learners::LearnError| e.to_string();
    let same = [1, 0, 2, 2, 1];
    check(cohen_kappa(&same, &same).map_err(err)? == 1.0, || {
        "identical".into()
    })?;
    let k = cohen_kappa(&["p", "p", "n", "n"], &["p", "n", "p", "n"]).map_err(err)?;
    check(k == 0.0, || format!("independence example gave {k}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.gen_range(2..80);
        let classes = rng.gen_range(2..5);
        let a: Vec<u8> = (0..n).map(|_| rng.gen_range(0..classes)).collect();
        let b: Vec<u8> = a
            .iter()
            .map(|&x| {
                if rng.gen_bool(0.6) {
                    x
                } else {
                    rng.gen_range(0..classes)
                }
            })
            .collect();
        let want = kappa_oracle(&a, &b);
        let got = cohen_kappa(&a, &b).map_err(err)?;
        worst = worst.max((got - want).abs());
        check((got - want).abs() <= 1e-12, || {
            format!("{got} vs oracle {want}")
        })?;
    }
    Ok(format!("100 random pairs, max deviation {worst:e}"))
}

fn separable_dataset(rng: &mut ChaCha8Rng, n: usize) -> Dataset {
    const DIM: usize = 30;
    let mut data = Dataset::new(vec!["a".into(), "b".into(), "c".into()], DIM);
    for i in 0..n {
        let class = i % 3;
        let entries = (0..DIM).filter_map(|j| {
            let own = j / 10 == class;
            let p = if own { 0.6 } else { 0.1 };
            rng.gen_bool(p).then(|| (j, rng.gen_range(1..4) as f64))
        });
        data.push(
            SparseVector::new(DIM, entries.collect::<Vec<_>>()).unwrap(),
            class,
        )
        .unwrap();
    }
    data
}

fn classifier_sanity(set: &LexiconSet) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    let train = separable_dataset(&mut rng, 300);
    let test = separable_dataset(&mut rng, 300);
    let mut report = Vec::new();
    for kind in ClassifierKind::ALL {
        let model =
            learners::train(kind, &train, &Hyperparams::default()).map_err(|e| e.to_string())?;
        let correct = test
            .rows
            .iter()
            .filter(|(x, y)| model.predict(x).unwrap().label == *y)
            .count();
        let acc = correct as f64 / test.len() as f64;
        check(acc >= 0.90, || {
            format!("{} reached only {acc:.3}", kind.as_str())
        })?;
        report.push(format!("{} {acc:.3}", kind.as_str()));
    }
    let model = train_sentiment(
        &labeled("train.json"),
        set,
        &SentimentConfig::default(),
        &Hyperparams::default(),
    )
    .map_err(|e| e.to_string())?;
    let gold = labeled("mini_gold.json");
    check(gold.len() == 150, || {
        format!("mini-gold has {} documents", gold.len())
    })?;
    let correct = gold
        .iter()
        .filter(|d| model.classify(&d.text, set).polarity == d.polarity)
        .count();
    let acc = correct as f64 / gold.len() as f64;
    check(acc >= 0.70, || format!("mini-gold accuracy {acc:.3}"))?;
    within(Duration::from_secs(30), start)?;
    Ok(format!("{}; mini-gold {acc:.3}", report.join(", ")))
}

fn lang_tagger(set: &LexiconSet) -> Outcome {
    let bn: Vec<_> = set.bn_words.iter().cloned().collect();
    let en: Vec<_> = set.en_words.iter().cloned().collect();
    let model = train_lang_model(&bn, &en, &Hyperparams::default()).map_err(|e| e.to_string())?;
    let tagger = LangTagger::new(set, &model);
    let tokenizer = Tokenizer::default();
    let mut unique = 0;
    for (words, other, tag) in [
        (&set.bn_words, &set.en_words, LangTag::Bn),
        (&set.en_words, &set.bn_words, LangTag::En),
    ] {
        for w in words.iter().filter(|w| !other.contains(*w)) {
            let t = tagger.tag_word(&tokenizer.token_for(w.as_str()));
            check(t.tag == tag, || format!("{w:?} tagged {:?}", t.tag))?;
            unique += 1;
        }
    }
    let reloaded = LangModel::from_text(&model.to_text()).map_err(|e| e.to_string())?;
    let again = LangTagger::new(set, &reloaded);
    let unseen = [
        "posachhe",
        "dhurr",
        "shopping",
        "jhakkas",
        "khelchi",
        "weekend",
        "bristi",
        "awesomeness",
        "fatafati",
        "zzz",
    ];
    let mut fallback = 0;
    for w in unseen {
        let token = tokenizer.token_for(w);
        let (a, b) = (tagger.tag_word(&token), again.tag_word(&token));
        check(a.tag == b.tag, || {
            format!("{w}: {:?} before, {:?} after reload", a.tag, b.tag)
        })?;
        fallback += usize::from(a.source == TagSource::Classifier);
    }
    check(fallback >= 5, || {
        format!("only {fallback} words reached the classifier")
    })?;
    Ok(format!(
        "{unique} unique-lexicon words correct; {fallback} fallback words stable across reload"
    ))
}

fn main() {
    let set = lexicons();
    let model = train_sentiment(
        &labeled("train.json"),
        &set,
        &SentimentConfig::default(),
        &Hyperparams::default(),
    )
    .expect("train on fixture");
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("metric-fidelity", Box::new(metric_fidelity)),
        ("release-format", Box::new(release_fidelity)),
        ("cascade-order", Box::new(|| cascade_order(&set, &model))),
        ("socal-rules", Box::new(socal_table)),
        ("filter-monotonicity", Box::new(filter_monotonicity)),
        ("cmi-properties", Box::new(cmi_properties)),
        ("kappa", Box::new(kappa)),
        ("classifier-sanity", Box::new(|| classifier_sanity(&set))),
        ("language-tagger", Box::new(|| lang_tagger(&set))),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
