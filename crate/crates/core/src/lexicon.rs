//! Lexical resources: word lists, polarity lexicons, emoticons and seeds.
//!
//! Every resource lives in its own newline-delimited UTF-8 file inside a
//! lexicon directory. Only `bn_words.txt` and `en_words.txt` are required;
//! missing optional files load as empty sub-lexicons and leave a warning in
//! the diagnostics. Malformed lines are skipped and reported, never fatal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::text::{normalize, NormalizedWord, Tokenizer, DEFAULT_EMOJI_RANGES};

pub const BN_WORDS: &str = "bn_words.txt";
pub const EN_WORDS: &str = "en_words.txt";
pub const SUFFIXES_EN: &str = "suffixes_en.txt";
pub const ACRONYMS: &str = "acronyms.txt";
pub const NEGATIONS_BN: &str = "negations_bn.txt";
pub const NEGATIONS_EN: &str = "negations_en.txt";
pub const POSU: &str = "posu.txt";
pub const NEGU: &str = "negu.txt";
pub const PHRASES: &str = "phrases.tsv";
pub const SWN: &str = "swn.tsv";
pub const SOCAL: &str = "socal.tsv";
pub const SOCAL_INTENSIFIERS: &str = "socal_intensifiers.tsv";
pub const NRC: &str = "nrc.tsv";
pub const EMOTICONS: &str = "emoticons.tsv";
pub const SEEDS: &str = "seeds.tsv";

const SWN_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon directory {path}: {source}")]
    Directory { path: PathBuf, source: io::Error },
    #[error("required lexicon file {0} is missing")]
    MissingRequired(PathBuf),
    #[error("{path}:{line}: {source}")]
    Io {
        path: PathBuf,
        line: usize,
        source: io::Error,
    },
    #[error("character n-gram size must be 2 or 3, got {0}")]
    NGramSize(usize),
}

/// A non-fatal problem found while loading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: String,
    /// 1-based; 0 for file-level warnings.
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Acronym {
    pub expansion: String,
    /// -1, 0 or 1.
    pub polarity: i8,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwnScore {
    pub pos: f64,
    pub neg: f64,
    pub obj: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NrcEntry {
    pub positive: bool,
    pub negative: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarPhrase {
    pub tokens: Vec<NormalizedWord>,
    /// -1 or 1.
    pub polarity: i8,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LexiconSet {
    pub bn_words: BTreeSet<NormalizedWord>,
    pub en_words: BTreeSet<NormalizedWord>,
    pub en_suffixes: BTreeSet<String>,
    pub acronyms: BTreeMap<NormalizedWord, Acronym>,
    pub negations_bn: BTreeSet<NormalizedWord>,
    pub negations_en: BTreeSet<NormalizedWord>,
    pub posu: BTreeSet<NormalizedWord>,
    pub negu: BTreeSet<NormalizedWord>,
    pub phrases: Vec<PolarPhrase>,
    pub swn: BTreeMap<NormalizedWord, SwnScore>,
    pub socal_words: BTreeMap<NormalizedWord, f64>,
    pub socal_intensifiers: BTreeMap<NormalizedWord, f64>,
    pub nrc: BTreeMap<NormalizedWord, NrcEntry>,
    /// Raw emoticon string to polarity (-1 or 1).
    pub emoticons: BTreeMap<String, i8>,
    /// Sorted by non-increasing frequency.
    pub seed_keywords: Vec<(NormalizedWord, u64)>,
}

#[derive(Debug)]
pub struct LoadedLexicons {
    pub lexicons: LexiconSet,
    pub diagnostics: Vec<Diagnostic>,
}

/// Flags describing how a single word relates to the lexicons.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Membership {
    pub in_bn: bool,
    pub in_en: bool,
    pub is_acronym: bool,
    pub is_negation_bn: bool,
    pub is_negation_en: bool,
    pub polarity_hits: PolarityHits,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolarityHits {
    pub posu: bool,
    pub negu: bool,
    pub acronym: Option<i8>,
    pub swn: Option<SwnScore>,
    pub socal: Option<f64>,
    pub intensifier: Option<f64>,
    pub nrc: Option<NrcEntry>,
}

impl Membership {
    pub fn is_negation(&self) -> bool {
        self.is_negation_bn || self.is_negation_en
    }
}

impl LexiconSet {
    pub fn load(dir: impl AsRef<Path>) -> Result<LoadedLexicons, LexiconError> {
        load_lexicons(dir)
    }

    pub fn lookup(&self, word: &NormalizedWord) -> Membership {
        lookup(word, self)
    }

    pub fn is_negation(&self, word: &str) -> bool {
        self.negations_bn.contains(word) || self.negations_en.contains(word)
    }

    /// Polarity of a word from the unigram lexicons, falling back to NRC.
    /// `None` when the word is unknown or the evidence conflicts.
    pub fn word_polarity(&self, word: &str) -> Option<i8> {
        match (self.posu.contains(word), self.negu.contains(word)) {
            (true, false) => Some(1),
            (false, true) => Some(-1),
            (true, true) => None,
            (false, false) => match self.nrc.get(word) {
                Some(NrcEntry {
                    positive: true,
                    negative: false,
                }) => Some(1),
                Some(NrcEntry {
                    positive: false,
                    negative: true,
                }) => Some(-1),
                _ => None,
            },
        }
    }

    /// A tokenizer that recognizes this set's emoticons.
    pub fn tokenizer(&self) -> Tokenizer {
        if self.emoticons.is_empty() {
            Tokenizer::default()
        } else {
            Tokenizer::with_emoji_ranges(self.emoticons.keys(), DEFAULT_EMOJI_RANGES.to_vec())
        }
    }

    /// Writes every resource into `dir` in the loadable format.
    pub fn write_dir(&self, dir: impl AsRef<Path>) -> io::Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let words = |set: &BTreeSet<NormalizedWord>| {
            set.iter().fold(String::new(), |mut out, w| {
                let _ = writeln!(out, "{w}");
                out
            })
        };
        fs::write(dir.join(BN_WORDS), words(&self.bn_words))?;
        fs::write(dir.join(EN_WORDS), words(&self.en_words))?;
        fs::write(dir.join(NEGATIONS_BN), words(&self.negations_bn))?;
        fs::write(dir.join(NEGATIONS_EN), words(&self.negations_en))?;
        fs::write(dir.join(POSU), words(&self.posu))?;
        fs::write(dir.join(NEGU), words(&self.negu))?;

        let mut out = String::new();
        for s in &self.en_suffixes {
            let _ = writeln!(out, "{s}");
        }
        fs::write(dir.join(SUFFIXES_EN), out)?;

        let mut out = String::new();
        for (w, a) in &self.acronyms {
            let _ = writeln!(out, "{w}\t{}\t{}", a.expansion, a.polarity);
        }
        fs::write(dir.join(ACRONYMS), out)?;

        let mut out = String::new();
        for p in &self.phrases {
            let toks: Vec<&str> = p.tokens.iter().map(|t| t.as_str()).collect();
            let _ = writeln!(out, "{}\t{}", p.polarity, toks.join(" "));
        }
        fs::write(dir.join(PHRASES), out)?;

        let mut out = String::new();
        for (w, s) in &self.swn {
            let _ = writeln!(out, "{w}\t{:?}\t{:?}\t{:?}", s.pos, s.neg, s.obj);
        }
        fs::write(dir.join(SWN), out)?;

        let scored = |map: &BTreeMap<NormalizedWord, f64>| {
            map.iter().fold(String::new(), |mut out, (w, s)| {
                let _ = writeln!(out, "{w}\t{s:?}");
                out
            })
        };
        fs::write(dir.join(SOCAL), scored(&self.socal_words))?;
        fs::write(
            dir.join(SOCAL_INTENSIFIERS),
            scored(&self.socal_intensifiers),
        )?;

        let mut out = String::new();
        for (w, e) in &self.nrc {
            let _ = writeln!(out, "{w}\t{}\t{}", e.positive as u8, e.negative as u8);
        }
        fs::write(dir.join(NRC), out)?;

        let mut out = String::new();
        for (e, p) in &self.emoticons {
            let _ = writeln!(out, "{e}\t{p}");
        }
        fs::write(dir.join(EMOTICONS), out)?;

        let mut out = String::new();
        for (w, f) in &self.seed_keywords {
            let _ = writeln!(out, "{w}\t{f}");
        }
        fs::write(dir.join(SEEDS), out)?;
        Ok(())
    }
}

pub fn lookup(word: &NormalizedWord, set: &LexiconSet) -> Membership {
    let w = word.as_str();
    let acronym = set.acronyms.get(w);
    Membership {
        in_bn: set.bn_words.contains(w),
        in_en: set.en_words.contains(w),
        is_acronym: acronym.is_some(),
        is_negation_bn: set.negations_bn.contains(w),
        is_negation_en: set.negations_en.contains(w),
        polarity_hits: PolarityHits {
            posu: set.posu.contains(w),
            negu: set.negu.contains(w),
            acronym: acronym.map(|a| a.polarity),
            swn: set.swn.get(w).copied(),
            socal: set.socal_words.get(w).copied(),
            intensifier: set.socal_intensifiers.get(w).copied(),
            nrc: set.nrc.get(w).copied(),
        },
    }
}

struct Loader<'a> {
    dir: &'a Path,
    diagnostics: Vec<Diagnostic>,
}

impl Loader<'_> {
    /// Returns `(line_number, trimmed_line)` for every non-blank line, or
    /// `None` if the file does not exist.
    fn lines(
        &mut self,
        name: &str,
        required: bool,
    ) -> Result<Option<Vec<(usize, String)>>, LexiconError> {
        let path = self.dir.join(name);
        let content = match fs::read_to_string(&path) {
            Ok(c) => c,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                if required {
                    return Err(LexiconError::MissingRequired(path));
                }
                self.warn(name, 0, "file not found, using empty lexicon");
                return Ok(None);
            }
            Err(source) => {
                return Err(LexiconError::Io {
                    path,
                    line: 0,
                    source,
                })
            }
        };
        let lines = content
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim().to_string()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Ok(Some(lines))
    }

    fn warn(&mut self, file: &str, line: usize, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            file: file.to_string(),
            line,
            message: message.into(),
        });
    }

    fn word_set(
        &mut self,
        name: &str,
        required: bool,
    ) -> Result<BTreeSet<NormalizedWord>, LexiconError> {
        let mut set = BTreeSet::new();
        for (n, line) in self.lines(name, required)?.unwrap_or_default() {
            let mut fields = line.split_whitespace();
            let word = normalize(fields.next().unwrap_or_default());
            if fields.next().is_some() {
                self.warn(name, n, "expected a single word");
                continue;
            }
            if word.is_empty() {
                self.warn(name, n, "word normalizes to an empty string");
                continue;
            }
            set.insert(word);
        }
        Ok(set)
    }

    fn scored_map(&mut self, name: &str) -> Result<BTreeMap<NormalizedWord, f64>, LexiconError> {
        let mut map = BTreeMap::new();
        for (n, line) in self.lines(name, false)?.unwrap_or_default() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [word, score] => match parse_finite(score) {
                    Some(s) => {
                        map.insert(normalize(word), s);
                    }
                    None => self.warn(name, n, format!("invalid score {score:?}")),
                },
                _ => self.warn(name, n, "expected `word<TAB>score`"),
            }
        }
        Ok(map)
    }
}

fn parse_finite(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

pub fn load_lexicons(dir: impl AsRef<Path>) -> Result<LoadedLexicons, LexiconError> {
    let dir = dir.as_ref();
    let meta = fs::metadata(dir).map_err(|source| LexiconError::Directory {
        path: dir.to_path_buf(),
        source,
    })?;
    if !meta.is_dir() {
        return Err(LexiconError::Directory {
            path: dir.to_path_buf(),
            source: io::Error::new(io::ErrorKind::InvalidInput, "not a directory"),
        });
    }
    let mut ld = Loader {
        dir,
        diagnostics: Vec::new(),
    };
    let mut set = LexiconSet {
        bn_words: ld.word_set(BN_WORDS, true)?,
        en_words: ld.word_set(EN_WORDS, true)?,
        negations_bn: ld.word_set(NEGATIONS_BN, false)?,
        negations_en: ld.word_set(NEGATIONS_EN, false)?,
        posu: ld.word_set(POSU, false)?,
        negu: ld.word_set(NEGU, false)?,
        socal_words: ld.scored_map(SOCAL)?,
        socal_intensifiers: ld.scored_map(SOCAL_INTENSIFIERS)?,
        ..LexiconSet::default()
    };

    for (_, line) in ld.lines(SUFFIXES_EN, false)?.unwrap_or_default() {
        set.en_suffixes
            .insert(line.trim_start_matches('-').to_lowercase());
    }

    for (n, line) in ld.lines(ACRONYMS, false)?.unwrap_or_default() {
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let (word, expansion, polarity) = match fields.as_slice() {
            [w, e] => (*w, *e, Some(0)),
            [w, e, p] => (*w, *e, p.parse::<i8>().ok()),
            _ => {
                ld.warn(ACRONYMS, n, "expected `token<TAB>expansion<TAB>polarity`");
                continue;
            }
        };
        match polarity {
            Some(p @ -1..=1) if !word.is_empty() => {
                set.acronyms.insert(
                    normalize(word),
                    Acronym {
                        expansion: expansion.to_string(),
                        polarity: p,
                    },
                );
            }
            _ => ld.warn(ACRONYMS, n, "polarity must be -1, 0 or 1"),
        }
    }

    for (n, line) in ld.lines(PHRASES, false)?.unwrap_or_default() {
        let mut fields = line.split_whitespace();
        let polarity = fields.next().and_then(|p| p.parse::<i8>().ok());
        let tokens: Vec<NormalizedWord> = fields.map(normalize).collect();
        let Some(polarity @ (-1 | 1)) = polarity else {
            ld.warn(PHRASES, n, "polarity must be -1 or 1");
            continue;
        };
        if tokens.is_empty() {
            ld.warn(PHRASES, n, "phrase has no tokens");
            continue;
        }
        if tokens
            .iter()
            .any(|t| !t.as_str().chars().any(char::is_alphanumeric))
        {
            ld.warn(PHRASES, n, "phrase contains a punctuation-only token");
            continue;
        }
        let phrase = PolarPhrase { tokens, polarity };
        if !set.phrases.contains(&phrase) {
            set.phrases.push(phrase);
        }
    }

    for (n, line) in ld.lines(SWN, false)?.unwrap_or_default() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [word, pos, neg, obj] = fields.as_slice() else {
            ld.warn(SWN, n, "expected `word<TAB>pos<TAB>neg<TAB>obj`");
            continue;
        };
        let scores = [pos, neg, obj].map(|s| parse_finite(s));
        let [Some(pos), Some(neg), Some(obj)] = scores else {
            ld.warn(SWN, n, "invalid score");
            continue;
        };
        let in_range = [pos, neg, obj].iter().all(|v| (0.0..=1.0).contains(v));
        if !in_range || (pos + neg + obj - 1.0).abs() > SWN_TOLERANCE {
            ld.warn(SWN, n, format!("scores {pos} {neg} {obj} do not sum to 1"));
            continue;
        }
        set.swn.insert(normalize(word), SwnScore { pos, neg, obj });
    }

    for (n, line) in ld.lines(NRC, false)?.unwrap_or_default() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let flag = |s: &str| match s {
            "0" => Some(false),
            "1" => Some(true),
            _ => None,
        };
        match fields.as_slice() {
            [word, p, q] => match (flag(p), flag(q)) {
                (Some(positive), Some(negative)) => {
                    set.nrc
                        .insert(normalize(word), NrcEntry { positive, negative });
                }
                _ => ld.warn(NRC, n, "flags must be 0 or 1"),
            },
            _ => ld.warn(NRC, n, "expected `word<TAB>positive<TAB>negative`"),
        }
    }

    for (n, line) in ld.lines(EMOTICONS, false)?.unwrap_or_default() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [emo, p] => match p.parse::<i8>() {
                Ok(p @ (-1 | 1)) => {
                    set.emoticons.insert(emo.to_string(), p);
                }
                _ => ld.warn(EMOTICONS, n, "polarity must be -1 or 1"),
            },
            _ => ld.warn(EMOTICONS, n, "expected `emoticon<TAB>polarity`"),
        }
    }

    let mut seen = BTreeSet::new();
    for (n, line) in ld.lines(SEEDS, false)?.unwrap_or_default() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [word, freq] => match freq.parse::<u64>() {
                Ok(f) => {
                    let w = normalize(word);
                    if seen.insert(w.clone()) {
                        set.seed_keywords.push((w, f));
                    }
                }
                Err(_) => ld.warn(SEEDS, n, format!("invalid frequency {freq:?}")),
            },
            _ => ld.warn(SEEDS, n, "expected `word<TAB>frequency`"),
        }
    }
    if set.seed_keywords.windows(2).any(|w| w[0].1 < w[1].1) {
        ld.warn(
            SEEDS,
            0,
            "frequencies not in non-increasing order; re-sorted",
        );
        set.seed_keywords.sort_by_key(|e| std::cmp::Reverse(e.1));
    }

    Ok(LoadedLexicons {
        lexicons: set,
        diagnostics: ld.diagnostics,
    })
}

/// Character n-gram frequencies over the Bengali and English word lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharNGramIndex {
    pub n: usize,
    /// n-gram to `(bn_freq, en_freq)`.
    pub counts: BTreeMap<String, (u64, u64)>,
}

impl CharNGramIndex {
    pub fn get(&self, gram: &str) -> (u64, u64) {
        self.counts.get(gram).copied().unwrap_or((0, 0))
    }

    pub fn totals(&self) -> (u64, u64) {
        self.counts
            .values()
            .fold((0, 0), |(b, e), (x, y)| (b + x, e + y))
    }
}

/// Sliding-window character n-grams of `word`, without padding.
pub fn char_ngrams(word: &str, n: usize) -> impl Iterator<Item = String> {
    let chars: Vec<char> = word.chars().collect();
    let count = if n > 0 && chars.len() >= n {
        chars.len() - n + 1
    } else {
        0
    };
    (0..count).map(move |i| chars[i..i + n].iter().collect())
}

pub fn build_ngram_index<'a, B, E>(
    bn_words: B,
    en_words: E,
    n: usize,
) -> Result<CharNGramIndex, LexiconError>
where
    B: IntoIterator<Item = &'a NormalizedWord>,
    E: IntoIterator<Item = &'a NormalizedWord>,
{
    if !(2..=3).contains(&n) {
        return Err(LexiconError::NGramSize(n));
    }
    let mut counts: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for w in bn_words {
        for g in char_ngrams(w.as_str(), n) {
            counts.entry(g).or_default().0 += 1;
        }
    }
    for w in en_words {
        for g in char_ngrams(w.as_str(), n) {
            counts.entry(g).or_default().1 += 1;
        }
    }
    Ok(CharNGramIndex { n, counts })
}
