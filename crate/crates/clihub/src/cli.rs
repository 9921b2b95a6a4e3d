//! Command-line interface. Every command appends a manifest entry (inputs,
//! outputs, config hash, seed) next to what it wrote.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{BufRead, BufReader, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use anyhow::{bail, Context, Result};
use chrono::Utc;
use clap::{Args, Parser, Subcommand};
use codemix::corpus::{
    build_seed_list, filter_jsonl, parse_release, write_release, CorpusRecord, FilterConfig,
    RawMessage, RejectReason,
};
use codemix::langid::{evaluate_lang_tagger, train_lang_model, LangModel, LangTag, LangTagger};
use codemix::learners::{metrics, ConfusionMatrix, MetricsReport};
use codemix::lexicon::LexiconSet;
use codemix::sentiment::{train_sentiment, LabeledDoc, Polarity, Provenance, SentimentModel};
use codemix::text::{normalize, NormalizedWord};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::agreement::agreement;
use crate::api::{router, AppState};
use crate::config::ProjectConfig;
use crate::export::export_gold;
use crate::manifest::{self, digests, ManifestEntry};
use crate::store::Store;
use crate::summary::{per_record, ComplexitySummary};

#[derive(Debug, Parser)]
#[command(
    name = "codemix",
    version,
    about = "Bengali-English code-mixed corpus tools"
)]
pub struct Cli {
    /// Settings file (key = value lines).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the configured training seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filter a JSONL message stream into kept.jsonl and rejected.jsonl.
    Filter(FilterArgs),
    /// Build a seed keyword list from the BN tokens of a release.
    Seed(SeedArgs),
    /// Train the fallback language classifier on the lexicon word lists.
    TrainLang(TrainLangArgs),
    /// Tag messages (one per line) or score the tagger on gold words.
    TagLang(TagLangArgs),
    /// Train the sentiment classifier.
    TrainSent(TrainSentArgs),
    /// Tag and classify filtered messages into a release file.
    Classify(ClassifyArgs),
    /// Score sentiment predictions against gold labels.
    Evaluate(EvaluateArgs),
    /// Code-mixing indices for every record of a release.
    Metrics(MetricsArgs),
    /// Agreement between two annotators in a store.
    Kappa(KappaArgs),
    /// Export the adjudicated gold release from a store.
    Export(ExportArgs),
    /// Serve the annotation API.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub alpha: Option<usize>,
    #[arg(long)]
    pub beta: Option<usize>,
    /// Seed keywords, one per line (`word` or `word<TAB>count`); defaults
    /// to the lexicon seed list.
    #[arg(long)]
    pub seeds: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TrainLangArgs {
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TagLangArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Text file with one message per line.
    #[arg(long = "in", required_unless_present = "gold")]
    pub input: Option<PathBuf>,
    /// `word<TAB>tag` lines to score against.
    #[arg(long, conflicts_with = "input")]
    pub gold: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainSentArgs {
    /// JSON array of `{"text", "sentiment"}` objects.
    #[arg(long)]
    pub train: PathBuf,
    /// Model directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub sent_model: PathBuf,
    #[arg(long)]
    pub lang_model: PathBuf,
    /// JSONL messages, as written by `filter`.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// JSON array of `{"id", "sentiment"}` objects (with `text` for `--model`).
    #[arg(long)]
    pub gold: PathBuf,
    /// JSON array of `{"id", "sentiment"}` predictions.
    #[arg(long, required_unless_present = "model")]
    pub pred: Option<PathBuf>,
    /// Sentiment model directory to predict with.
    #[arg(long, conflicts_with = "pred")]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct KappaArgs {
    #[arg(long)]
    pub store: PathBuf,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub store: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Annotator whose record decides; overrides the configured one.
    #[arg(long)]
    pub adjudicator: Option<String>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long)]
    pub store: PathBuf,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Create the store from this release first.
    #[arg(long)]
    pub init_from: Option<PathBuf>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Filter(_) => "filter",
            Command::Seed(_) => "seed",
            Command::TrainLang(_) => "train-lang",
            Command::TagLang(_) => "tag-lang",
            Command::TrainSent(_) => "train-sent",
            Command::Classify(_) => "classify",
            Command::Evaluate(_) => "evaluate",
            Command::Metrics(_) => "metrics",
            Command::Kappa(_) => "kappa",
            Command::Export(_) => "export",
            Command::Serve(_) => "serve",
        }
    }
}

struct Ctx {
    config: ProjectConfig,
    command: &'static str,
    args: Vec<String>,
    started_at: chrono::DateTime<Utc>,
}

impl Ctx {
    fn lexicons(&self) -> Result<LexiconSet> {
        let dir = &self.config.lexicons;
        let loaded = LexiconSet::load(dir)
            .with_context(|| format!("loading lexicons from {}", dir.display()))?;
        for d in &loaded.diagnostics {
            log::warn!("{}:{}: {}", d.file, d.line, d.message);
        }
        Ok(loaded.lexicons)
    }

    /// Records the run in `dir/manifest.jsonl`.
    fn record(&self, dir: &Path, inputs: &[PathBuf], outputs: &[PathBuf]) -> Result<()> {
        let entry = ManifestEntry {
            command: self.command.into(),
            args: self.args.clone(),
            started_at: self.started_at,
            version: env!("CARGO_PKG_VERSION").into(),
            seed: self.config.hyper.seed,
            config_sha256: self.config.hash(),
            inputs: digests(inputs)?,
            outputs: digests(outputs)?,
        };
        manifest::append(dir, &entry)?;
        Ok(())
    }
}

fn parent(path: &Path) -> PathBuf {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

fn sidecar(path: &Path) -> PathBuf {
    path.with_extension("provenance.json")
}

fn print_json(value: &impl Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, body: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn write_jsonl<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut out = String::new();
    for r in rows {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    write(path, &out)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = read(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_release(path: &Path) -> Result<Vec<CorpusRecord>> {
    parse_release(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Seed keywords from a file; a `word<TAB>count` list is read in file order.
pub fn read_seeds(path: &Path) -> Result<Vec<NormalizedWord>> {
    let mut seeds = Vec::new();
    for (i, line) in read(path)?.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let word = line.split('\t').next().unwrap_or_default().trim();
        let w = normalize(word);
        if w.is_empty() {
            bail!("{}:{}: empty seed keyword", path.display(), i + 1);
        }
        seeds.push(w);
    }
    Ok(seeds)
}

/// Parses, loads the config and runs the command.
pub fn run(cli: Cli, args: Vec<String>) -> Result<()> {
    let mut config = match &cli.config {
        Some(p) => ProjectConfig::load(p)?,
        None => ProjectConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.hyper.seed = seed;
    }
    let ctx = Ctx {
        config,
        command: cli.command.name(),
        args,
        started_at: Utc::now(),
    };
    match cli.command {
        Command::Filter(a) => filter(&ctx, a),
        Command::Seed(a) => seed(&ctx, a),
        Command::TrainLang(a) => train_lang(&ctx, a),
        Command::TagLang(a) => tag_lang(&ctx, a),
        Command::TrainSent(a) => train_sent(&ctx, a),
        Command::Classify(a) => classify(&ctx, a),
        Command::Evaluate(a) => evaluate(&ctx, a),
        Command::Metrics(a) => metrics_cmd(&ctx, a),
        Command::Kappa(a) => kappa(&ctx, a),
        Command::Export(a) => export(&ctx, a),
        Command::Serve(a) => serve(&ctx, a),
    }
}

fn filter(ctx: &Ctx, a: FilterArgs) -> Result<()> {
    let cfg = &ctx.config;
    let seeds: Vec<NormalizedWord> = match &a.seeds {
        Some(p) => read_seeds(p)?,
        None => ctx
            .lexicons()?
            .seed_keywords
            .into_iter()
            .map(|(w, _)| w)
            .collect(),
    };
    let seeds: BTreeSet<NormalizedWord> = seeds.into_iter().take(cfg.seed_cap).collect();
    let filter_cfg = FilterConfig::new(
        a.alpha.unwrap_or(cfg.alpha),
        a.beta.unwrap_or(cfg.beta),
        seeds,
    )?;
    let file = File::open(&a.input).with_context(|| format!("opening {}", a.input.display()))?;
    let out = filter_jsonl(BufReader::new(file), &filter_cfg)
        .with_context(|| format!("reading {}", a.input.display()))?;
    let kept = a.out.join("kept.jsonl");
    let rejected = a.out.join("rejected.jsonl");
    write_jsonl(&kept, &out.kept)?;
    write_jsonl(&rejected, &out.rejected)?;
    let mut by_reason: BTreeMap<RejectReason, usize> = BTreeMap::new();
    for r in &out.rejected {
        *by_reason.entry(r.reason).or_default() += 1;
    }
    let mut inputs = vec![a.input.clone()];
    inputs.extend(a.seeds.clone());
    ctx.record(&a.out, &inputs, &[kept, rejected])?;
    print_json(&json!({
        "alpha": filter_cfg.alpha,
        "beta": filter_cfg.beta,
        "input": out.kept.len() + out.rejected.len(),
        "kept": out.kept.len(),
        "rejected": out.rejected.len(),
        "by_reason": by_reason,
    }))
}

fn seed(ctx: &Ctx, a: SeedArgs) -> Result<()> {
    let records = read_release(&a.input)?;
    let list = build_seed_list(&records, a.cap.unwrap_or(ctx.config.seed_cap))?;
    let body: String = list
        .iter()
        .map(|(w, c)| format!("{}\t{c}\n", w.as_str()))
        .collect();
    write(&a.out, &body)?;
    ctx.record(&parent(&a.out), &[a.input], std::slice::from_ref(&a.out))?;
    print_json(&json!({ "keywords": list.len(), "out": a.out }))
}

fn load_lang_model(path: &Path) -> Result<LangModel> {
    LangModel::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn train_lang(ctx: &Ctx, a: TrainLangArgs) -> Result<()> {
    let set = ctx.lexicons()?;
    let bn: Vec<_> = set.bn_words.iter().cloned().collect();
    let en: Vec<_> = set.en_words.iter().cloned().collect();
    let model = train_lang_model(&bn, &en, &ctx.config.hyper)?;
    write(&a.out, &model.to_text())?;
    ctx.record(
        &parent(&a.out),
        std::slice::from_ref(&ctx.config.lexicons),
        std::slice::from_ref(&a.out),
    )?;
    print_json(
        &json!({ "bn_words": bn.len(), "en_words": en.len(), "features": model.num_features() }),
    )
}

fn tag_lang(ctx: &Ctx, a: TagLangArgs) -> Result<()> {
    let set = ctx.lexicons()?;
    let model = load_lang_model(&a.model)?;
    if let Some(gold_path) = &a.gold {
        let mut gold = Vec::new();
        for (i, line) in read(gold_path)?.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (word, tag) = line.split_once('\t').with_context(|| {
                format!("{}:{}: expected word<TAB>tag", gold_path.display(), i + 1)
            })?;
            let tag: LangTag = tag
                .trim()
                .parse()
                .map_err(|e| anyhow::anyhow!("{}:{}: {e}", gold_path.display(), i + 1))?;
            gold.push((word.to_string(), tag));
        }
        let accuracy = evaluate_lang_tagger(&gold, &set, &model)?;
        ctx.record(
            &parent(gold_path),
            &[gold_path.clone(), a.model.clone()],
            &[],
        )?;
        return print_json(&json!({ "words": gold.len(), "accuracy": accuracy }));
    }
    let input = a.input.expect("clap requires --in or --gold");
    let tagger = LangTagger::new(&set, &model);
    let tokenizer = set.tokenizer();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for line in read(&input)?.lines() {
        let tagged = tagger.tag_sentence(&tokenizer.tokenize(line));
        let record = CorpusRecord::from_tagged(0, line, &tagged, Polarity::Neutral);
        writeln!(out, "{}", record.lang_tagged_text())?;
    }
    ctx.record(&parent(&input), &[input.clone(), a.model.clone()], &[])
}

fn train_sent(ctx: &Ctx, a: TrainSentArgs) -> Result<()> {
    let set = ctx.lexicons()?;
    let docs: Vec<LabeledDoc> = read_json(&a.train)?;
    let model = train_sentiment(&docs, &set, &ctx.config.sentiment, &ctx.config.hyper)?;
    model.save(&a.out)?;
    ctx.record(
        &a.out,
        &[a.train.clone(), ctx.config.lexicons.clone()],
        std::slice::from_ref(&a.out),
    )?;
    print_json(&json!({
        "documents": docs.len(),
        "classifier": model.config.classifier.as_str(),
        "vocabulary": model.vocab.len(),
    }))
}

#[derive(Debug, Serialize)]
struct ClassifyProvenance {
    id: i64,
    provenance: Provenance,
    evidence: Option<String>,
    classifier_raw: Option<Polarity>,
    negation_flipped: bool,
}

fn read_messages(path: &Path) -> Result<Vec<RawMessage>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).with_context(|| format!("{}:{}", path.display(), i + 1))?,
        );
    }
    Ok(out)
}

fn classify(ctx: &Ctx, a: ClassifyArgs) -> Result<()> {
    let set = ctx.lexicons()?;
    let lang = load_lang_model(&a.lang_model)?;
    let sent = SentimentModel::load(&a.sent_model)?;
    let tagger = LangTagger::new(&set, &lang);
    let tokenizer = set.tokenizer();
    let mut records = Vec::new();
    let mut provenance = Vec::new();
    let mut by_stage: BTreeMap<Provenance, usize> = BTreeMap::new();
    for msg in read_messages(&a.input)? {
        let tagged = tagger.tag_sentence(&tokenizer.tokenize(&msg.text));
        let outcome = sent.classify(&msg.text, &set);
        *by_stage.entry(outcome.provenance).or_default() += 1;
        records.push(CorpusRecord::from_tagged(
            msg.id,
            &msg.text,
            &tagged,
            outcome.polarity,
        ));
        provenance.push(ClassifyProvenance {
            id: msg.id,
            provenance: outcome.provenance,
            evidence: outcome.evidence,
            classifier_raw: outcome.classifier_raw,
            negation_flipped: outcome.negation_flipped,
        });
    }
    let side = sidecar(&a.out);
    write(&a.out, &write_release(&records))?;
    write(&side, &serde_json::to_string_pretty(&provenance)?)?;
    ctx.record(
        &parent(&a.out),
        &[
            a.input.clone(),
            a.sent_model.clone(),
            a.lang_model.clone(),
            ctx.config.lexicons.clone(),
        ],
        &[a.out.clone(), side],
    )?;
    print_json(&json!({ "records": records.len(), "by_stage": by_stage }))
}

#[derive(Debug, Deserialize)]
struct Labeled {
    id: i64,
    sentiment: Polarity,
    #[serde(default)]
    text: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Evaluation {
    pub confusion: ConfusionMatrix,
    pub metrics: MetricsReport,
}

fn evaluate(ctx: &Ctx, a: EvaluateArgs) -> Result<()> {
    let gold: Vec<Labeled> = read_json(&a.gold)?;
    let mut inputs = vec![a.gold.clone()];
    let predicted: Vec<Polarity> = if let Some(pred_path) = &a.pred {
        let pred: Vec<Labeled> = read_json(pred_path)?;
        inputs.push(pred_path.clone());
        let mut by_id = BTreeMap::new();
        for p in &pred {
            if by_id.insert(p.id, p.sentiment).is_some() {
                bail!("{}: duplicate id {}", pred_path.display(), p.id);
            }
        }
        gold.iter()
            .map(|g| {
                by_id.get(&g.id).copied().with_context(|| {
                    format!("{}: no prediction for id {}", pred_path.display(), g.id)
                })
            })
            .collect::<Result<_>>()?
    } else {
        let dir = a.model.as_ref().expect("clap requires --pred or --model");
        let set = ctx.lexicons()?;
        let model = SentimentModel::load(dir)?;
        inputs.push(dir.clone());
        gold.iter()
            .map(|g| {
                let text = g
                    .text
                    .as_deref()
                    .with_context(|| format!("{}: id {} has no text", a.gold.display(), g.id))?;
                Ok(model.classify(text, &set).polarity)
            })
            .collect::<Result<_>>()?
    };
    let labels: Vec<&str> = Polarity::ALL.iter().map(|p| p.label()).collect();
    let g: Vec<&str> = gold.iter().map(|g| g.sentiment.label()).collect();
    let p: Vec<&str> = predicted.iter().map(|p| p.label()).collect();
    let confusion = ConfusionMatrix::from_labels(&labels, &g, &p)?;
    let report = metrics(&confusion)?;
    ctx.record(&parent(&a.gold), &inputs, &[])?;
    print_json(&Evaluation {
        confusion,
        metrics: report,
    })
}

fn metrics_cmd(ctx: &Ctx, a: MetricsArgs) -> Result<()> {
    let records = read_release(&a.input)?;
    let reports = per_record(&records);
    ctx.record(&parent(&a.input), std::slice::from_ref(&a.input), &[])?;
    print_json(&json!({
        "summary": ComplexitySummary::from_reports(&reports),
        "records": reports,
    }))
}

fn kappa(ctx: &Ctx, a: KappaArgs) -> Result<()> {
    let store = Store::open(&a.store)?;
    let result = agreement(store.items(), &a.a, &a.b)?;
    ctx.record(&a.store, std::slice::from_ref(&a.store), &[])?;
    print_json(&result)
}

fn export(ctx: &Ctx, a: ExportArgs) -> Result<()> {
    let store = Store::open(&a.store)?;
    let adjudicator = a
        .adjudicator
        .clone()
        .or_else(|| ctx.config.adjudicator.clone());
    let gold = export_gold(&store, adjudicator.as_deref());
    for id in &gold.skipped {
        log::warn!("item {id} has no records; skipped");
    }
    let side = sidecar(&a.out);
    write(&a.out, &write_release(&gold.records))?;
    write(
        &side,
        &serde_json::to_string_pretty(&json!({
            "adjudicator": adjudicator,
            "records": gold.provenance,
            "skipped": gold.skipped,
        }))?,
    )?;
    ctx.record(
        &parent(&a.out),
        std::slice::from_ref(&a.store),
        &[a.out.clone(), side],
    )?;
    print_json(&json!({ "records": gold.records.len(), "skipped": gold.skipped }))
}

fn serve(ctx: &Ctx, a: ServeArgs) -> Result<()> {
    let lexicons = ctx.lexicons()?;
    let store = match &a.init_from {
        Some(release) => Store::create(&a.store, &read_release(release)?)?,
        None => Store::open(&a.store)?,
    };
    let mut inputs = vec![a.store.clone()];
    inputs.extend(a.init_from.clone());
    ctx.record(&a.store, &inputs, &[])?;
    let state = Arc::new(AppState {
        store: RwLock::new(store),
        lexicons,
        adjudicator: ctx.config.adjudicator.clone(),
    });
    let addr: SocketAddr = format!("{}:{}", a.host, a.port)
        .parse()
        .with_context(|| format!("invalid address {}:{}", a.host, a.port))?;
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .with_context(|| format!("binding {addr}"))?;
        log::info!("serving {} on http://{addr}/api/v1", a.store.display());
        axum::serve(listener, router(state))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await?;
        Ok(())
    })
}
