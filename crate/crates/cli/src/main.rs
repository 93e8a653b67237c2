//! `changetype`: build WordNet relation datasets, train the tf-idf baseline
//! and evaluate predictions.
//!
//! Every subcommand writes into its `--out` directory only, and records the
//! fully resolved arguments in `run.json` there.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;
use serde::{Deserialize, Serialize};

use changetype::ctd::{ctd_to_pairs, eval_ctd, load_column_map, load_ctd, CtdEntry};
use changetype::eval::{
    attach_cosines, cross_period_cosines, cross_period_predictions, eval_binary_change, eval_binary_threshold,
    eval_classification, eval_graded_wic, judgment_distribution, read_cosines, read_gold, read_judgments,
    sweep_threshold, Aggregation, TieRule, WicMode,
};
use changetype::pairs::{
    class_file_name, generate_all, read_pairs_file, read_pairs_interned, split_dataset, write_pairs_file, Interner,
    Split, SplitSpec,
};
use changetype::prediction::{read_predictions_file, write_predictions_file, Prediction};
use changetype::tfidf::{BaselineModel, SgdConfig};
use changetype::wordnet::{parse_wordnet_with_warnings, read_lexicon_jsonl, write_lexicon_file};
use changetype::{Error, RelationLabel};

mod report;

#[derive(Parser, Debug, Serialize)]
#[command(name = "changetype", version, about = "Semantic change type datasets, baseline and evaluation")]
struct Cli {
    /// Log progress to standard error.
    #[arg(short, long, global = true)]
    #[serde(skip)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
enum Command {
    /// Parse WordNet database files into a lexicon JSONL file.
    Extract(ExtractArgs),
    /// Generate the exhaustive pair file of every relation class.
    Pairs(PairsArgs),
    /// Deduplicate, split and cap the pair files.
    Split(SplitArgs),
    /// Train the tf-idf + SGD baseline on a train split.
    TrainBaseline(TrainArgs),
    /// Predict relation labels for a JSONL file of definition pairs.
    PredictBaseline(PredictArgs),
    /// Confusion matrix and accuracy on a labeled pair file.
    EvalWn(EvalWnArgs),
    /// Export the benchmark's in-scope entries as definition pairs.
    CtdPairs(CtdPairsArgs),
    /// Change-type evaluation on the cause/type/definition benchmark.
    EvalCtd(EvalCtdArgs),
    /// Graded Word-in-Context Spearman evaluation.
    EvalWic(EvalWicArgs),
    /// Binary lexical semantic change evaluation.
    EvalBinary(EvalBinaryArgs),
    /// Render a JSON report as aligned text, plus CSV for confusion matrices.
    Report(ReportArgs),
}

#[derive(Args, Debug, Serialize)]
struct ExtractArgs {
    /// Directory holding data.noun, data.verb, data.adj and data.adv.
    #[arg(long)]
    wordnet_dir: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct SplitOptions {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Per-class caps for train,dev,test.
    #[arg(long, value_parser = parse_caps, default_value = "30000,3000,3000")]
    caps: Caps,
    /// Split ratios for train,dev,test; must sum to 1.
    #[arg(long, value_parser = parse_ratios, default_value = "0.8,0.1,0.1")]
    ratios: Ratios,
}

impl SplitOptions {
    fn spec(&self) -> SplitSpec {
        SplitSpec {
            ratios: self.ratios.0,
            caps: self.caps.0,
            seed: self.seed,
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct PairsArgs {
    /// Lexicon JSONL written by `extract`.
    #[arg(long)]
    lexicon: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Homonym pairs to sample; defaults to what the caps and ratios need.
    #[arg(long)]
    homonyms: Option<usize>,
    #[command(flatten)]
    split: SplitOptions,
}

#[derive(Args, Debug, Serialize)]
struct SplitArgs {
    /// Directory with one `<label>.jsonl` file per class.
    #[arg(long)]
    pairs: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    split: SplitOptions,
}

#[derive(Args, Debug, Serialize)]
struct TrainArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 10)]
    epochs: usize,
    /// Initial learning rate.
    #[arg(long, default_value_t = 0.01)]
    lr0: f64,
    /// L2 regularization strength.
    #[arg(long, default_value_t = 1e-4)]
    alpha: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args, Debug, Serialize)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    /// JSONL with at least `id`, `def1` and `def2` on every line.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct EvalWnArgs {
    /// Labeled pair file, typically `test.jsonl`.
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    predictions: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct CtdOptions {
    /// Benchmark CSV.
    #[arg(long)]
    ctd: PathBuf,
    /// JSON object mapping canonical column names to file headers.
    #[arg(long)]
    column_map: Option<PathBuf>,
}

impl CtdOptions {
    fn load(&self) -> Result<Vec<CtdEntry>, Error> {
        let map = self.column_map.as_deref().map(load_column_map).transpose()?;
        load_ctd(&self.ctd, map.as_ref())
    }
}

#[derive(Args, Debug, Serialize)]
struct CtdPairsArgs {
    #[command(flatten)]
    ctd: CtdOptions,
    /// Put the new definition first.
    #[arg(long)]
    swap: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct EvalCtdArgs {
    #[command(flatten)]
    ctd: CtdOptions,
    /// Prediction TSV keyed by `ctd-NNNN` pair ids.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    predictions: Option<PathBuf>,
    /// Baseline model to predict with directly.
    #[arg(long)]
    model: Option<PathBuf>,
    /// With `--model`, put the new definition first.
    #[arg(long, requires = "model")]
    swap: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct JudgmentOptions {
    /// Judged usage pairs TSV.
    #[arg(long)]
    judgments: PathBuf,
    /// Average repeated raw annotator rows, skipping 0 judgments.
    #[arg(long)]
    aggregate_judgments: bool,
    /// Cosine TSV keyed by `usage_id1||usage_id2`.
    #[arg(long)]
    cosines: Option<PathBuf>,
}

impl JudgmentOptions {
    fn load(&self) -> Result<Vec<changetype::eval::JudgedUsagePair>, Error> {
        let mut pairs = read_judgments(&self.judgments, self.aggregate_judgments)?;
        if let Some(path) = &self.cosines {
            attach_cosines(&mut pairs, &read_cosines(path)?);
        }
        Ok(pairs)
    }
}

#[derive(Args, Debug, Serialize)]
struct EvalWicArgs {
    #[command(flatten)]
    judgments: JudgmentOptions,
    #[arg(long)]
    predictions: PathBuf,
    #[arg(long, value_parser = parse_from_str::<WicMode>, default_value = "binary-only")]
    mode: WicMode,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct EvalBinaryArgs {
    #[command(flatten)]
    judgments: JudgmentOptions,
    /// Gold change TSV (`lemma<TAB>change`).
    #[arg(long)]
    gold: PathBuf,
    /// Predictions for the label rule.
    #[arg(long)]
    predictions: Option<PathBuf>,
    #[arg(long, value_parser = parse_from_str::<TieRule>, default_value = "strict")]
    tie_rule: TieRule,
    /// Cosine threshold for the threshold rule; needs `--cosines`.
    #[arg(long, requires = "cosines")]
    threshold: Option<f64>,
    /// Search the accuracy-maximizing threshold; needs `--cosines`.
    #[arg(long, requires = "cosines")]
    sweep: bool,
    #[arg(long, value_parser = parse_from_str::<Aggregation>, default_value = "majority")]
    aggregation: Aggregation,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct ReportArgs {
    /// JSON report written by an `eval-*` subcommand.
    #[arg(long)]
    input: PathBuf,
    /// Also write `report.txt` and CSV tables here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(transparent)]
struct Caps([usize; 3]);

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(transparent)]
struct Ratios([f64; 3]);

fn three<T: std::str::FromStr>(s: &str) -> Result<[T; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated values, got `{s}`"));
    }
    let mut out = Vec::with_capacity(3);
    for p in parts {
        out.push(p.parse::<T>().map_err(|_| format!("bad value `{p}`"))?);
    }
    out.try_into().map_err(|_| unreachable!())
}

fn parse_caps(s: &str) -> Result<Caps, String> {
    three(s).map(Caps)
}

fn parse_ratios(s: &str) -> Result<Ratios, String> {
    let r: [f64; 3] = three(s)?;
    let spec = SplitSpec {
        ratios: r,
        ..SplitSpec::default()
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(Ratios(r))
}

fn parse_from_str<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "error_code=usage {m}"),
            Failure::Data(e) => write!(f, "error_code={} {e}", e.code()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn create_out(dir: &Path) -> Result<(), Error> {
    fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

#[derive(Serialize)]
struct RunRecord<'a> {
    tool: &'static str,
    version: &'static str,
    #[serde(flatten)]
    command: &'a Command,
}

fn write_run(out: &Path, command: &Command) -> Result<(), Error> {
    create_out(out)?;
    write_json(
        &out.join("run.json"),
        &RunRecord {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
        },
    )
}

fn extract(a: &ExtractArgs) -> CmdResult {
    let (lexicon, warnings) = parse_wordnet_with_warnings(&a.wordnet_dir)?;
    info!("parsed {} synsets with {} warnings", lexicon.len(), warnings.len());
    write_lexicon_file(&lexicon, &a.out.join("lexicon.jsonl"))?;
    let mut text = String::new();
    for w in &warnings {
        text.push_str(&w.to_string());
        text.push('\n');
    }
    write_text(&a.out.join("warnings.txt"), &text)?;

    let per_pos: std::collections::BTreeMap<_, _> = lexicon
        .ids_by_pos()
        .into_iter()
        .map(|(pos, ids)| (pos.name(), ids.len()))
        .collect();
    let hyperonym_links: usize = lexicon.synsets().map(|s| s.hyperonyms.len()).sum();
    write_json(
        &a.out.join("extract_stats.json"),
        &serde_json::json!({
            "synsets": lexicon.len(),
            "per_pos": per_pos,
            "hyperonym_links": hyperonym_links,
            "antonym_links": lexicon.antonym_links().len(),
            "warnings": warnings.len(),
        }),
    )?;
    Ok(())
}

fn pairs(a: &PairsArgs) -> CmdResult {
    let spec = a.split.spec();
    let homonyms = a.homonyms.unwrap_or_else(|| spec.homonym_supply());
    let lexicon = read_lexicon_jsonl(&a.lexicon)?;
    let by_class = generate_all(&lexicon, homonyms, spec.seed)?;
    let mut counts = std::collections::BTreeMap::new();
    for (label, pairs) in &by_class {
        info!("{label}: {} pairs", pairs.len());
        write_pairs_file(pairs, &a.out.join(class_file_name(*label)))?;
        counts.insert(*label, pairs.len());
    }
    write_json(&a.out.join("pair_counts.json"), &counts)?;
    Ok(())
}

fn split(a: &SplitArgs) -> CmdResult {
    let spec = a.split.spec();
    let mut interner = Interner::default();
    let mut by_class = std::collections::BTreeMap::new();
    for label in RelationLabel::ALL {
        let path = a.pairs.join(class_file_name(label));
        by_class.insert(label, read_pairs_interned(&path, &mut interner)?);
    }
    let splits = split_dataset(by_class, &spec)?;
    for s in Split::ALL {
        write_pairs_file(splits.get(s), &a.out.join(s.file_name()))?;
    }
    let leakage = splits.leakage();
    write_json(
        &a.out.join("stats.json"),
        &serde_json::json!({
            "spec": spec,
            "splits": splits.stats(),
            "leakage": leakage,
            "leakage_total": leakage.total(),
        }),
    )?;
    Ok(())
}

fn train_baseline(a: &TrainArgs) -> CmdResult {
    let train = read_pairs_file(&a.train)?;
    let config = SgdConfig {
        epochs: a.epochs,
        eta0: a.lr0,
        alpha: a.alpha,
        seed: a.seed,
        ..SgdConfig::default()
    };
    let model = BaselineModel::fit(&train, &config)?;
    info!(
        "vocabulary {} terms, classes {:?}",
        model.vectorizer.len(),
        model.linear.classes
    );
    model.save(&a.out.join("model.json"))?;
    Ok(())
}

#[derive(Deserialize)]
struct PairInput {
    id: String,
    def1: String,
    def2: String,
}

fn read_pair_inputs(path: &Path) -> Result<Vec<PairInput>, Error> {
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile {
            path: path.to_path_buf(),
        },
        _ => Error::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })?;
    let mut out = Vec::new();
    let mut offset = 0u64;
    for line in text.split_inclusive('\n') {
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(line).map_err(|e| Error::Parse {
                file: path.display().to_string(),
                offset,
                message: e.to_string(),
            })?);
        }
        offset += line.len() as u64;
    }
    Ok(out)
}

fn predict_baseline(a: &PredictArgs) -> CmdResult {
    let model = BaselineModel::load(&a.model)?;
    let preds: Vec<Prediction> = read_pair_inputs(&a.input)?
        .iter()
        .map(|p| model.predict_text(&p.id, &p.def1, &p.def2))
        .collect();
    write_predictions_file(&preds, &a.out.join("predictions.tsv"))?;
    Ok(())
}

fn eval_wn(a: &EvalWnArgs) -> CmdResult {
    let gold = read_pairs_file(&a.gold)?;
    let preds = read_predictions_file(&a.predictions)?;
    let report = eval_classification(gold.iter().map(|p| (p.id.as_str(), p.label)), &preds)?;
    write_json(&a.out.join("eval_wn.json"), &report)?;
    write_text(&a.out.join("confusion.csv"), &report.confusion.to_csv(false))?;
    write_text(&a.out.join("confusion_normalized.csv"), &report.confusion.to_csv(true))?;
    Ok(())
}

fn ctd_pairs(a: &CtdPairsArgs) -> CmdResult {
    let entries = a.ctd.load()?;
    let mut text = String::new();
    for p in ctd_to_pairs(&entries, a.swap) {
        text.push_str(&serde_json::to_string(&p).map_err(Error::from)?);
        text.push('\n');
    }
    write_text(&a.out.join("ctd_pairs.jsonl"), &text)?;
    Ok(())
}

fn eval_ctd_cmd(a: &EvalCtdArgs) -> CmdResult {
    let entries = a.ctd.load()?;
    let preds = match (&a.predictions, &a.model) {
        (Some(path), _) => read_predictions_file(path)?,
        (None, Some(model)) => {
            let model = BaselineModel::load(model)?;
            let preds: Vec<Prediction> = ctd_to_pairs(&entries, a.swap)
                .iter()
                .map(|p| model.predict_text(&p.id, &p.def1, &p.def2))
                .collect();
            write_predictions_file(&preds, &a.out.join("predictions.tsv"))?;
            preds
        }
        (None, None) => return Err(Failure::Usage("eval-ctd needs --predictions or --model".into())),
    };
    let report = eval_ctd(&entries, &preds)?;
    write_json(&a.out.join("eval_ctd.json"), &report)?;
    write_text(&a.out.join("confusion.csv"), &report.confusion.to_csv(false))?;
    write_text(&a.out.join("confusion_normalized.csv"), &report.confusion.to_csv(true))?;
    Ok(())
}

fn eval_wic(a: &EvalWicArgs) -> CmdResult {
    let pairs = a.judgments.load()?;
    let preds = read_predictions_file(&a.predictions)?;
    let report = eval_graded_wic(&pairs, &preds, a.mode)?;
    let distribution = judgment_distribution(&pairs, &preds);
    write_json(
        &a.out.join("eval_wic.json"),
        &serde_json::json!({
            "mode": report.mode,
            "n": report.n,
            "spearman": report.spearman,
            "cosine_only_spearman": report.cosine_only_spearman,
            "distribution": distribution,
        }),
    )?;
    Ok(())
}

fn eval_binary(a: &EvalBinaryArgs) -> CmdResult {
    if a.predictions.is_none() && a.threshold.is_none() && !a.sweep {
        return Err(Failure::Usage(
            "eval-binary needs --predictions, --threshold or --sweep".into(),
        ));
    }
    let pairs = a.judgments.load()?;
    let gold = read_gold(&a.gold)?;
    let mut out = serde_json::Map::new();
    if let Some(path) = &a.predictions {
        let preds = read_predictions_file(path)?;
        let per_word = cross_period_predictions(&pairs, &preds)?;
        let r = eval_binary_change(&per_word, &gold, a.tie_rule)?;
        out.insert("label_rule".into(), serde_json::to_value(r).map_err(Error::from)?);
    }
    if a.threshold.is_some() || a.sweep {
        let per_word = cross_period_cosines(&pairs)?;
        if let Some(t) = a.threshold {
            let r = eval_binary_threshold(&per_word, &gold, t, a.aggregation)?;
            out.insert("threshold_rule".into(), serde_json::to_value(r).map_err(Error::from)?);
        }
        if a.sweep {
            let r = sweep_threshold(&per_word, &gold, a.aggregation)?;
            out.insert("threshold_sweep".into(), serde_json::to_value(r).map_err(Error::from)?);
        }
    }
    write_json(&a.out.join("eval_binary.json"), &out)?;
    Ok(())
}

fn report_cmd(a: &ReportArgs) -> CmdResult {
    let text = fs::read_to_string(&a.input).map_err(|e| Error::Io {
        path: a.input.clone(),
        source: e,
    })?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
    let rendered = report::render(&value);
    print!("{rendered}");
    if let Some(out) = &a.out {
        write_text(&out.join("report.txt"), &rendered)?;
        for (name, csv) in report::confusion_csvs(&value) {
            write_text(&out.join(name), &csv)?;
        }
    }
    Ok(())
}

fn out_dir(command: &Command) -> Option<&Path> {
    Some(match command {
        Command::Extract(a) => &a.out,
        Command::Pairs(a) => &a.out,
        Command::Split(a) => &a.out,
        Command::TrainBaseline(a) => &a.out,
        Command::PredictBaseline(a) => &a.out,
        Command::EvalWn(a) => &a.out,
        Command::CtdPairs(a) => &a.out,
        Command::EvalCtd(a) => &a.out,
        Command::EvalWic(a) => &a.out,
        Command::EvalBinary(a) => &a.out,
        Command::Report(a) => return a.out.as_deref(),
    })
}

fn run(cli: &Cli) -> CmdResult {
    if let Some(out) = out_dir(&cli.command) {
        write_run(out, &cli.command)?;
    }
    match &cli.command {
        Command::Extract(a) => extract(a),
        Command::Pairs(a) => pairs(a),
        Command::Split(a) => split(a),
        Command::TrainBaseline(a) => train_baseline(a),
        Command::PredictBaseline(a) => predict_baseline(a),
        Command::EvalWn(a) => eval_wn(a),
        Command::CtdPairs(a) => ctd_pairs(a),
        Command::EvalCtd(a) => eval_ctd_cmd(a),
        Command::EvalWic(a) => eval_wic(a),
        Command::EvalBinary(a) => eval_binary(a),
        Command::Report(a) => report_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("error_code=usage {}", e.render());
            return ExitCode::from(1);
        }
    };
    env_logger::Builder::new()
        .filter_level(if cli.verbose {
            log::LevelFilter::Info
        } else {
            log::LevelFilter::Warn
        })
        .init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(match f {
                Failure::Usage(_) => 1,
                Failure::Data(_) => 2,
            })
        }
    }
}
