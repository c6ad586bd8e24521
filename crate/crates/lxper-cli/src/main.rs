//! Batch CLI for the readability pipeline: train, score, evaluate,
//! select, compare and summarize subcommands over the corpus, word-list
//! and model file formats.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use lxper_cli::report::{score_document, ParagraphParses};
use lxper_cli::tables;
use lxper_core::corpus::{
    load_easy_words, load_text_corpus, load_word_list, split_corpus, summarize_corpus,
    EasyWordList, GradedTextCorpus, GradedWordList,
};
use lxper_core::features::{extract_all, FeatureVector, RelationResource};
use lxper_core::model::{
    evaluate, load_model, save_model, train_versions, FeatureFamilyVersion, TrainingMeta,
};
use lxper_core::selection::{
    finish_selection, significance_filter, SelectionTable, DEFAULT_PAIR_THRESHOLD,
    DEFAULT_SIGNIFICANCE,
};
use lxper_core::textproc::{parse_tree_lines, annotate, AnalyzedText, ParseSource};
use lxper_core::Grade;

#[derive(Parser)]
#[command(
    name = "lxper",
    version,
    about = "Curriculum-calibrated text readability assessment"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Enable warning/debug logging on standard error.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Select features, train the seven feature-family versions, and write
    /// the chosen model plus the selection report.
    Train(TrainArgs),
    /// Score a document paragraph by paragraph with a trained model.
    Score(ScoreArgs),
    /// Evaluate a trained model against a labeled corpus.
    Evaluate(EvaluateArgs),
    /// Run significance filtering and collinearity pruning.
    Select(SelectArgs),
    /// Compare a trained model with the classic readability formulas.
    Compare(CompareArgs),
    /// Per-grade corpus statistics (aWPT, aSPT, aWPS).
    Summarize(SummarizeArgs),
}

#[derive(Args, Default)]
struct TrainArgs {
    /// Graded text corpus (line-delimited JSON records).
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Graded word list (`word<TAB>level`).
    #[arg(long)]
    wordlist: Option<PathBuf>,
    /// Relation resource for lexical chains (syn:/hyp: lines).
    #[arg(long)]
    relations: Option<PathBuf>,
    /// Directory of external parse files named `<text-id>.trees`.
    #[arg(long)]
    parses: Option<PathBuf>,
    /// Output model file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significance threshold on |r| with the grade.
    #[arg(long)]
    sig: Option<f64>,
    /// Pairwise collinearity threshold on |r|.
    #[arg(long)]
    pair: Option<f64>,
    /// Feature-family version to write (S, CM, WD, S+CM, CM+WD, S+WD,
    /// S+CM+WD).
    #[arg(long)]
    version: Option<String>,
    /// Held-out fraction for the stratified split.
    #[arg(long = "test-fraction")]
    test_fraction: Option<f64>,
    /// Split seed.
    #[arg(long)]
    seed: Option<u64>,
    /// key=value file supplying defaults for unset flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Default)]
struct ScoreArgs {
    /// Trained model file.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Document to score (paragraphs separated by blank lines).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    wordlist: Option<PathBuf>,
    #[arg(long)]
    relations: Option<PathBuf>,
    /// External parse file: one tree per sentence, paragraph order.
    #[arg(long)]
    parses: Option<PathBuf>,
    /// Round printed scores to this many decimals (full precision
    /// otherwise).
    #[arg(long)]
    digits: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Default)]
struct EvaluateArgs {
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    wordlist: Option<PathBuf>,
    #[arg(long)]
    relations: Option<PathBuf>,
    #[arg(long)]
    parses: Option<PathBuf>,
    /// Also write the report as TSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Default)]
struct SelectArgs {
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    wordlist: Option<PathBuf>,
    #[arg(long)]
    relations: Option<PathBuf>,
    #[arg(long)]
    parses: Option<PathBuf>,
    /// Re-run selection over a previously exported selection table
    /// instead of computing correlations from a corpus.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    sig: Option<f64>,
    #[arg(long)]
    pair: Option<f64>,
    /// Also write the selection table as TSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Default)]
struct CompareArgs {
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    wordlist: Option<PathBuf>,
    /// Easy-word list for the Dale-Chall formula (one word per line).
    #[arg(long)]
    easywords: Option<PathBuf>,
    #[arg(long)]
    relations: Option<PathBuf>,
    #[arg(long)]
    parses: Option<PathBuf>,
    /// Also write the comparison table as TSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Default)]
struct SummarizeArgs {
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    parses: Option<PathBuf>,
    /// Also write the summary as TSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.verbose {
        env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    }
    let outcome = match cli.command {
        Command::Train(args) => run_train(args),
        Command::Score(args) => run_score(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::Select(args) => run_select(args),
        Command::Compare(args) => run_compare(args),
        Command::Summarize(args) => run_summarize(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<MissingFlag>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("missing required flag --{0} (set it on the command line or in --config)")]
struct MissingFlag(&'static str);

// ---------------------------------------------------------------------------
// Config file: key=value lines filling flags left unset.
// ---------------------------------------------------------------------------

#[derive(Default)]
struct ConfigFile(BTreeMap<String, String>);

impl ConfigFile {
    fn load(path: Option<&Path>) -> Result<ConfigFile> {
        let Some(path) = path else {
            return Ok(ConfigFile::default());
        };
        let content = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut map = BTreeMap::new();
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("{}:{}: expected key=value", path.display(), lineno + 1))?;
            map.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigFile(map))
    }

    fn fill_path(&self, slot: &mut Option<PathBuf>, key: &str) {
        if slot.is_none() {
            if let Some(value) = self.0.get(key) {
                *slot = Some(PathBuf::from(value));
            }
        }
    }

    fn fill<T: FromStr>(&self, slot: &mut Option<T>, key: &str) -> Result<()>
    where
        T::Err: std::fmt::Display,
    {
        if slot.is_none() {
            if let Some(value) = self.0.get(key) {
                *slot = Some(
                    value
                        .parse()
                        .map_err(|e| anyhow!("config key {key}: {e}"))?,
                );
            }
        }
        Ok(())
    }
}

fn require<T>(slot: Option<T>, flag: &'static str) -> Result<T> {
    slot.ok_or_else(|| anyhow!(MissingFlag(flag)))
}

// ---------------------------------------------------------------------------
// Shared loading helpers
// ---------------------------------------------------------------------------

fn load_wordlist_logged(path: &Path) -> Result<GradedWordList> {
    let (wordlist, warnings) =
        load_word_list(path).with_context(|| format!("loading word list {}", path.display()))?;
    if !warnings.is_empty() {
        log::warn!("{} duplicate word-list entries overridden", warnings.len());
    }
    Ok(wordlist)
}

fn load_relations(path: Option<&Path>) -> Result<RelationResource> {
    match path {
        Some(path) => RelationResource::load(path)
            .with_context(|| format!("loading relations {}", path.display())),
        None => Ok(RelationResource::empty()),
    }
}

fn parse_source_for(parses_dir: Option<&Path>, text_id: &str) -> ParseSource {
    match parses_dir {
        Some(dir) => ParseSource::ExternalFile(dir.join(format!("{text_id}.trees"))),
        None => ParseSource::Heuristic,
    }
}

/// Annotate and featurize a corpus.
fn featurize_corpus(
    corpus: &GradedTextCorpus,
    wordlist: &GradedWordList,
    resource: &RelationResource,
    parses_dir: Option<&Path>,
) -> Result<Vec<(Grade, AnalyzedText, FeatureVector)>> {
    corpus
        .texts()
        .iter()
        .map(|t| {
            let source = parse_source_for(parses_dir, &t.id);
            let analyzed = annotate(&t.text, &source)
                .with_context(|| format!("annotating text {}", t.id))?;
            let vector = extract_all(&analyzed, wordlist, resource)
                .with_context(|| format!("featurizing text {}", t.id))?;
            Ok((t.grade, analyzed, vector))
        })
        .collect()
}

fn write_output(path: &Path, content: &str, what: &str) -> Result<()> {
    std::fs::write(path, content)
        .with_context(|| format!("writing {what} to {}", path.display()))?;
    println!("{what} written to {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn run_train(mut args: TrainArgs) -> Result<()> {
    let config = ConfigFile::load(args.config.as_deref())?;
    config.fill_path(&mut args.corpus, "corpus");
    config.fill_path(&mut args.wordlist, "wordlist");
    config.fill_path(&mut args.relations, "relations");
    config.fill_path(&mut args.parses, "parses");
    config.fill_path(&mut args.out, "out");
    config.fill(&mut args.sig, "sig")?;
    config.fill(&mut args.pair, "pair")?;
    config.fill(&mut args.version, "version")?;
    config.fill(&mut args.test_fraction, "test-fraction")?;
    config.fill(&mut args.seed, "seed")?;

    let corpus_path = require(args.corpus, "corpus")?;
    let wordlist_path = require(args.wordlist, "wordlist")?;
    let out_path = require(args.out, "out")?;
    let sig = args.sig.unwrap_or(DEFAULT_SIGNIFICANCE);
    let pair = args.pair.unwrap_or(DEFAULT_PAIR_THRESHOLD);
    let version: FeatureFamilyVersion = args
        .version
        .as_deref()
        .unwrap_or("S+CM+WD")
        .parse()
        .map_err(|e| anyhow!("{e}"))?;
    let test_fraction = args.test_fraction.unwrap_or(0.2);
    let seed = args.seed.unwrap_or(42);

    let corpus = load_text_corpus(&corpus_path)
        .with_context(|| format!("loading corpus {}", corpus_path.display()))?;
    let wordlist = load_wordlist_logged(&wordlist_path)?;
    let resource = load_relations(args.relations.as_deref())?;

    let (train_half, test_half) = split_corpus(&corpus, test_fraction, seed)?;
    let train_data = featurize_corpus(&train_half, &wordlist, &resource, args.parses.as_deref())?;
    let test_data = featurize_corpus(&test_half, &wordlist, &resource, args.parses.as_deref())?;
    let train_rows: Vec<(Grade, FeatureVector)> =
        train_data.into_iter().map(|(g, _, v)| (g, v)).collect();
    let test_rows: Vec<(Grade, FeatureVector)> =
        test_data.into_iter().map(|(g, _, v)| (g, v)).collect();

    let matrix: Vec<FeatureVector> = train_rows.iter().map(|(_, v)| v.clone()).collect();
    let grades: Vec<f64> = train_rows.iter().map(|(g, _)| g.value()).collect();
    let (report, selection) = lxper_core::selection::select_features(&matrix, &grades, sig, pair)?;

    let mut included_line = String::from("included features:");
    for code in &selection.included {
        let _ = write!(included_line, " {code}");
    }
    println!("{included_line}");

    let base_meta = TrainingMeta {
        corpus_id: corpus_path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        significance_threshold: sig,
        pair_threshold: pair,
        ..TrainingMeta::default()
    };
    let outcomes = train_versions(&train_rows, &test_rows, &selection, &base_meta);
    println!(
        "\nheld-out version table ({} train / {} test texts):",
        train_rows.len(),
        test_rows.len()
    );
    print!("{}", tables::versions_aligned(&outcomes));

    let (model, _) = outcomes[&version]
        .as_ref()
        .map_err(|e| anyhow!("version {version} failed to train: {e}"))?;
    save_model(model, &out_path)?;
    println!("\nmodel ({version}) written to {}", out_path.display());

    let table = SelectionTable::build(&report, &selection);
    let selection_path = PathBuf::from(format!("{}.selection.tsv", out_path.display()));
    write_output(&selection_path, &table.to_tsv(), "selection report")?;
    Ok(())
}

fn run_score(mut args: ScoreArgs) -> Result<()> {
    let config = ConfigFile::load(args.config.as_deref())?;
    config.fill_path(&mut args.model, "model");
    config.fill_path(&mut args.input, "in");
    config.fill_path(&mut args.wordlist, "wordlist");
    config.fill_path(&mut args.relations, "relations");
    config.fill_path(&mut args.parses, "parses");
    config.fill(&mut args.digits, "digits")?;

    let model_path = require(args.model, "model")?;
    let input_path = require(args.input, "in")?;
    let wordlist_path = require(args.wordlist, "wordlist")?;

    let model = load_model(&model_path)?;
    let wordlist = load_wordlist_logged(&wordlist_path)?;
    let resource = load_relations(args.relations.as_deref())?;
    let document = std::fs::read_to_string(&input_path)
        .with_context(|| format!("reading document {}", input_path.display()))?;
    let parses = match args.parses.as_deref() {
        Some(path) => {
            let content = std::fs::read_to_string(path)
                .with_context(|| format!("reading parse file {}", path.display()))?;
            ParagraphParses::Trees(parse_tree_lines(&content)?)
        }
        None => ParagraphParses::Heuristic,
    };

    let report = score_document(&model, &document, &wordlist, &resource, &parses)?;
    if report.skipped > 0 {
        log::warn!("{} paragraph(s) failed to score", report.skipped);
    }
    print!("{}", report.render(args.digits));
    Ok(())
}

fn run_evaluate(mut args: EvaluateArgs) -> Result<()> {
    let config = ConfigFile::load(args.config.as_deref())?;
    config.fill_path(&mut args.model, "model");
    config.fill_path(&mut args.corpus, "corpus");
    config.fill_path(&mut args.wordlist, "wordlist");
    config.fill_path(&mut args.relations, "relations");
    config.fill_path(&mut args.parses, "parses");
    config.fill_path(&mut args.out, "out");

    let model_path = require(args.model, "model")?;
    let corpus_path = require(args.corpus, "corpus")?;
    let wordlist_path = require(args.wordlist, "wordlist")?;

    let model = load_model(&model_path)?;
    let corpus = load_text_corpus(&corpus_path)?;
    let wordlist = load_wordlist_logged(&wordlist_path)?;
    let resource = load_relations(args.relations.as_deref())?;
    let rows: Vec<(Grade, FeatureVector)> =
        featurize_corpus(&corpus, &wordlist, &resource, args.parses.as_deref())?
            .into_iter()
            .map(|(g, _, v)| (g, v))
            .collect();
    let report = evaluate(&model, &rows)?;
    print!("{}", tables::evaluation_aligned(&report));
    if let Some(out) = args.out.as_deref() {
        write_output(out, &tables::evaluation_tsv(&report), "evaluation report")?;
    }
    Ok(())
}

fn run_select(mut args: SelectArgs) -> Result<()> {
    let config = ConfigFile::load(args.config.as_deref())?;
    config.fill_path(&mut args.corpus, "corpus");
    config.fill_path(&mut args.wordlist, "wordlist");
    config.fill_path(&mut args.relations, "relations");
    config.fill_path(&mut args.parses, "parses");
    config.fill_path(&mut args.report, "report");
    config.fill_path(&mut args.out, "out");
    config.fill(&mut args.sig, "sig")?;
    config.fill(&mut args.pair, "pair")?;

    let sig = args.sig.unwrap_or(DEFAULT_SIGNIFICANCE);
    let pair = args.pair.unwrap_or(DEFAULT_PAIR_THRESHOLD);

    let (report, result) = if let Some(report_path) = args.report.as_deref() {
        if args.corpus.is_some() {
            bail!("--report and --corpus are mutually exclusive");
        }
        let table = SelectionTable::load(report_path)?;
        let (report, pairs) = table.to_fixture();
        let survivors = significance_filter(&report, sig);
        let result = finish_selection(&report, &survivors, &pairs, sig, pair);
        (report, result)
    } else {
        let corpus_path = require(args.corpus, "corpus")?;
        let wordlist_path = require(args.wordlist, "wordlist")?;
        let corpus = load_text_corpus(&corpus_path)?;
        let wordlist = load_wordlist_logged(&wordlist_path)?;
        let resource = load_relations(args.relations.as_deref())?;
        let matrix: Vec<FeatureVector> =
            featurize_corpus(&corpus, &wordlist, &resource, args.parses.as_deref())?
                .into_iter()
                .map(|(_, _, v)| v)
                .collect();
        let grades: Vec<f64> = corpus.texts().iter().map(|t| t.grade.value()).collect();
        lxper_core::selection::select_features(&matrix, &grades, sig, pair)?
    };

    let mut included_line = format!("included ({}):", result.included.len());
    for code in &result.included {
        let _ = write!(included_line, " {code}");
    }
    println!("{included_line}\n");
    let table = SelectionTable::build(&report, &result);
    print!("{}", table.to_aligned());
    if let Some(out) = args.out.as_deref() {
        write_output(out, &table.to_tsv(), "selection report")?;
    }
    Ok(())
}

fn run_compare(mut args: CompareArgs) -> Result<()> {
    let config = ConfigFile::load(args.config.as_deref())?;
    config.fill_path(&mut args.model, "model");
    config.fill_path(&mut args.corpus, "corpus");
    config.fill_path(&mut args.wordlist, "wordlist");
    config.fill_path(&mut args.easywords, "easywords");
    config.fill_path(&mut args.relations, "relations");
    config.fill_path(&mut args.parses, "parses");
    config.fill_path(&mut args.out, "out");

    let model_path = require(args.model, "model")?;
    let corpus_path = require(args.corpus, "corpus")?;
    let wordlist_path = require(args.wordlist, "wordlist")?;
    let easywords_path = require(args.easywords, "easywords")?;

    let model = load_model(&model_path)?;
    let corpus = load_text_corpus(&corpus_path)?;
    let wordlist = load_wordlist_logged(&wordlist_path)?;
    let easy: EasyWordList = load_easy_words(&easywords_path)?;
    let resource = load_relations(args.relations.as_deref())?;

    let data = featurize_corpus(&corpus, &wordlist, &resource, args.parses.as_deref())?;
    let scored: Vec<lxper_core::baselines::ScoredText> = data
        .iter()
        .map(
            |(grade, analyzed, features)| lxper_core::baselines::ScoredText {
                grade: *grade,
                analyzed,
                features,
            },
        )
        .collect();
    let table = lxper_core::baselines::compare_models(&scored, &model, &easy)?;
    print!("{}", table.to_aligned());
    if let Some(out) = args.out.as_deref() {
        write_output(out, &table.to_tsv(), "comparison table")?;
    }
    Ok(())
}

fn run_summarize(mut args: SummarizeArgs) -> Result<()> {
    let config = ConfigFile::load(args.config.as_deref())?;
    config.fill_path(&mut args.corpus, "corpus");
    config.fill_path(&mut args.parses, "parses");
    config.fill_path(&mut args.out, "out");

    let corpus_path = require(args.corpus, "corpus")?;
    let corpus = load_text_corpus(&corpus_path)?;
    let parses = args.parses;
    // summarize_corpus visits texts in corpus order, so the id sequence
    // maps each call onto its parse file when a parse directory is given.
    let ids: Vec<String> = corpus.texts().iter().map(|t| t.id.clone()).collect();
    let mut index = 0usize;
    let summary = summarize_corpus(&corpus, |raw| {
        let source = parse_source_for(parses.as_deref(), &ids[index]);
        index += 1;
        annotate(raw, &source)
    })?;
    print!("{}", tables::summary_aligned(&summary));
    if let Some(out) = args.out.as_deref() {
        write_output(out, &tables::summary_tsv(&summary), "corpus summary")?;
    }
    Ok(())
}
