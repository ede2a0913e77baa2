//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use corpuskit_core::corpus::{CorpusStats, DEFAULT_SHARDS};
use corpuskit_core::metrics::{
    accuracy_percent, centroid_baseline, copa_accuracy, geo_eval, sequence_accuracy_counts, sequence_span_counts,
    GeoSummary, LabeledSequence, SpanCounts,
};
use corpuskit_core::report::{fixed, two_decimals};
use corpuskit_core::stats::{compare_systems, t_test, VarianceModel};
use corpuskit_core::tokenizer::{encode, PreTokenizerConfig, WordPieceTrainer};
use rayon::prelude::*;

use crate::error::{exit, CliError, Result};
use crate::formats;
use crate::input::blocks;
use crate::output::{OutputFormat, Report, Value};
use crate::pipeline::{self, corpus_name, Pipeline};

#[derive(Debug, Parser)]
#[command(
    name = "corpuskit",
    version,
    about = "Corpus deduplication, WordPiece vocabularies and evaluation"
)]
pub struct Cli {
    /// Worker threads for dedup and dataset-level metric pooling.
    #[arg(long, global = true, env = "CORPUSKIT_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Tsv)]
    pub output_format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Drop input sentences already present in earlier reference corpora.
    Dedup(DedupArgs),
    /// Word and sentence counts of a corpus.
    Stats(StatsArgs),
    /// Uniformly sample paragraphs.
    Sample(SampleArgs),
    /// WordPiece vocabulary commands.
    #[command(subcommand)]
    Vocab(VocabCommand),
    /// Encode text to WordPiece ids, one line of ids per input line.
    Tokenize(TokenizeArgs),
    /// Score predictions.
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Two-sample t-test over two score files.
    Sigtest(SigtestArgs),
    /// Rank systems by mean run score and test the top two.
    Compare(CompareArgs),
    /// Word-count table with totals from stats files.
    Manifest(ManifestArgs),
}

#[derive(Debug, Args)]
pub struct DedupArgs {
    /// Reference corpora in precedence order, comma separated.
    #[arg(long, required = true, value_delimiter = ',')]
    pub reference: Vec<PathBuf>,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// Also drop repeats inside the input.
    #[arg(long)]
    pub within: bool,
    /// Write the stats row to this TSV file.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SHARDS)]
    pub shards: usize,
    /// Corpus name for the stats row (default: input file stem).
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, default_value = "und")]
    pub language: String,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub language: String,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Number of paragraphs.
    #[arg(short = 'k')]
    pub k: usize,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum VocabCommand {
    /// Train a WordPiece vocabulary.
    Train(VocabTrainArgs),
}

#[derive(Debug, Args)]
pub struct VocabTrainArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Target vocabulary size, special tokens included.
    #[arg(long)]
    pub size: usize,
    #[arg(long, default_value_t = 2)]
    pub min_freq: u64,
    #[arg(long)]
    pub lowercase: bool,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct TokenizeArgs {
    #[arg(long)]
    pub vocab: PathBuf,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long)]
    pub lowercase: bool,
}

#[derive(Debug, Subcommand)]
pub enum EvalCommand {
    /// Token-level micro-F1.
    Tag(InputArg),
    /// Exact-span NER precision, recall and F1.
    Ner(InputArg),
    /// Median and mean great-circle error in km.
    Geo(InputArg),
    /// Centroid-of-training baseline on the gold test coordinates.
    GeoBaseline(GeoBaselineArgs),
    /// COPA accuracy.
    Copa(CopaArgs),
}

#[derive(Debug, Args)]
pub struct InputArg {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct GeoBaselineArgs {
    #[arg(long)]
    pub train: PathBuf,
    #[arg(long)]
    pub test: PathBuf,
}

#[derive(Debug, Args)]
pub struct CopaArgs {
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long)]
    pub pred: PathBuf,
}

#[derive(Debug, Args)]
pub struct SigtestArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    /// Student's pooled-variance test instead of Welch's.
    #[arg(long)]
    pub pooled: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub runs: PathBuf,
    #[arg(long)]
    pub lower_is_better: bool,
    #[arg(long)]
    pub pooled: bool,
}

#[derive(Debug, Args)]
pub struct ManifestArgs {
    #[arg(long, required = true, num_args = 1..)]
    pub stats: Vec<PathBuf>,
    /// Thousands separators in the word counts.
    #[arg(long)]
    pub group_digits: bool,
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::OK,
                _ => exit::ARGUMENT,
            };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out).and_then(|()| out.flush().map_err(|e| CliError::io(Path::new("<stdout>"), e))) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("corpuskit: error: {e}");
            e.exit_code()
        }
    }
}

fn threads(cli: &Cli) -> usize {
    match cli.threads {
        Some(n) => n as usize,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    }
}

/// Runs a parsed command, writing results to `out` and notices to stderr.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let report = match &cli.command {
        Command::Dedup(a) => dedup(cli, a)?,
        Command::Stats(a) => stats_table(&[pipeline::stats_file(&a.input, &a.name, &a.language)?]),
        Command::Sample(a) => sample(cli, a)?,
        Command::Vocab(VocabCommand::Train(a)) => vocab_train(a)?,
        Command::Tokenize(a) => tokenize(a)?,
        Command::Eval(e) => eval(cli, e)?,
        Command::Sigtest(a) => sigtest(a)?,
        Command::Compare(a) => compare(a)?,
        Command::Manifest(a) => manifest(a)?,
    };
    out.write_all(report.render(cli.output_format).as_bytes())
        .map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

fn stats_table(stats: &[CorpusStats]) -> Report {
    let rows = stats
        .iter()
        .map(|s| {
            vec![
                Value::text(&s.name),
                Value::text(&s.language),
                Value::Int(s.word_count),
                Value::Int(s.sentence_count),
                Value::Int(s.removed_count),
                Value::Num(fixed(s.removed_fraction(), 6)),
            ]
        })
        .collect();
    Report::table(CorpusStats::TSV_HEADER.split('\t').collect(), rows)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn dedup(cli: &Cli, a: &DedupArgs) -> Result<Report> {
    let pipeline = Pipeline::new(threads(cli))?;
    let index = pipeline.build_index(&a.reference, a.shards)?;
    let name = a.name.clone().unwrap_or_else(|| corpus_name(&a.input));
    let stats = pipeline.dedup_file(&a.input, &a.output, &index, a.within, &name, &a.language)?;
    if let Some(path) = &a.stats {
        write_file(
            path,
            format!("{}\n{}\n", CorpusStats::TSV_HEADER, stats.tsv_row()).as_bytes(),
        )?;
    }
    Ok(stats_table(&[stats]))
}

fn sample(cli: &Cli, a: &SampleArgs) -> Result<Report> {
    let paragraphs = pipeline::sample_file(&a.input, a.k, cli.seed)?;
    let mut text = String::new();
    for (i, p) in paragraphs.iter().enumerate() {
        if i > 0 {
            text.push('\n');
        }
        text.push_str(p);
        text.push('\n');
    }
    write_file(&a.output, text.as_bytes())?;
    Ok(Report::Pairs(vec![("paragraphs", Value::Int(paragraphs.len() as u64))]))
}

fn vocab_train(a: &VocabTrainArgs) -> Result<Report> {
    let config = PreTokenizerConfig {
        lowercase: a.lowercase,
        ..PreTokenizerConfig::default()
    };
    let counts = pipeline::word_counts(&a.input, &config)?;
    let trained = WordPieceTrainer::new(a.size).min_frequency(a.min_freq).train(counts)?;
    write_file(&a.output, trained.vocabulary.to_text().as_bytes())?;
    Ok(Report::Pairs(vec![
        ("vocab_size", Value::Int(trained.vocabulary.len() as u64)),
        ("merges", Value::Int(trained.merges.len() as u64)),
    ]))
}

fn tokenize(a: &TokenizeArgs) -> Result<Report> {
    let vocab = formats::read_vocab(&a.vocab)?;
    let config = PreTokenizerConfig {
        lowercase: a.lowercase,
        ..PreTokenizerConfig::default()
    };
    let file = File::create(&a.output).map_err(|e| CliError::io(&a.output, e))?;
    let mut w = BufWriter::new(file);
    let (mut lines, mut tokens, mut unknown) = (0u64, 0u64, 0u64);
    let unk = vocab.unk_id();
    for block in blocks(&a.input)? {
        let block = block.map_err(|e| CliError::io(&a.input, e))?;
        for (offset, line) in block.lines() {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            let text = corpuskit_core::corpus::decode_line(line, offset).map_err(|e| CliError::input(&a.input, e))?;
            let ids = encode(text, &vocab, &config);
            lines += 1;
            tokens += ids.len() as u64;
            unknown += ids.iter().filter(|&&id| id == unk).count() as u64;
            let rendered: Vec<String> = ids.iter().map(u32::to_string).collect();
            writeln!(w, "{}", rendered.join(" ")).map_err(|e| CliError::io(&a.output, e))?;
        }
    }
    w.flush().map_err(|e| CliError::io(&a.output, e))?;
    Ok(Report::Pairs(vec![
        ("lines", Value::Int(lines)),
        ("tokens", Value::Int(tokens)),
        ("unknown", Value::Int(unknown)),
    ]))
}

/// Per-sequence counts on the pool, reduced in input order so the first
/// error reported is the first malformed sequence.
fn pooled<T, F>(cli: &Cli, data: &[LabeledSequence], count: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&LabeledSequence, usize) -> corpuskit_core::Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads(cli))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    let results: Vec<corpuskit_core::Result<T>> =
        pool.install(|| data.par_iter().enumerate().map(|(i, s)| count(s, i)).collect());
    results.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

fn geo_report(s: GeoSummary) -> Report {
    Report::Pairs(vec![
        ("median", Value::Num(two_decimals(s.median_km))),
        ("mean", Value::Num(two_decimals(s.mean_km))),
    ])
}

fn eval(cli: &Cli, e: &EvalCommand) -> Result<Report> {
    let in_file = |path: &Path, r: corpuskit_core::Result<GeoSummary>| r.map_err(|e| CliError::input(path, e));
    Ok(match e {
        EvalCommand::Tag(a) => {
            let data = formats::read_token_tsv(&a.input)?;
            let counts = pooled(cli, &data, sequence_accuracy_counts).map_err(|e| attach(&a.input, e))?;
            let (correct, total) = counts.iter().fold((0, 0), |(c, t), (dc, dt)| (c + dc, t + dt));
            Report::Pairs(vec![(
                "micro_f1",
                Value::Num(two_decimals(accuracy_percent(correct, total))),
            )])
        }
        EvalCommand::Ner(a) => {
            let data = formats::read_token_tsv(&a.input)?;
            let counts = pooled(cli, &data, sequence_span_counts).map_err(|e| attach(&a.input, e))?;
            let s = counts
                .into_iter()
                .fold(SpanCounts::default(), |acc, c| acc + c)
                .scores();
            Report::Pairs(vec![
                ("precision", Value::Num(two_decimals(s.precision))),
                ("recall", Value::Num(two_decimals(s.recall))),
                ("f1", Value::Num(two_decimals(s.f1))),
            ])
        }
        EvalCommand::Geo(a) => {
            let pairs = formats::read_geo_tsv(&a.input)?;
            geo_report(in_file(&a.input, geo_eval(&pairs))?)
        }
        EvalCommand::GeoBaseline(a) => {
            let train = formats::read_train_tsv(&a.train)?;
            let test: Vec<_> = formats::read_geo_tsv(&a.test)?.into_iter().map(|p| p.gold).collect();
            geo_report(in_file(&a.test, centroid_baseline(&train, &test))?)
        }
        EvalCommand::Copa(a) => {
            let gold = formats::read_copa_gold(&a.gold)?;
            let preds = formats::read_copa_predictions(&a.pred)?;
            let acc = copa_accuracy(&gold, &preds).map_err(|e| CliError::input(&a.pred, e))?;
            Report::Pairs(vec![("accuracy", Value::Num(two_decimals(acc)))])
        }
    })
}

fn attach(path: &Path, e: CliError) -> CliError {
    match e {
        CliError::Core(source) => CliError::input(path, source),
        other => other,
    }
}

fn variance_model(pooled: bool) -> VarianceModel {
    if pooled {
        VarianceModel::Pooled
    } else {
        VarianceModel::Welch
    }
}

fn sigtest(a: &SigtestArgs) -> Result<Report> {
    let xs = formats::read_scores(&a.a)?;
    let ys = formats::read_scores(&a.b)?;
    let r = t_test(&xs, &ys, variance_model(a.pooled))?;
    Ok(Report::table(
        vec!["t", "df", "p", "label"],
        vec![vec![
            Value::num(r.t_statistic),
            Value::num(r.degrees_of_freedom),
            Value::num(r.p_value),
            Value::text(r.label),
        ]],
    ))
}

fn compare(a: &CompareArgs) -> Result<Report> {
    let runs = formats::read_runs(&a.runs)?;
    let report = compare_systems(&runs, !a.lower_is_better, variance_model(a.pooled))?;
    if let Some(t) = &report.test {
        eprintln!(
            "t={} df={} p={} label={}",
            t.t_statistic, t.degrees_of_freedom, t.p_value, t.label
        );
    }
    if let Some(notice) = &report.notice {
        eprintln!("{notice}");
    }
    let rows = report
        .systems
        .iter()
        .map(|s| {
            vec![
                Value::text(&s.system),
                Value::Int(s.runs as u64),
                Value::num(s.mean),
                Value::text(if s.best { "yes" } else { "no" }),
                Value::text(&s.reported),
            ]
        })
        .collect();
    Ok(Report::table(
        corpuskit_core::stats::ComparisonReport::TSV_HEADER
            .split('\t')
            .collect(),
        rows,
    ))
}

fn manifest(a: &ManifestArgs) -> Result<Report> {
    let mut stats = Vec::new();
    for path in &a.stats {
        stats.extend(formats::read_stats_tsv(path)?);
    }
    let total: u64 = stats.iter().map(|s| s.word_count).sum();
    let mut rows: Vec<Vec<Value>> = stats
        .iter()
        .map(|s| {
            vec![
                Value::text(&s.name),
                Value::text(&s.language),
                Value::Grouped(s.word_count),
            ]
        })
        .collect();
    rows.push(vec![Value::text("total"), Value::text(""), Value::Grouped(total)]);
    Ok(Report::Table {
        columns: vec!["dataset", "language", "word_count"],
        rows,
        group_digits: a.group_digits,
    })
}
