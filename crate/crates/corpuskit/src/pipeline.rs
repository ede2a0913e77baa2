//! Streaming corpus commands: index build, dedup, stats, paragraph sampling,
//! word counting for vocabulary training.
//!
//! Files are read in line-aligned blocks. For dedup, a batch of one block per
//! worker is decoded, normalized and fingerprinted in parallel, then consumed
//! in file order on the calling thread. The other commands read one block at
//! a time on the calling thread. Memory is bounded by the batch plus the
//! fingerprint sets.

use std::collections::VecDeque;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use corpuskit_core::corpus::{
    decode_line, normalize_sentence, sample_paragraphs, CorpusStats, DedupIndex, Deduplicator, Fingerprint,
    RecordSplitter, SentenceRecord,
};
use corpuskit_core::tokenizer::{PreTokenizerConfig, WordCounts};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::input::{blocks, Block, BlockReader};

type Normalized = Option<(SentenceRecord, Fingerprint)>;

pub struct Pipeline {
    pool: rayon::ThreadPool,
    threads: usize,
}

impl Pipeline {
    pub fn new(threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {threads} worker threads: {e}")))?;
        Ok(Self { pool, threads })
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    fn read_batch(&self, reader: &mut BlockReader<File>, path: &Path) -> Result<Vec<Block>> {
        read_batch(reader, path, self.threads)
    }

    /// Normalized records of a corpus file in file order, prepared on the pool.
    pub fn records<'a>(&'a self, path: &Path) -> Result<RecordStream<'a>> {
        RecordStream::open(path, Some(self))
    }

    /// Folds the reference corpora, in precedence order, into one index.
    /// Shards are filled concurrently, each by a single worker.
    pub fn build_index(&self, references: &[PathBuf], shard_count: usize) -> Result<DedupIndex> {
        let mut index = DedupIndex::new(shard_count)?;
        for path in references {
            index.add_source(corpus_name(path));
            let mut reader = blocks(path)?;
            loop {
                let batch = self.read_batch(&mut reader, path)?;
                if batch.is_empty() {
                    break;
                }
                let bucketed: Vec<Vec<Vec<Fingerprint>>> = self.pool.install(|| {
                    batch
                        .par_iter()
                        .map(|block| bucket_fingerprints(block, &index))
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|e| CliError::input(path, e))
                })?;
                self.pool.install(|| {
                    index.shards_mut().par_iter_mut().enumerate().for_each(|(shard, set)| {
                        for buckets in &bucketed {
                            set.extend(buckets[shard].iter().copied());
                        }
                    });
                });
            }
        }
        Ok(index)
    }

    /// Filters `input` against `index`, writing kept sentences to `output`.
    /// Document breaks are carried over to the next kept sentence.
    pub fn dedup_file(
        &self,
        input: &Path,
        output: &Path,
        index: &DedupIndex,
        within: bool,
        name: &str,
        language: &str,
    ) -> Result<CorpusStats> {
        let file = File::create(output).map_err(|e| CliError::io(output, e))?;
        let mut out = BufWriter::with_capacity(1 << 20, file);
        let mut dedup = Deduplicator::new(index, within);
        let mut wrote_any = false;
        let mut pending_break = false;
        for item in self.records(input)? {
            let (record, fp) = item?;
            pending_break |= record.doc_boundary();
            if dedup.admit_fingerprint(fp, record.word_count()) {
                let io = |e| CliError::io(output, e);
                if pending_break && wrote_any {
                    out.write_all(b"\n").map_err(io)?;
                }
                out.write_all(record.text().as_bytes()).map_err(io)?;
                out.write_all(b"\n").map_err(io)?;
                wrote_any = true;
                pending_break = false;
            }
        }
        out.flush().map_err(|e| CliError::io(output, e))?;
        Ok(dedup.stats(name, language))
    }
}

/// Normalized records of a corpus file in file order, on the calling thread.
pub fn records(path: &Path) -> Result<RecordStream<'static>> {
    RecordStream::open(path, None)
}

pub fn stats_file(input: &Path, name: &str, language: &str) -> Result<CorpusStats> {
    let mut words = 0u64;
    let mut sentences = 0u64;
    for item in records(input)? {
        let (record, _) = item?;
        words += record.word_count();
        sentences += 1;
    }
    Ok(CorpusStats::new(name, language, words, sentences, 0))
}

/// Uniform sample of `k` paragraphs, returned in file order.
pub fn sample_file(input: &Path, k: usize, seed: u64) -> Result<Vec<String>> {
    let mut failure = None;
    let stream = records(input)?.map_while(|item| match item {
        Ok((record, _)) => Some(record),
        Err(e) => {
            failure = Some(e);
            None
        }
    });
    let sample = sample_paragraphs(stream, k, seed)?;
    match failure {
        Some(e) => Err(e),
        None => Ok(sample),
    }
}

/// Word-type counts for vocabulary training.
pub fn word_counts(input: &Path, config: &PreTokenizerConfig) -> Result<WordCounts> {
    let mut counts = WordCounts::new();
    for block in blocks(input)? {
        let block = block.map_err(|e| CliError::io(input, e))?;
        for (offset, line) in block.lines() {
            let text = decode_line(line, offset).map_err(|e| CliError::input(input, e))?;
            counts.add_text(text, config);
        }
    }
    Ok(counts)
}

fn read_batch(reader: &mut BlockReader<File>, path: &Path, width: usize) -> Result<Vec<Block>> {
    let mut batch = Vec::with_capacity(width);
    for block in reader.by_ref().take(width) {
        batch.push(block.map_err(|e| CliError::io(path, e))?);
    }
    Ok(batch)
}

fn normalize_block(block: &Block) -> corpuskit_core::Result<Vec<Normalized>> {
    block
        .lines()
        .map(|(offset, line)| {
            let text = decode_line(line, offset)?;
            Ok(normalize_sentence(text).map(|rec| {
                let fp = Fingerprint::of(rec.text());
                (rec, fp)
            }))
        })
        .collect()
}

fn bucket_fingerprints(block: &Block, index: &DedupIndex) -> corpuskit_core::Result<Vec<Vec<Fingerprint>>> {
    let mut buckets = vec![Vec::new(); index.shard_count()];
    for (offset, line) in block.lines() {
        let text = decode_line(line, offset)?;
        if let Some(rec) = normalize_sentence(text) {
            let fp = Fingerprint::of(rec.text());
            buckets[index.shard_of(fp)].push(fp);
        }
    }
    Ok(buckets)
}

/// File stem used as the corpus name in index sources and stats.
pub fn corpus_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub struct RecordStream<'a> {
    pipeline: Option<&'a Pipeline>,
    path: PathBuf,
    reader: BlockReader<File>,
    queue: VecDeque<Normalized>,
    splitter: RecordSplitter,
    finished: bool,
}

impl<'a> RecordStream<'a> {
    fn open(path: &Path, pipeline: Option<&'a Pipeline>) -> Result<Self> {
        Ok(RecordStream {
            pipeline,
            path: path.to_path_buf(),
            reader: blocks(path)?,
            queue: VecDeque::new(),
            splitter: RecordSplitter::new(),
            finished: false,
        })
    }

    fn refill(&mut self) -> Result<()> {
        let width = self.pipeline.map_or(1, |p| p.threads);
        let batch = read_batch(&mut self.reader, &self.path, width)?;
        if batch.is_empty() {
            self.finished = true;
            return Ok(());
        }
        let processed: Vec<Vec<Normalized>> = match self.pipeline {
            Some(p) => p.pool.install(|| {
                batch
                    .par_iter()
                    .map(normalize_block)
                    .collect::<std::result::Result<_, _>>()
            }),
            None => batch.iter().map(normalize_block).collect(),
        }
        .map_err(|e| CliError::input(&self.path, e))?;
        self.queue.extend(processed.into_iter().flatten());
        Ok(())
    }
}

impl Iterator for RecordStream<'_> {
    type Item = Result<(SentenceRecord, Fingerprint)>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(line) = self.queue.pop_front() {
                match line {
                    None => {
                        self.splitter.push_normalized(None);
                    }
                    Some((rec, fp)) => {
                        let rec = self
                            .splitter
                            .push_normalized(Some(rec))
                            .expect("non-blank line yields a record");
                        return Some(Ok((rec, fp)));
                    }
                }
                continue;
            }
            if self.finished {
                return None;
            }
            if let Err(e) = self.refill() {
                self.finished = true;
                return Some(Err(e));
            }
        }
    }
}
