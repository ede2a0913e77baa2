//! Sentence-level corpus preparation.
//!
//! A corpus is a stream of lines: one sentence per line, blank lines marking
//! document (paragraph) boundaries. Lines are normalized into
//! [`SentenceRecord`]s, fingerprinted, and filtered against a [`DedupIndex`]
//! built from every higher-precedence corpus.

mod dedup;
mod index;
mod normalize;
mod sample;
mod stats;

pub use dedup::{dedup_corpus, Deduplicator};
pub use index::{build_dedup_index, DedupIndex, Fingerprint, FingerprintSet, DEFAULT_SHARDS};
pub use normalize::{count_words, decode_line, normalize_sentence, RecordSplitter, SentenceRecord};
pub use sample::{sample_paragraphs, Paragraphs, ReservoirSampler};
pub use stats::{manifest_report, CorpusStats};
