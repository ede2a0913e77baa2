use alloc::format;
use alloc::string::{String, ToString};

use crate::report::{fixed, group_digits};

/// Per-corpus counts after deduplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusStats {
    pub name: String,
    pub language: String,
    /// Words in the kept sentences.
    pub word_count: u64,
    /// Kept sentences.
    pub sentence_count: u64,
    pub removed_count: u64,
}

impl CorpusStats {
    pub fn new(name: &str, language: &str, word_count: u64, sentence_count: u64, removed_count: u64) -> Self {
        Self {
            name: name.to_string(),
            language: language.to_string(),
            word_count,
            sentence_count,
            removed_count,
        }
    }

    /// removed / (kept + removed), 0 for an empty corpus.
    pub fn removed_fraction(&self) -> f64 {
        let total = self.sentence_count + self.removed_count;
        if total == 0 {
            0.0
        } else {
            self.removed_count as f64 / total as f64
        }
    }

    pub const TSV_HEADER: &'static str = "name\tlanguage\tword_count\tsentence_count\tremoved_count\tremoved_fraction";

    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.name,
            self.language,
            self.word_count,
            self.sentence_count,
            self.removed_count,
            fixed(self.removed_fraction(), 6)
        )
    }
}

/// Dataset table with a totals row, rows in input order.
pub fn manifest_report(stats: &[CorpusStats], group: bool) -> String {
    let render = |n: u64| if group { group_digits(n) } else { n.to_string() };
    let mut out = String::from("dataset\tlanguage\tword_count\n");
    let mut total = 0u64;
    for s in stats {
        total += s.word_count;
        out.push_str(&format!("{}\t{}\t{}\n", s.name, s.language, render(s.word_count)));
    }
    out.push_str(&format!("total\t\t{}\n", render(total)));
    out
}
