use alloc::vec::Vec;

use super::index::PassThrough;
use super::{CorpusStats, DedupIndex, Fingerprint, FingerprintSet, SentenceRecord};

/// Streaming filter of one corpus against a frozen [`DedupIndex`].
///
/// A sentence is kept iff its fingerprint is absent from the index and, when
/// within-corpus removal is enabled, it has not already been kept from this
/// input. Input sentences never enter the shared index.
#[derive(Debug)]
pub struct Deduplicator<'a> {
    index: &'a DedupIndex,
    seen: Option<FingerprintSet>,
    kept: u64,
    removed: u64,
    words: u64,
}

impl<'a> Deduplicator<'a> {
    pub fn new(index: &'a DedupIndex, within: bool) -> Self {
        Self {
            index,
            seen: within.then(|| FingerprintSet::with_hasher(PassThrough)),
            kept: 0,
            removed: 0,
            words: 0,
        }
    }

    /// Decides one sentence by fingerprint; `words` is its word count and is
    /// only accumulated when the sentence is kept.
    pub fn admit_fingerprint(&mut self, fp: Fingerprint, words: u64) -> bool {
        let keep = !self.index.contains(fp) && self.seen.as_mut().is_none_or(|seen| seen.insert(fp));
        if keep {
            self.kept += 1;
            self.words += words;
        } else {
            self.removed += 1;
        }
        keep
    }

    pub fn admit(&mut self, record: &SentenceRecord) -> bool {
        self.admit_fingerprint(Fingerprint::of(record.text()), record.word_count())
    }

    pub fn kept(&self) -> u64 {
        self.kept
    }

    pub fn removed(&self) -> u64 {
        self.removed
    }

    /// Counts so far, with word counts over the kept sentences.
    pub fn stats(&self, name: &str, language: &str) -> CorpusStats {
        CorpusStats::new(name, language, self.words, self.kept, self.removed)
    }
}

/// In-memory convenience over [`Deduplicator`]: returns the kept records in
/// input order along with the counts.
pub fn dedup_corpus<I>(input: I, index: &DedupIndex, within: bool) -> (Vec<SentenceRecord>, CorpusStats)
where
    I: IntoIterator<Item = SentenceRecord>,
{
    let mut dedup = Deduplicator::new(index, within);
    let kept: Vec<_> = input.into_iter().filter(|r| dedup.admit(r)).collect();
    let stats = dedup.stats("", "");
    (kept, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_dedup_index, normalize_sentence};
    use alloc::string::String;
    use alloc::vec;

    fn recs(lines: &[&str]) -> Vec<SentenceRecord> {
        lines.iter().filter_map(|l| normalize_sentence(l)).collect()
    }

    fn texts(r: &[SentenceRecord]) -> Vec<&str> {
        r.iter().map(SentenceRecord::text).collect()
    }

    #[test]
    fn removes_reference_sentences() {
        let idx = build_dedup_index(vec![("ref", recs(&["s1", "s2", "s3"]))], 16).unwrap();
        let (out, stats) = dedup_corpus(recs(&["s2", "s4"]), &idx, false);
        assert_eq!(texts(&out), ["s4"]);
        assert_eq!(stats.removed_fraction(), 0.5);
    }

    #[test]
    fn within_removes_repeats_after_first() {
        let idx = DedupIndex::default();
        let (out, stats) = dedup_corpus(recs(&["a", "b", "a"]), &idx, true);
        assert_eq!(texts(&out), ["a", "b"]);
        assert_eq!((stats.sentence_count, stats.removed_count), (2, 1));
        let (out, _) = dedup_corpus(recs(&["a", "b", "a"]), &idx, false);
        assert_eq!(texts(&out), ["a", "b", "a"]);
    }

    #[test]
    fn input_does_not_leak_into_index() {
        let idx = build_dedup_index(vec![("ref", recs(&["x"]))], 4).unwrap();
        let _ = dedup_corpus(recs(&["y", "y"]), &idx, true);
        assert_eq!(idx.len(), 1);
    }

    #[test]
    fn whitespace_variants_are_identical() {
        let idx = build_dedup_index(vec![("ref", recs(&["Dobar  dan"]))], 4).unwrap();
        let (out, _) = dedup_corpus(recs(&[" Dobar dan ", "dobar dan"]), &idx, false);
        assert_eq!(texts(&out), ["dobar dan"]);
    }

    #[test]
    fn fifteen_percent_planted_overlap() {
        // 10,000 sentences, exactly 1,500 of them copied from the reference
        let reference: Vec<String> = (0..5000).map(|i| alloc::format!("ref sentence {i}")).collect();
        let mut input = Vec::new();
        for i in 0..10_000usize {
            if i % 20 < 3 {
                input.push(reference[(i * 7) % 5000].clone());
            } else {
                input.push(alloc::format!("fresh sentence {i}"));
            }
        }
        let planted = input.iter().filter(|s| s.starts_with("ref")).count();
        assert_eq!(planted, 1500);
        let idx = build_dedup_index(
            vec![(
                "ref",
                reference
                    .iter()
                    .filter_map(|s| normalize_sentence(s))
                    .collect::<Vec<_>>(),
            )],
            256,
        )
        .unwrap();
        let (out, stats) = dedup_corpus(input.iter().filter_map(|s| normalize_sentence(s)), &idx, false);
        assert_eq!(out.len(), 8500);
        assert_eq!(stats.removed_fraction(), 0.15);
    }
}
