//! WordPiece vocabulary training.
//!
//! Words start as single characters (`c` word-initially, `##c` elsewhere).
//! Each round merges the adjacent pair with the highest likelihood score
//! `freq(pair) / (freq(left) * freq(right))`, ties going to the
//! lexicographically smallest merged string. Pair frequencies count every
//! adjacent position, overlapping ones included; a merge rewrites each word
//! left to right without overlap.
//!
//! Scores are kept in a lazy max-heap. Every heap entry records the three
//! counts it was scored with and is only trusted when they still match, and
//! every change to a pair's counts (including its symbols' totals) pushes a
//! fresh entry, so the top valid entry is always the true maximum.

use alloc::collections::BinaryHeap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use hashbrown::{HashMap, HashSet};

use super::{pre_tokenize, PreTokenizerConfig, Vocabulary, CONTINUATION_PREFIX, MAX_WORD_CHARS};
use crate::{Error, Result};

/// Word-type frequencies after pre-tokenization.
///
/// Counting is associative, so large inputs can be counted per partition and
/// combined with [`merge`](Self::merge).
#[derive(Debug, Clone, Default)]
pub struct WordCounts {
    counts: HashMap<String, u64>,
}

impl WordCounts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_text(&mut self, text: &str, config: &PreTokenizerConfig) {
        for word in pre_tokenize(text, config) {
            *self.counts.entry(word).or_insert(0) += 1;
        }
    }

    pub fn add_word(&mut self, word: &str, count: u64) {
        *self.counts.entry_ref(word).or_insert(0) += count;
    }

    pub fn merge(&mut self, other: WordCounts) {
        for (w, c) in other.counts {
            *self.counts.entry(w).or_insert(0) += c;
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    fn into_sorted(self) -> Vec<(String, u64)> {
        let mut v: Vec<_> = self.counts.into_iter().collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordPieceTrainer {
    pub vocab_size: usize,
    pub min_frequency: u64,
    pub special_tokens: Vec<String>,
}

impl WordPieceTrainer {
    pub fn new(vocab_size: usize) -> Self {
        Self {
            vocab_size,
            min_frequency: 2,
            special_tokens: super::default_special_tokens(),
        }
    }

    pub fn min_frequency(mut self, min_frequency: u64) -> Self {
        self.min_frequency = min_frequency;
        self
    }

    pub fn special_tokens(mut self, tokens: Vec<String>) -> Self {
        self.special_tokens = tokens;
        self
    }

    pub fn train(&self, counts: WordCounts) -> Result<TrainedWordPiece> {
        if self.min_frequency == 0 {
            return Err(Error::arg("min_frequency must be at least 1"));
        }
        let mut state = MergeState::new(counts.into_sorted());
        let mut alphabet: Vec<String> = state.symbols.clone();
        alphabet.sort_unstable();

        let budget = self.special_tokens.len() + alphabet.len();
        if self.vocab_size < budget {
            return Err(Error::arg(alloc::format!(
                "vocab_size {} cannot hold {} special tokens plus an alphabet of {}",
                self.vocab_size,
                self.special_tokens.len(),
                alphabet.len()
            )));
        }

        let mut present: HashSet<String> = self.special_tokens.iter().cloned().collect();
        present.extend(alphabet.iter().cloned());
        let mut learned = alphabet;
        let mut merges = Vec::new();
        let mut size = budget;

        state.seed_heap(self.min_frequency);
        while size < self.vocab_size {
            let Some((left, right)) = state.pop_best(self.min_frequency) else {
                break;
            };
            let merged = state.merge(left, right, self.min_frequency);
            let name = state.symbols[merged as usize].clone();
            merges.push((
                state.symbols[left as usize].clone(),
                state.symbols[right as usize].clone(),
            ));
            if present.insert(name.clone()) {
                learned.push(name);
                size += 1;
            }
        }

        let vocabulary = Vocabulary::new(self.special_tokens.clone(), learned)?;
        Ok(TrainedWordPiece { vocabulary, merges })
    }
}

#[derive(Debug, Clone)]
pub struct TrainedWordPiece {
    pub vocabulary: Vocabulary,
    /// Applied merges as (left, right) token strings, in order.
    pub merges: Vec<(String, String)>,
}

/// Trains on raw paragraphs with the given settings.
pub fn train_wordpiece<S: AsRef<str>>(
    paragraphs: &[S],
    vocab_size: usize,
    config: &PreTokenizerConfig,
    min_frequency: u64,
) -> Result<Vocabulary> {
    train_wordpiece_with_merges(paragraphs, vocab_size, config, min_frequency).map(|t| t.vocabulary)
}

pub fn train_wordpiece_with_merges<S: AsRef<str>>(
    paragraphs: &[S],
    vocab_size: usize,
    config: &PreTokenizerConfig,
    min_frequency: u64,
) -> Result<TrainedWordPiece> {
    let mut counts = WordCounts::new();
    for p in paragraphs {
        counts.add_text(p.as_ref(), config);
    }
    WordPieceTrainer::new(vocab_size)
        .min_frequency(min_frequency)
        .train(counts)
}

pub fn merged_token(left: &str, right: &str) -> String {
    let mut s = String::with_capacity(left.len() + right.len());
    s.push_str(left);
    s.push_str(right.strip_prefix(CONTINUATION_PREFIX).unwrap_or(right));
    s
}

type Pair = (u32, u32);

struct Word {
    symbols: Vec<u32>,
    count: u64,
}

#[derive(Debug)]
struct Candidate {
    pair: Pair,
    pair_freq: u64,
    left_freq: u64,
    right_freq: u64,
    merged: String,
    left_len: usize,
}

impl Candidate {
    /// Compares pair_freq / (left_freq * right_freq) exactly.
    fn cmp_score(&self, other: &Self) -> Ordering {
        let lhs = u128::from(self.pair_freq).checked_mul(u128::from(other.left_freq) * u128::from(other.right_freq));
        let rhs = u128::from(other.pair_freq).checked_mul(u128::from(self.left_freq) * u128::from(self.right_freq));
        match (lhs, rhs) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => {
                let a = self.pair_freq as f64 / (self.left_freq as f64 * self.right_freq as f64);
                let b = other.pair_freq as f64 / (other.left_freq as f64 * other.right_freq as f64);
                a.partial_cmp(&b).unwrap_or(Ordering::Equal)
            }
        }
    }
}

// Greater = better: higher score, then smaller merged string, then smaller left.
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_score(other)
            .then_with(|| other.merged.cmp(&self.merged))
            .then_with(|| other.left_len.cmp(&self.left_len))
            .then_with(|| other.pair.cmp(&self.pair))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

struct MergeState {
    symbols: Vec<String>,
    symbol_ids: HashMap<String, u32>,
    symbol_freq: Vec<u64>,
    words: Vec<Word>,
    pair_freq: HashMap<Pair, u64>,
    pair_words: HashMap<Pair, HashSet<u32>>,
    symbol_pairs: Vec<HashSet<Pair>>,
    heap: BinaryHeap<Candidate>,
}

impl MergeState {
    fn new(word_counts: Vec<(String, u64)>) -> Self {
        let mut state = Self {
            symbols: Vec::new(),
            symbol_ids: HashMap::new(),
            symbol_freq: Vec::new(),
            words: Vec::new(),
            pair_freq: HashMap::new(),
            pair_words: HashMap::new(),
            symbol_pairs: Vec::new(),
            heap: BinaryHeap::new(),
        };
        let mut piece = String::new();
        for (word, count) in word_counts {
            if word.chars().count() > MAX_WORD_CHARS {
                continue;
            }
            let mut symbols = Vec::new();
            for (i, c) in word.chars().enumerate() {
                piece.clear();
                if i > 0 {
                    piece.push_str(CONTINUATION_PREFIX);
                }
                piece.push(c);
                let id = state.intern(&piece);
                symbols.push(id);
            }
            if symbols.is_empty() {
                continue;
            }
            let w = state.words.len() as u32;
            for &s in &symbols {
                state.symbol_freq[s as usize] += count;
            }
            for pair in symbols.windows(2).map(|p| (p[0], p[1])) {
                *state.pair_freq.entry(pair).or_insert(0) += count;
                state.pair_words.entry(pair).or_default().insert(w);
                state.symbol_pairs[pair.0 as usize].insert(pair);
                state.symbol_pairs[pair.1 as usize].insert(pair);
            }
            state.words.push(Word { symbols, count });
        }
        state
    }

    fn intern(&mut self, token: &str) -> u32 {
        if let Some(&id) = self.symbol_ids.get(token) {
            return id;
        }
        let id = self.symbols.len() as u32;
        self.symbols.push(String::from(token));
        self.symbol_ids.insert(String::from(token), id);
        self.symbol_freq.push(0);
        self.symbol_pairs.push(HashSet::new());
        id
    }

    fn push_candidate(&mut self, pair: Pair, min_frequency: u64) {
        let pair_freq = self.pair_freq.get(&pair).copied().unwrap_or(0);
        if pair_freq == 0 || pair_freq < min_frequency {
            return;
        }
        let left = &self.symbols[pair.0 as usize];
        let right = &self.symbols[pair.1 as usize];
        self.heap.push(Candidate {
            pair,
            pair_freq,
            left_freq: self.symbol_freq[pair.0 as usize],
            right_freq: self.symbol_freq[pair.1 as usize],
            merged: merged_token(left, right),
            left_len: left.len(),
        });
    }

    fn seed_heap(&mut self, min_frequency: u64) {
        let mut pairs: Vec<Pair> = self.pair_freq.keys().copied().collect();
        pairs.sort_unstable();
        for pair in pairs {
            self.push_candidate(pair, min_frequency);
        }
    }

    fn pop_best(&mut self, min_frequency: u64) -> Option<Pair> {
        while let Some(c) = self.heap.pop() {
            let current = self.pair_freq.get(&c.pair).copied().unwrap_or(0);
            if current == c.pair_freq
                && current >= min_frequency
                && self.symbol_freq[c.pair.0 as usize] == c.left_freq
                && self.symbol_freq[c.pair.1 as usize] == c.right_freq
            {
                return Some(c.pair);
            }
        }
        None
    }

    /// Applies the merge to every word containing the pair and rescores
    /// whatever the merge touched. Returns the merged symbol id.
    fn merge(&mut self, left: u32, right: u32, min_frequency: u64) -> u32 {
        let name = merged_token(&self.symbols[left as usize], &self.symbols[right as usize]);
        let merged = self.intern(&name);
        let mut affected: Vec<u32> = self
            .pair_words
            .get(&(left, right))
            .map(|ws| ws.iter().copied().collect())
            .unwrap_or_default();
        affected.sort_unstable();

        let mut touched_pairs: HashSet<Pair> = HashSet::new();
        for w in affected {
            let word = &self.words[w as usize];
            let count = word.count;
            let old = word.symbols.clone();
            let mut new = Vec::with_capacity(old.len());
            let mut i = 0;
            while i < old.len() {
                if i + 1 < old.len() && old[i] == left && old[i + 1] == right {
                    new.push(merged);
                    i += 2;
                } else {
                    new.push(old[i]);
                    i += 1;
                }
            }
            if new.len() == old.len() {
                continue;
            }
            for &s in &old {
                self.symbol_freq[s as usize] -= count;
            }
            for &s in &new {
                self.symbol_freq[s as usize] += count;
            }
            for pair in old.windows(2).map(|p| (p[0], p[1])) {
                if let Some(f) = self.pair_freq.get_mut(&pair) {
                    *f -= count;
                }
                touched_pairs.insert(pair);
            }
            for pair in new.windows(2).map(|p| (p[0], p[1])) {
                *self.pair_freq.entry(pair).or_insert(0) += count;
                self.pair_words.entry(pair).or_default().insert(w);
                self.symbol_pairs[pair.0 as usize].insert(pair);
                self.symbol_pairs[pair.1 as usize].insert(pair);
                touched_pairs.insert(pair);
            }
            // stale word links only cost a skipped rewrite later
            self.words[w as usize].symbols = new;
        }
        self.pair_freq.retain(|_, f| *f > 0);

        // every pair whose own count or either symbol total moved gets rescored
        for s in [left, right, merged] {
            let pairs: Vec<Pair> = self.symbol_pairs[s as usize].iter().copied().collect();
            let live: Vec<Pair> = pairs.into_iter().filter(|p| self.pair_freq.contains_key(p)).collect();
            self.symbol_pairs[s as usize] = live.iter().copied().collect();
            touched_pairs.extend(live);
        }
        let mut touched: Vec<Pair> = touched_pairs.into_iter().collect();
        touched.sort_unstable();
        for pair in touched {
            self.push_candidate(pair, min_frequency);
        }
        merged
    }
}
