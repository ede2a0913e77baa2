use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SentenceRecord;
use crate::{Error, Result};

/// Uniform sample of at most `k` items from a stream (Algorithm R).
///
/// Draws exactly one random number per item past the `k`-th, so the sample
/// depends only on the item sequence and the seed.
#[derive(Debug, Clone)]
pub struct ReservoirSampler<T> {
    k: usize,
    seen: u64,
    slots: Vec<(u64, T)>,
    rng: ChaCha8Rng,
}

impl<T> ReservoirSampler<T> {
    pub fn new(k: usize, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::arg("sample size k must be at least 1"));
        }
        Ok(Self {
            k,
            seen: 0,
            slots: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn push(&mut self, item: T) {
        let pos = self.seen;
        self.seen += 1;
        if self.slots.len() < self.k {
            self.slots.push((pos, item));
            return;
        }
        let j = self.rng.random_range(0..=pos);
        if (j as usize) < self.k {
            self.slots[j as usize] = (pos, item);
        }
    }

    pub fn seen(&self) -> u64 {
        self.seen
    }

    /// Sampled items in stream order.
    pub fn into_sorted(mut self) -> Vec<T> {
        self.slots.sort_unstable_by_key(|(pos, _)| *pos);
        self.slots.into_iter().map(|(_, item)| item).collect()
    }
}

/// Groups records into paragraphs at document boundaries. Each paragraph is
/// its sentences joined by `\n`.
#[derive(Debug)]
pub struct Paragraphs<I> {
    records: I,
    current: String,
}

impl<I: Iterator<Item = SentenceRecord>> Paragraphs<I> {
    pub fn new(records: I) -> Self {
        Self {
            records,
            current: String::new(),
        }
    }
}

impl<I: Iterator<Item = SentenceRecord>> Iterator for Paragraphs<I> {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        for rec in self.records.by_ref() {
            if rec.doc_boundary() && !self.current.is_empty() {
                let done = core::mem::take(&mut self.current);
                self.current.push_str(rec.text());
                return Some(done);
            }
            if !self.current.is_empty() {
                self.current.push('\n');
            }
            self.current.push_str(rec.text());
        }
        if self.current.is_empty() {
            None
        } else {
            Some(core::mem::take(&mut self.current))
        }
    }
}

/// Samples `k` paragraphs uniformly without replacement in one pass; returns
/// every paragraph when there are at most `k`.
pub fn sample_paragraphs<I>(records: I, k: usize, seed: u64) -> Result<Vec<String>>
where
    I: IntoIterator<Item = SentenceRecord>,
{
    let mut sampler = ReservoirSampler::new(k, seed)?;
    for p in Paragraphs::new(records.into_iter()) {
        sampler.push(p);
    }
    Ok(sampler.into_sorted())
}
