use alloc::string::String;
use alloc::vec::Vec;
use core::hash::{BuildHasher, Hasher};

use hashbrown::HashSet;

use super::SentenceRecord;
use crate::{Error, Result};

pub const DEFAULT_SHARDS: usize = 256;

/// 128-bit xxh3 fingerprint of a normalized sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub u128);

impl Fingerprint {
    pub fn of(text: &str) -> Self {
        Fingerprint(xxhash_rust::xxh3::xxh3_128(text.as_bytes()))
    }

    fn high(self) -> u64 {
        (self.0 >> 64) as u64
    }
}

/// Fingerprints are already uniformly mixed; the set hashes with the low word.
#[derive(Debug, Clone, Copy, Default)]
pub struct PassThrough;

#[derive(Debug, Default)]
pub struct PassThroughHasher(u64);

impl Hasher for PassThroughHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = self.0.rotate_left(8) ^ u64::from(b);
        }
    }

    fn write_u128(&mut self, v: u128) {
        self.0 = v as u64;
    }
}

impl BuildHasher for PassThrough {
    type Hasher = PassThroughHasher;

    fn build_hasher(&self) -> PassThroughHasher {
        PassThroughHasher(0)
    }
}

pub type FingerprintSet = HashSet<Fingerprint, PassThrough>;

/// Sharded set of sentence fingerprints.
///
/// Shards are selected by the high 64 bits of the fingerprint, so distinct
/// shards can be filled from different threads through
/// [`shards_mut`](Self::shards_mut). Once built the index is only read.
#[derive(Debug, Clone)]
pub struct DedupIndex {
    shards: Vec<FingerprintSet>,
    sources: Vec<String>,
}

impl Default for DedupIndex {
    fn default() -> Self {
        Self::new(DEFAULT_SHARDS).expect("default shard count is positive")
    }
}

impl DedupIndex {
    pub fn new(shard_count: usize) -> Result<Self> {
        if shard_count == 0 {
            return Err(Error::arg("shard count must be positive"));
        }
        Ok(Self {
            shards: (0..shard_count)
                .map(|_| FingerprintSet::with_hasher(PassThrough))
                .collect(),
            sources: Vec::new(),
        })
    }

    pub fn shard_count(&self) -> usize {
        self.shards.len()
    }

    /// Shard holding `fp`: multiply-shift over the high word, uniform for any
    /// shard count.
    pub fn shard_of(&self, fp: Fingerprint) -> usize {
        ((u128::from(fp.high()) * self.shards.len() as u128) >> 64) as usize
    }

    /// Returns true when the fingerprint was not yet present.
    pub fn insert(&mut self, fp: Fingerprint) -> bool {
        let shard = self.shard_of(fp);
        self.shards[shard].insert(fp)
    }

    pub fn insert_text(&mut self, text: &str) -> bool {
        self.insert(Fingerprint::of(text))
    }

    pub fn contains(&self, fp: Fingerprint) -> bool {
        self.shards[self.shard_of(fp)].contains(&fp)
    }

    pub fn contains_text(&self, text: &str) -> bool {
        self.contains(Fingerprint::of(text))
    }

    pub fn len(&self) -> usize {
        self.shards.iter().map(HashSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.shards.iter().all(HashSet::is_empty)
    }

    /// Disjoint shard sets for parallel filling. A fingerprint must only be
    /// inserted into `shards_mut()[shard_of(fp)]`.
    pub fn shards_mut(&mut self) -> &mut [FingerprintSet] {
        &mut self.shards
    }

    pub fn add_source(&mut self, name: impl Into<String>) {
        self.sources.push(name.into());
    }

    /// Names of the corpora folded into the index, in precedence order.
    pub fn sources(&self) -> &[String] {
        &self.sources
    }
}

/// Builds an index over every sentence of the reference corpora, given in
/// precedence order as `(name, records)` pairs.
pub fn build_dedup_index<N, I>(
    reference_corpora: impl IntoIterator<Item = (N, I)>,
    shard_count: usize,
) -> Result<DedupIndex>
where
    N: Into<String>,
    I: IntoIterator<Item = SentenceRecord>,
{
    let mut index = DedupIndex::new(shard_count)?;
    for (name, records) in reference_corpora {
        index.add_source(name);
        for rec in records {
            index.insert_text(rec.text());
        }
    }
    Ok(index)
}
