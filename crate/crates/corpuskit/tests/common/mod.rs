//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_corpuskit"))
}

pub fn run(args: &[&str]) -> Output {
    bin()
        .args(args)
        .env_remove("CORPUSKIT_THREADS")
        .output()
        .expect("spawn corpuskit")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SYLLABLES: [&str; 32] = [
    "ba", "če", "di", "đo", "fu", "ga", "he", "ji", "ko", "lu", "ma", "ne", "nj", "po", "ra", "si", "ša", "te", "ću",
    "va", "ze", "žo", "lji", "gr", "sto", "pre", "kra", "vlo", "dže", "mi", "na", "ri",
];

/// A word that encodes `n` in base 32 syllables, so distinct ids give
/// distinct words.
pub fn id_word(mut n: u64) -> String {
    let mut w = String::new();
    loop {
        w.push_str(SYLLABLES[(n % 32) as usize]);
        n /= 32;
        if n == 0 {
            break;
        }
    }
    w
}

/// Sentence number `id`: a unique head word plus filler words from `rng`.
pub fn sentence(id: u64, rng: &mut ChaCha8Rng) -> String {
    let mut out = id_word(id);
    if let Some(c) = out.get_mut(0..1) {
        c.make_ascii_uppercase();
    }
    let words = rng.random_range(8..16);
    for _ in 0..words {
        out.push(' ');
        out.push_str(&id_word(rng.random_range(0..4096)));
    }
    out.push('.');
    out
}

pub struct ScaleCorpora {
    pub reference: PathBuf,
    pub input: PathBuf,
    pub input_sentences: u64,
    pub planted: u64,
}

/// Writes a reference corpus and an input corpus of roughly `bytes` each.
/// Every 20 input sentences, 3 are reference sentences with their
/// whitespace disturbed, so the planted overlap is exactly 15%.
pub fn scale_corpora(dir: &Path, bytes: u64, seed: u64) -> ScaleCorpora {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reference = dir.join("reference.txt");
    let input = dir.join("input.txt");

    let mut w = BufWriter::with_capacity(1 << 20, File::create(&reference).unwrap());
    let mut written = 0u64;
    let mut ref_count = 0u64;
    while written < bytes {
        let line = sentence(ref_count, &mut rng);
        written += line.len() as u64 + 1;
        writeln!(w, "{line}").unwrap();
        ref_count += 1;
        if ref_count.is_multiple_of(25) {
            writeln!(w).unwrap();
            written += 1;
        }
    }
    w.flush().unwrap();

    // Reference sentences are regenerated from the same stream to plant copies.
    let mut replay = ChaCha8Rng::seed_from_u64(seed);
    let mut next_ref = 0u64;
    let mut w = BufWriter::with_capacity(1 << 20, File::create(&input).unwrap());
    let mut written = 0u64;
    let mut count = 0u64;
    let mut planted = 0u64;
    let mut fresh_id = ref_count;
    while written < bytes || !count.is_multiple_of(20) {
        let line = if count % 20 < 3 && next_ref < ref_count {
            let mut copy = sentence(next_ref, &mut replay);
            next_ref += 1;
            // Skip some reference sentences so copies spread over the file.
            if next_ref < ref_count {
                let _ = sentence(next_ref, &mut replay);
                next_ref += 1;
            }
            planted += 1;
            copy = copy.replacen(' ', "  ", 1);
            format!(" {copy}\t")
        } else {
            fresh_id += 1;
            sentence(fresh_id, &mut rng)
        };
        written += line.len() as u64 + 1;
        writeln!(w, "{line}").unwrap();
        count += 1;
        if count.is_multiple_of(30) {
            writeln!(w).unwrap();
            written += 1;
        }
    }
    w.flush().unwrap();
    ScaleCorpora {
        reference,
        input,
        input_sentences: count,
        planted,
    }
}

/// Peak resident set size, in bytes, of the largest child waited for so far.
pub fn children_peak_rss() -> u64 {
    let mut usage: libc::rusage = unsafe { std::mem::zeroed() };
    let rc = unsafe { libc::getrusage(libc::RUSAGE_CHILDREN, &mut usage) };
    assert_eq!(rc, 0);
    usage.ru_maxrss as u64 * 1024
}
