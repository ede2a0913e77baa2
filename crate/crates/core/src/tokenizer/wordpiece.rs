use alloc::string::String;
use alloc::vec::Vec;

use super::{pre_tokenize, PreTokenizerConfig, Vocabulary, CONTINUATION_PREFIX};
use crate::{Error, Result};

/// Longer surface tokens are encoded as `[UNK]` without a scan.
pub const MAX_WORD_CHARS: usize = 100;

/// Greedy longest-match pieces for one surface token, or `None` when some
/// position has no matching piece.
pub fn encode_word(word: &str, vocab: &Vocabulary) -> Option<Vec<u32>> {
    let bounds: Vec<usize> = word
        .char_indices()
        .map(|(i, _)| i)
        .chain(core::iter::once(word.len()))
        .collect();
    let n_chars = bounds.len() - 1;
    if n_chars == 0 || n_chars > MAX_WORD_CHARS {
        return None;
    }
    let mut pieces = Vec::new();
    let mut candidate = String::with_capacity(word.len() + CONTINUATION_PREFIX.len());
    let mut start = 0;
    while start < n_chars {
        let mut end = n_chars;
        let mut found = None;
        while end > start {
            candidate.clear();
            if start > 0 {
                candidate.push_str(CONTINUATION_PREFIX);
            }
            candidate.push_str(&word[bounds[start]..bounds[end]]);
            if let Some(id) = vocab.id(&candidate) {
                // a special token is never a word piece
                if !vocab.is_special(id) {
                    found = Some(id);
                    break;
                }
            }
            end -= 1;
        }
        pieces.push(found?);
        start = end;
    }
    Some(pieces)
}

pub fn encode(text: &str, vocab: &Vocabulary, config: &PreTokenizerConfig) -> Vec<u32> {
    let mut ids = Vec::new();
    for word in pre_tokenize(text, config) {
        match encode_word(&word, vocab) {
            Some(pieces) => ids.extend(pieces),
            None => ids.push(vocab.unk_id()),
        }
    }
    ids
}

/// Joins pieces back into text: continuations attach to the previous piece,
/// word-initial pieces are separated by one space, specials are dropped.
pub fn decode(ids: &[u32], vocab: &Vocabulary) -> Result<String> {
    let mut out = String::new();
    for &id in ids {
        let token = vocab.token(id).ok_or_else(|| {
            Error::arg(alloc::format!(
                "token id {id} out of range (vocabulary size {})",
                vocab.len()
            ))
        })?;
        if vocab.is_special(id) {
            continue;
        }
        match token.strip_prefix(CONTINUATION_PREFIX) {
            Some(rest) => out.push_str(rest),
            None => {
                if !out.is_empty() {
                    out.push(' ');
                }
                out.push_str(token);
            }
        }
    }
    Ok(out)
}
