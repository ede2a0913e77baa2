use alloc::string::String;
use alloc::vec::Vec;

use unicode_general_category::{get_general_category, GeneralCategory};
use unicode_normalization::UnicodeNormalization;

/// BERT-style basic tokenizer settings.
///
/// `strip_accents` exists for parity with the original BERT preprocessing;
/// leaving it off keeps every diacritic and precomposed character intact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreTokenizerConfig {
    pub lowercase: bool,
    pub strip_accents: bool,
    pub split_punctuation: bool,
}

impl Default for PreTokenizerConfig {
    fn default() -> Self {
        Self {
            lowercase: false,
            strip_accents: false,
            split_punctuation: true,
        }
    }
}

/// ASCII symbols count as punctuation (as in BERT) besides the Unicode P* categories.
pub fn is_punctuation(c: char) -> bool {
    if c.is_ascii_graphic() && !c.is_ascii_alphanumeric() {
        return true;
    }
    matches!(
        get_general_category(c),
        GeneralCategory::ConnectorPunctuation
            | GeneralCategory::DashPunctuation
            | GeneralCategory::OpenPunctuation
            | GeneralCategory::ClosePunctuation
            | GeneralCategory::InitialPunctuation
            | GeneralCategory::FinalPunctuation
            | GeneralCategory::OtherPunctuation
    )
}

fn is_dropped_control(c: char) -> bool {
    c.is_control() && !c.is_whitespace()
}

/// Splits text into surface tokens: whitespace split, punctuation as
/// single-character tokens, control characters removed.
pub fn pre_tokenize(text: &str, config: &PreTokenizerConfig) -> Vec<String> {
    let mut prepared;
    let mut src = text;
    if config.lowercase {
        prepared = src.to_lowercase();
        src = &prepared;
    }
    if config.strip_accents {
        prepared = src
            .nfd()
            .filter(|&c| get_general_category(c) != GeneralCategory::NonspacingMark)
            .collect();
        src = &prepared;
    }

    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in src.chars() {
        if is_dropped_control(c) {
            continue;
        }
        if c.is_whitespace() {
            if !current.is_empty() {
                tokens.push(core::mem::take(&mut current));
            }
        } else if config.split_punctuation && is_punctuation(c) {
            if !current.is_empty() {
                tokens.push(core::mem::take(&mut current));
            }
            tokens.push(String::from(c));
        } else {
            current.push(c);
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}
