use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::{Error, Result};

pub const CONTINUATION_PREFIX: &str = "##";
pub const UNK_TOKEN: &str = "[UNK]";
pub const DEFAULT_SPECIAL_TOKENS: [&str; 5] = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"];

/// Ordered subword inventory; a token's position is its id.
///
/// Special tokens occupy the lowest ids. Every other token is either
/// word-initial or a continuation (`##` followed by a non-empty remainder).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    tokens: Vec<String>,
    ids: HashMap<String, u32>,
    special_count: usize,
    unk_id: u32,
}

fn is_bracketed(token: &str) -> bool {
    token.len() >= 3 && token.starts_with('[') && token.ends_with(']')
}

impl Vocabulary {
    pub fn new(special_tokens: Vec<String>, learned: Vec<String>) -> Result<Self> {
        let special_count = special_tokens.len();
        let mut tokens = special_tokens;
        tokens.extend(learned);
        Self::build(tokens, special_count)
    }

    /// Loads a token list in id order (the `vocab.txt` convention). The
    /// leading run of `[...]` tokens is taken as the special tokens.
    pub fn from_tokens(tokens: Vec<String>) -> Result<Self> {
        let special_count = tokens.iter().take_while(|t| is_bracketed(t)).count();
        Self::build(tokens, special_count)
    }

    fn build(tokens: Vec<String>, special_count: usize) -> Result<Self> {
        if tokens.len() > u32::MAX as usize {
            return Err(Error::arg("vocabulary too large for 32-bit ids"));
        }
        let mut ids = HashMap::with_capacity(tokens.len());
        for (i, tok) in tokens.iter().enumerate() {
            if tok.is_empty() {
                return Err(Error::format(format!("empty token at id {i}")));
            }
            if i >= special_count && tok.strip_prefix(CONTINUATION_PREFIX) == Some("") {
                return Err(Error::format(format!("bare continuation prefix at id {i}")));
            }
            if ids.insert(tok.clone(), i as u32).is_some() {
                return Err(Error::format(format!("duplicate token {tok:?} at id {i}")));
            }
        }
        let unk_id = match ids.get(UNK_TOKEN) {
            Some(&id) if (id as usize) < special_count => id,
            _ => return Err(Error::format("vocabulary has no [UNK] special token")),
        };
        Ok(Self {
            tokens,
            ids,
            special_count,
            unk_id,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.ids.get(token).copied()
    }

    pub fn unk_id(&self) -> u32 {
        self.unk_id
    }

    pub fn special_count(&self) -> usize {
        self.special_count
    }

    pub fn is_special(&self, id: u32) -> bool {
        (id as usize) < self.special_count
    }

    /// One token per line, line number = id.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tokens {
            out.push_str(t);
            out.push('\n');
        }
        out
    }
}

pub fn default_special_tokens() -> Vec<String> {
    DEFAULT_SPECIAL_TOKENS.iter().map(|s| s.to_string()).collect()
}
