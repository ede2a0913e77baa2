use alloc::string::String;

use unicode_normalization::{is_nfc_quick, IsNormalized, UnicodeNormalization};

use crate::{Error, Result};

/// One normalized sentence.
///
/// The text is NFC, trimmed, with internal whitespace runs collapsed to a
/// single space; it is never empty and never contains a newline.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SentenceRecord {
    text: String,
    doc_boundary: bool,
}

impl SentenceRecord {
    pub fn text(&self) -> &str {
        &self.text
    }

    /// True when a blank line (document break) preceded this sentence.
    pub fn doc_boundary(&self) -> bool {
        self.doc_boundary
    }

    pub fn with_boundary(mut self, doc_boundary: bool) -> Self {
        self.doc_boundary = doc_boundary;
        self
    }

    pub fn into_text(self) -> String {
        self.text
    }

    pub fn word_count(&self) -> u64 {
        // normalized text has single spaces only
        self.text.split(' ').count() as u64
    }
}

/// Normalizes one input line. Returns `None` (the skip signal) for lines that
/// are empty after stripping.
pub fn normalize_sentence(raw: &str) -> Option<SentenceRecord> {
    let composed;
    let src: &str = match is_nfc_quick(raw.chars()) {
        IsNormalized::Yes => raw,
        _ => {
            composed = raw.nfc().collect::<String>();
            &composed
        }
    };
    let mut text = String::with_capacity(src.len());
    for word in src.split_whitespace() {
        if !text.is_empty() {
            text.push(' ');
        }
        text.push_str(word);
    }
    if text.is_empty() {
        None
    } else {
        Some(SentenceRecord {
            text,
            doc_boundary: false,
        })
    }
}

/// Decodes one raw line, reporting the absolute byte offset of the first
/// invalid sequence. `line_offset` is the offset of `bytes[0]` in the file.
pub fn decode_line(bytes: &[u8], line_offset: u64) -> Result<&str> {
    core::str::from_utf8(bytes).map_err(|e| Error::Decode {
        offset: line_offset + e.valid_up_to() as u64,
    })
}

/// Turns a sequence of lines into records, tracking blank-line boundaries.
#[derive(Debug, Default, Clone)]
pub struct RecordSplitter {
    seen_record: bool,
    pending_boundary: bool,
}

impl RecordSplitter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_line(&mut self, line: &str) -> Option<SentenceRecord> {
        self.push_normalized(normalize_sentence(line))
    }

    /// Same as [`push_line`](Self::push_line) for a line normalized elsewhere
    /// (e.g. on a worker thread); `None` stands for a blank line.
    pub fn push_normalized(&mut self, normalized: Option<SentenceRecord>) -> Option<SentenceRecord> {
        match normalized {
            None => {
                if self.seen_record {
                    self.pending_boundary = true;
                }
                None
            }
            Some(rec) => {
                let boundary = self.pending_boundary;
                self.pending_boundary = false;
                self.seen_record = true;
                Some(rec.with_boundary(boundary))
            }
        }
    }
}

/// Total count of maximal non-whitespace runs over all records.
pub fn count_words<'a, I>(records: I) -> u64
where
    I: IntoIterator<Item = &'a SentenceRecord>,
{
    records.into_iter().map(SentenceRecord::word_count).sum()
}
