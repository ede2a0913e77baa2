use super::{percent, LabeledSequence};
use crate::{Error, Result};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;

/// Entity span over token indices `[start, end)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub kind: String,
}

impl Span {
    pub fn new(start: usize, end: usize, kind: impl Into<String>) -> Self {
        Self {
            start,
            end,
            kind: kind.into(),
        }
    }
}

enum Tag<'a> {
    Outside,
    Begin(&'a str),
    Inside(&'a str),
}

fn parse_tag(label: &str) -> Option<Tag<'_>> {
    if label == "O" {
        return Some(Tag::Outside);
    }
    let (head, kind) = label.split_at_checked(2)?;
    if kind.is_empty() {
        return None;
    }
    match head {
        "B-" => Some(Tag::Begin(kind)),
        "I-" => Some(Tag::Inside(kind)),
        _ => None,
    }
}

/// Decodes BIO labels into spans.
///
/// An `I-X` that does not continue an open `X` span opens a new one, so
/// `[O, I-LOC]` yields `(1, 2, LOC)` and `[B-PER, I-LOC]` yields two spans.
pub fn extract_spans<S: AsRef<str>>(labels: &[S]) -> Result<BTreeSet<Span>> {
    let mut spans = BTreeSet::new();
    let mut open: Option<(usize, &str)> = None;
    for (i, label) in labels.iter().enumerate() {
        let label = label.as_ref();
        let tag = parse_tag(label).ok_or_else(|| Error::format(format!("token {i}: malformed BIO label {label:?}")))?;
        match tag {
            Tag::Outside => {
                if let Some((start, kind)) = open.take() {
                    spans.insert(Span::new(start, i, kind));
                }
            }
            Tag::Begin(kind) => {
                if let Some((start, k)) = open.replace((i, kind)) {
                    spans.insert(Span::new(start, i, k));
                }
            }
            Tag::Inside(kind) => match open {
                Some((_, k)) if k == kind => {}
                _ => {
                    if let Some((start, k)) = open.replace((i, kind)) {
                        spans.insert(Span::new(start, i, k));
                    }
                }
            },
        }
    }
    if let Some((start, kind)) = open {
        spans.insert(Span::new(start, labels.len(), kind));
    }
    Ok(spans)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SpanCounts {
    pub true_positives: u64,
    pub false_positives: u64,
    pub false_negatives: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionRecallF1 {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl core::ops::Add for SpanCounts {
    type Output = SpanCounts;

    fn add(self, other: SpanCounts) -> SpanCounts {
        SpanCounts {
            true_positives: self.true_positives + other.true_positives,
            false_positives: self.false_positives + other.false_positives,
            false_negatives: self.false_negatives + other.false_negatives,
        }
    }
}

impl SpanCounts {
    /// Precision, recall and F1 as percentages. Every 0/0 ratio is 0.
    pub fn scores(&self) -> PrecisionRecallF1 {
        let tp = self.true_positives;
        let precision = percent(tp, tp + self.false_positives);
        let recall = percent(tp, tp + self.false_negatives);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        PrecisionRecallF1 { precision, recall, f1 }
    }
}

/// Span counts for one sequence; `index` only labels error messages.
pub fn sequence_span_counts(seq: &LabeledSequence, index: usize) -> Result<SpanCounts> {
    seq.check(index)?;
    let wrap = |e: Error| match e {
        Error::Format(m) => Error::format(format!("sequence {index}: {m}")),
        other => other,
    };
    let gold = extract_spans(&seq.gold).map_err(wrap)?;
    let pred = extract_spans(&seq.pred).map_err(wrap)?;
    let tp = gold.intersection(&pred).count() as u64;
    Ok(SpanCounts {
        true_positives: tp,
        false_positives: pred.len() as u64 - tp,
        false_negatives: gold.len() as u64 - tp,
    })
}

pub fn span_counts(data: &[LabeledSequence]) -> Result<SpanCounts> {
    let mut counts = SpanCounts::default();
    for (i, seq) in data.iter().enumerate() {
        counts = counts + sequence_span_counts(seq, i)?;
    }
    Ok(counts)
}

/// Exact-match span precision, recall and F1 as percentages, pooled over the
/// dataset.
pub fn span_f1(data: &[LabeledSequence]) -> Result<PrecisionRecallF1> {
    Ok(span_counts(data)?.scores())
}
