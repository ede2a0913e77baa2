use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::percent;
use crate::{Error, Result};

/// One sentence with gold and predicted labels per token.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledSequence {
    pub tokens: Vec<String>,
    pub gold: Vec<String>,
    pub pred: Vec<String>,
}

impl LabeledSequence {
    pub fn check(&self, index: usize) -> Result<()> {
        let n = self.tokens.len();
        if n == 0 || self.gold.len() != n || self.pred.len() != n {
            return Err(Error::format(format!(
                "sequence {index}: length mismatch (tokens {}, gold {}, pred {})",
                n,
                self.gold.len(),
                self.pred.len()
            )));
        }
        Ok(())
    }
}

/// (correct, total) token decisions of one sequence.
pub fn sequence_accuracy_counts(seq: &LabeledSequence, index: usize) -> Result<(u64, u64)> {
    seq.check(index)?;
    let correct = seq.gold.iter().zip(&seq.pred).filter(|(g, p)| g == p).count() as u64;
    Ok((correct, seq.gold.len() as u64))
}

/// (correct, total) token decisions pooled over all sequences.
pub fn token_accuracy_counts(data: &[LabeledSequence]) -> Result<(u64, u64)> {
    let mut correct = 0u64;
    let mut total = 0u64;
    for (i, seq) in data.iter().enumerate() {
        let (c, t) = sequence_accuracy_counts(seq, i)?;
        correct += c;
        total += t;
    }
    Ok((correct, total))
}

/// Accuracy percentage from pooled counts; 0 when there are no tokens.
pub fn accuracy_percent(correct: u64, total: u64) -> f64 {
    percent(correct, total)
}

/// Micro-averaged F1 over token label decisions, as a percentage.
///
/// With exactly one gold and one predicted label per token every error is
/// simultaneously a false positive (for the predicted class) and a false
/// negative (for the gold class), so pooled precision, recall and F1 all
/// collapse to accuracy.
pub fn token_micro_f1(data: &[LabeledSequence]) -> Result<f64> {
    let (correct, total) = token_accuracy_counts(data)?;
    Ok(percent(correct, total))
}
