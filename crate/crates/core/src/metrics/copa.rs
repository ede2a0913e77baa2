use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use super::percent;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Question {
    Cause,
    Effect,
}

impl core::str::FromStr for Question {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cause" => Ok(Question::Cause),
            "effect" => Ok(Question::Effect),
            other => Err(Error::format(format!(
                "question must be \"cause\" or \"effect\", got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopaInstance {
    pub idx: i64,
    pub premise: String,
    pub question: Question,
    pub choice1: String,
    pub choice2: String,
    /// 0 when `choice1` is correct, 1 for `choice2`.
    pub label: u8,
}

/// Two-class (negative, positive) logits for each alternative, produced by
/// scoring premise + alternative as an independent sentence pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CopaPrediction {
    pub idx: i64,
    pub choice1_logits: (f64, f64),
    pub choice2_logits: (f64, f64),
}

/// Softmax probability of the positive class for one (negative, positive)
/// logit pair. Depends on the logits only through their margin.
pub fn positive_probability(negative: f64, positive: f64) -> f64 {
    let margin = positive - negative;
    if margin >= 0.0 {
        1.0 / (1.0 + libm::exp(-margin))
    } else {
        let e = libm::exp(margin);
        e / (1.0 + e)
    }
}

/// Picks the alternative with the higher positive-class probability;
/// an exact tie goes to alternative 0.
pub fn copa_select(pred: &CopaPrediction) -> Result<u8> {
    let (n1, p1) = pred.choice1_logits;
    let (n2, p2) = pred.choice2_logits;
    if ![n1, p1, n2, p2].iter().all(|x| x.is_finite()) {
        return Err(Error::arg(format!("idx {}: non-finite logit", pred.idx)));
    }
    let first = positive_probability(n1, p1);
    let second = positive_probability(n2, p2);
    Ok(if second > first { 1 } else { 0 })
}

/// Accuracy of [`copa_select`] against the gold labels, as a percentage.
/// Every gold idx needs exactly one prediction and vice versa.
pub fn copa_accuracy(gold: &[CopaInstance], preds: &[CopaPrediction]) -> Result<f64> {
    let mut by_idx = BTreeMap::new();
    for p in preds {
        if by_idx.insert(p.idx, p).is_some() {
            return Err(Error::format(format!("idx {}: duplicate prediction", p.idx)));
        }
    }
    let mut seen = BTreeMap::new();
    let mut correct = 0u64;
    for g in gold {
        if seen.insert(g.idx, ()).is_some() {
            return Err(Error::format(format!("idx {}: duplicate gold instance", g.idx)));
        }
        if g.label > 1 {
            return Err(Error::format(format!("idx {}: label must be 0 or 1", g.idx)));
        }
        let p = by_idx
            .get(&g.idx)
            .ok_or_else(|| Error::format(format!("idx {}: missing prediction", g.idx)))?;
        let chosen = copa_select(p).map_err(|e| match e {
            Error::InvalidArgument(m) => Error::Format(m),
            other => other,
        })?;
        if chosen == g.label {
            correct += 1;
        }
    }
    if let Some(extra) = by_idx.keys().find(|k| !seen.contains_key(*k)) {
        return Err(Error::format(format!("idx {extra}: prediction without gold instance")));
    }
    Ok(percent(correct, gold.len() as u64))
}
