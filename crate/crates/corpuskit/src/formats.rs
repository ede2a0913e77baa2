//! Parsers for the evaluation, statistics and vocabulary file formats.
//!
//! Every parse error names the file and the 1-based line it came from.

use std::collections::BTreeSet;
use std::path::Path;

use corpuskit_core::corpus::CorpusStats;
use corpuskit_core::metrics::{CopaInstance, CopaPrediction, LabeledSequence, LatLon, Question};
use corpuskit_core::stats::RunScores;
use corpuskit_core::tokenizer::Vocabulary;
use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::input::text_lines;

pub const GEO_HEADER: &str = "gold_lat\tgold_lon\tpred_lat\tpred_lon";
pub const TRAIN_HEADER: &str = "lat\tlon";
pub const RUNS_HEADER: &str = "system\trun_index\tscore";

/// Non-blank lines that are not `#` comments.
fn data_lines(path: &Path) -> Result<Vec<(usize, String)>> {
    Ok(text_lines(path)?
        .into_iter()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .collect())
}

fn columns<'a>(path: &Path, line: usize, text: &'a str, expected: usize) -> Result<Vec<&'a str>> {
    let cols: Vec<&str> = text.split('\t').collect();
    if cols.len() != expected {
        return Err(CliError::format(
            path,
            line,
            format!("expected {expected} tab-separated columns, found {}", cols.len()),
        ));
    }
    Ok(cols)
}

fn number(path: &Path, line: usize, field: &str, text: &str) -> Result<f64> {
    match text.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::format(
            path,
            line,
            format!("{field}: not a finite number: {text:?}"),
        )),
    }
}

fn coordinate(path: &Path, line: usize, lat: &str, lon: &str) -> Result<LatLon> {
    let lat = number(path, line, "latitude", lat)?;
    let lon = number(path, line, "longitude", lon)?;
    LatLon::new(lat, lon).map_err(|e| CliError::format(path, line, e.to_string()))
}

/// Token-task TSV: TOKEN, GOLD, PRED per line, blank line between sequences.
pub fn read_token_tsv(path: &Path) -> Result<Vec<LabeledSequence>> {
    let mut out = Vec::new();
    let mut current = LabeledSequence::default();
    for (line, text) in text_lines(path)? {
        if text.starts_with('#') {
            continue;
        }
        if text.trim().is_empty() {
            if !current.tokens.is_empty() {
                out.push(std::mem::take(&mut current));
            }
            continue;
        }
        let cols = columns(path, line, &text, 3)?;
        if cols.iter().any(|c| c.is_empty()) {
            return Err(CliError::format(path, line, "empty column"));
        }
        current.tokens.push(cols[0].to_owned());
        current.gold.push(cols[1].to_owned());
        current.pred.push(cols[2].to_owned());
    }
    if !current.tokens.is_empty() {
        out.push(current);
    }
    Ok(out)
}

/// Geolocation TSV: gold_lat, gold_lon, pred_lat, pred_lon, optional header.
pub fn read_geo_tsv(path: &Path) -> Result<Vec<corpuskit_core::metrics::GeoPair>> {
    let mut out = Vec::new();
    for (i, (line, text)) in data_lines(path)?.into_iter().enumerate() {
        if i == 0 && text == GEO_HEADER {
            continue;
        }
        let c = columns(path, line, &text, 4)?;
        out.push(corpuskit_core::metrics::GeoPair {
            gold: coordinate(path, line, c[0], c[1])?,
            pred: coordinate(path, line, c[2], c[3])?,
        });
    }
    Ok(out)
}

/// Baseline training TSV: lat, lon, optional header.
pub fn read_train_tsv(path: &Path) -> Result<Vec<LatLon>> {
    let mut out = Vec::new();
    for (i, (line, text)) in data_lines(path)?.into_iter().enumerate() {
        if i == 0 && text == TRAIN_HEADER {
            continue;
        }
        let c = columns(path, line, &text, 2)?;
        out.push(coordinate(path, line, c[0], c[1])?);
    }
    Ok(out)
}

#[derive(Deserialize)]
struct GoldRow {
    idx: i64,
    premise: String,
    question: String,
    choice1: String,
    choice2: String,
    label: u8,
}

#[derive(Deserialize)]
struct PredRow {
    idx: i64,
    choice1_logits: (f64, f64),
    choice2_logits: (f64, f64),
}

fn json_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<(usize, T)>> {
    text_lines(path)?
        .into_iter()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(line, text)| {
            serde_json::from_str(&text)
                .map(|row| (line, row))
                .map_err(|e| CliError::format(path, line, e.to_string()))
        })
        .collect()
}

pub fn read_copa_gold(path: &Path) -> Result<Vec<CopaInstance>> {
    json_rows::<GoldRow>(path)?
        .into_iter()
        .map(|(line, r)| {
            let question: Question = r
                .question
                .parse()
                .map_err(|e: corpuskit_core::Error| CliError::format(path, line, e.to_string()))?;
            if r.label > 1 {
                return Err(CliError::format(
                    path,
                    line,
                    format!("label must be 0 or 1, got {}", r.label),
                ));
            }
            Ok(CopaInstance {
                idx: r.idx,
                premise: r.premise,
                question,
                choice1: r.choice1,
                choice2: r.choice2,
                label: r.label,
            })
        })
        .collect()
}

pub fn read_copa_predictions(path: &Path) -> Result<Vec<CopaPrediction>> {
    json_rows::<PredRow>(path)?
        .into_iter()
        .map(|(line, r)| {
            let finite = [
                r.choice1_logits.0,
                r.choice1_logits.1,
                r.choice2_logits.0,
                r.choice2_logits.1,
            ]
            .iter()
            .all(|v| v.is_finite());
            if !finite {
                return Err(CliError::format(path, line, "logits must be finite"));
            }
            Ok(CopaPrediction {
                idx: r.idx,
                choice1_logits: r.choice1_logits,
                choice2_logits: r.choice2_logits,
            })
        })
        .collect()
}

/// One score per line.
pub fn read_scores(path: &Path) -> Result<Vec<f64>> {
    data_lines(path)?
        .into_iter()
        .map(|(line, text)| number(path, line, "score", &text))
        .collect()
}

/// runs.tsv: system, run_index, score, optional header. Systems keep their
/// order of first appearance; runs keep file order.
pub fn read_runs(path: &Path) -> Result<Vec<RunScores>> {
    let mut systems: Vec<RunScores> = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, (line, text)) in data_lines(path)?.into_iter().enumerate() {
        if i == 0 && text == RUNS_HEADER {
            continue;
        }
        let c = columns(path, line, &text, 3)?;
        let system = c[0].trim();
        if system.is_empty() {
            return Err(CliError::format(path, line, "empty system name"));
        }
        let run: u64 = c[1]
            .trim()
            .parse()
            .map_err(|_| CliError::format(path, line, format!("run_index: not a non-negative integer: {:?}", c[1])))?;
        if !seen.insert((system.to_owned(), run)) {
            return Err(CliError::format(
                path,
                line,
                format!("duplicate run {run} for system {system:?}"),
            ));
        }
        let score = number(path, line, "score", c[2])?;
        match systems.iter_mut().find(|s| s.system == system) {
            Some(s) => s.scores.push(score),
            None => systems.push(RunScores::new(system, vec![score])),
        }
    }
    Ok(systems)
}

/// Stats TSV as written by `dedup --stats` and `stats`.
pub fn read_stats_tsv(path: &Path) -> Result<Vec<CorpusStats>> {
    let mut out = Vec::new();
    let lines = data_lines(path)?;
    let mut rows = lines.iter();
    match rows.next() {
        Some((_, h)) if h == CorpusStats::TSV_HEADER => {}
        Some((line, _)) => return Err(CliError::format(path, *line, "missing stats header")),
        None => return Ok(out),
    }
    for (line, text) in rows {
        let line = *line;
        let c = columns(path, line, text, 6)?;
        let count = |field: &str, v: &str| {
            v.trim()
                .parse::<u64>()
                .map_err(|_| CliError::format(path, line, format!("{field}: not a non-negative integer: {v:?}")))
        };
        let words = count("word_count", c[2])?;
        let sentences = count("sentence_count", c[3])?;
        let removed = count("removed_count", c[4])?;
        out.push(CorpusStats::new(c[0], c[1], words, sentences, removed));
    }
    Ok(out)
}

/// vocab.txt: one token per line, line number = id.
pub fn read_vocab(path: &Path) -> Result<Vocabulary> {
    let tokens: Vec<String> = text_lines(path)?.into_iter().map(|(_, t)| t).collect();
    Vocabulary::from_tokens(tokens).map_err(|e| match e {
        corpuskit_core::Error::InvalidArgument(m) => CliError::input(path, corpuskit_core::Error::Format(m)),
        other => CliError::input(path, other),
    })
}
