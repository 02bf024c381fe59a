//! Precision, recall and F-scores of predictions against gold keys.

use std::collections::BTreeMap;
use std::fmt;

use crate::corpus::{dataset_of, GoldKeys};
use crate::error::{Error, Result};
use crate::pos::{Pos, PosSet};
use crate::wordnet::sense_key_parts;

/// A slice of the gold instances a sub-report covers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slice {
    Dataset(String),
    Pos(Pos),
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slice::Dataset(name) => write!(f, "dataset:{name}"),
            Slice::Pos(pos) => write!(f, "pos:{}", pos.file_suffix()),
        }
    }
}

/// Restricts which gold instances are scored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreFilter {
    pub pos: PosSet,
    pub dataset: Option<String>,
}

impl Default for ScoreFilter {
    fn default() -> Self {
        ScoreFilter {
            pos: PosSet::ALL,
            dataset: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoreReport {
    pub n_gold: usize,
    pub n_attempted: usize,
    pub n_correct: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Per-dataset and per-POS sub-reports; empty inside a sub-report.
    pub breakdowns: BTreeMap<Slice, ScoreReport>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    gold: usize,
    attempted: usize,
    correct: usize,
}

impl Tally {
    fn report(self) -> ScoreReport {
        let precision = ratio(self.correct, self.attempted);
        let recall = ratio(self.correct, self.gold);
        ScoreReport {
            n_gold: self.gold,
            n_attempted: self.attempted,
            n_correct: self.correct,
            precision,
            recall,
            f1: f1(precision, recall),
            breakdowns: BTreeMap::new(),
        }
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

pub fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Weighted harmonic mean `1 / (alpha / p + (1 - alpha) / r)`.
pub fn f_alpha(p: f64, r: f64, alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if p == 0.0 || r == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (alpha / p + (1.0 - alpha) / r))
}

/// POS of a gold instance, read from its first key.
fn gold_pos(keys: &[String]) -> Option<Pos> {
    keys.first().and_then(|k| sense_key_parts(k)).map(|(_, pos)| pos)
}

/// Scores `predictions` (instance id to sense key). A prediction is correct
/// when its key is any of the gold keys; unanswered instances only lower
/// recall. The overall figures pool every instance that passes `filter`.
pub fn score(gold: &GoldKeys, predictions: &BTreeMap<String, String>, filter: &ScoreFilter) -> Result<ScoreReport> {
    if let Some(id) = predictions.keys().find(|id| !gold.contains(id)) {
        return Err(Error::UnknownInstance(id.clone()));
    }
    let mut all = Tally::default();
    let mut slices: BTreeMap<Slice, Tally> = BTreeMap::new();
    for (id, keys) in gold.iter() {
        let pos = gold_pos(keys);
        let dataset = dataset_of(id);
        if pos.is_some_and(|p| !filter.pos.contains(p)) || (pos.is_none() && filter.pos != PosSet::ALL) {
            continue;
        }
        if filter.dataset.as_deref().is_some_and(|d| dataset != Some(d)) {
            continue;
        }
        let mut keys_for: Vec<Slice> = Vec::new();
        if let Some(d) = dataset {
            keys_for.push(Slice::Dataset(d.to_string()));
        }
        if let Some(p) = pos {
            keys_for.push(Slice::Pos(p));
        }
        let attempted = predictions.get(id);
        let correct = attempted.is_some_and(|k| keys.contains(k));
        for slice in keys_for {
            let t = slices.entry(slice).or_default();
            bump(t, attempted.is_some(), correct);
        }
        bump(&mut all, attempted.is_some(), correct);
    }
    let mut report = all.report();
    report.breakdowns = slices.into_iter().map(|(s, t)| (s, t.report())).collect();
    Ok(report)
}

fn bump(t: &mut Tally, attempted: bool, correct: bool) {
    t.gold += 1;
    t.attempted += usize::from(attempted);
    t.correct += usize::from(correct);
}

impl ScoreReport {
    fn figures(&self) -> [(&'static str, String); 6] {
        [
            ("precision", format!("{:.6}", self.precision)),
            ("recall", format!("{:.6}", self.recall)),
            ("f1", format!("{:.6}", self.f1)),
            ("gold", self.n_gold.to_string()),
            ("attempted", self.n_attempted.to_string()),
            ("correct", self.n_correct.to_string()),
        ]
    }

    /// `metric<TAB>slice<TAB>value` lines; the pooled slice is `All`.
    pub fn to_tsv(&self, with_breakdowns: bool) -> String {
        let mut out = String::new();
        let mut emit = |slice: &str, r: &ScoreReport| {
            for (metric, value) in r.figures() {
                out.push_str(&format!("{metric}\t{slice}\t{value}\n"));
            }
        };
        emit("All", self);
        if with_breakdowns {
            for (slice, r) in &self.breakdowns {
                emit(&slice.to_string(), r);
            }
        }
        out
    }

    /// Human-readable table, scores as percentages.
    pub fn to_text(&self, with_breakdowns: bool) -> String {
        let mut out = format!(
            "{:<20} {:>7} {:>7} {:>7} {:>7} {:>9} {:>7}\n",
            "slice", "P", "R", "F1", "gold", "attempted", "correct"
        );
        let mut row = |slice: &str, r: &ScoreReport| {
            out.push_str(&format!(
                "{:<20} {:>7.1} {:>7.1} {:>7.1} {:>7} {:>9} {:>7}\n",
                slice,
                100.0 * r.precision,
                100.0 * r.recall,
                100.0 * r.f1,
                r.n_gold,
                r.n_attempted,
                r.n_correct
            ));
        };
        row("All", self);
        if with_breakdowns {
            for (slice, r) in &self.breakdowns {
                row(&slice.to_string(), r);
            }
        }
        out
    }
}
