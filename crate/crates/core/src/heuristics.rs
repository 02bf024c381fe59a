//! Sense-frequency heuristics from sense-tagged corpora.
//!
//! H(s) is the conditional probability of a sense given its word,
//! estimated from tag counts. A sense the corpus never tagged gets
//! `1 / Count(w)`, and a word the corpus never saw gets the neutral 1.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pos::Pos;
use crate::wordnet::{sense_key_parts, SenseEntry, WordNetGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeuristicSource {
    SemCor,
    SemCorOmsti,
    Off,
}

impl FromStr for HeuristicSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" | "semcor" => Ok(HeuristicSource::SemCor),
            "so" | "semcor+omsti" => Ok(HeuristicSource::SemCorOmsti),
            "off" | "none" => Ok(HeuristicSource::Off),
            _ => Err(Error::UnknownOption {
                what: "heuristic source",
                value: s.to_string(),
            }),
        }
    }
}

/// Tag counts keyed by sense key, with per-word totals.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HeuristicStore {
    sense_count: HashMap<String, u64>,
    word_count: HashMap<(String, Pos), u64>,
}

impl HeuristicStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` occurrences of a sense. Returns `false` when the key
    /// does not encode a lemma and POS. Zero counts are ignored.
    pub fn add(&mut self, key: &str, count: u64) -> bool {
        let Some(word) = sense_key_parts(key) else {
            return false;
        };
        if count > 0 {
            *self.sense_count.entry(key.to_string()).or_default() += count;
            *self.word_count.entry(word).or_default() += count;
        }
        true
    }

    /// Sums the counts of another store into this one.
    pub fn merge(&mut self, other: &HeuristicStore) {
        for (key, &count) in &other.sense_count {
            self.add(key, count);
        }
    }

    pub fn sense_count(&self, key: &str) -> u64 {
        self.sense_count.get(key).copied().unwrap_or(0)
    }

    pub fn word_count(&self, lemma: &str, pos: Pos) -> u64 {
        self.word_count
            .get(&(lemma.to_lowercase(), pos))
            .copied()
            .unwrap_or(0)
    }

    pub fn sense_counts(&self) -> impl Iterator<Item = (&str, u64)> {
        self.sense_count.iter().map(|(k, &c)| (k.as_str(), c))
    }

    pub fn words(&self) -> impl Iterator<Item = (&str, Pos)> {
        self.word_count.keys().map(|(l, p)| (l.as_str(), *p))
    }

    pub fn len(&self) -> usize {
        self.sense_count.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sense_count.is_empty()
    }

    /// Counts taken from the `tag_cnt` column of `index.sense`, which holds
    /// the SemCor frequencies the WordNet distribution ships with.
    pub fn from_tag_counts(graph: &WordNetGraph) -> Self {
        let mut store = HeuristicStore::new();
        for (_, _, senses) in graph.index_entries() {
            for s in senses {
                store.add(&s.sense_key, u64::from(s.tag_count));
            }
        }
        store
    }

    /// H(s), always in (0, 1].
    pub fn heuristic(&self, sense: &SenseEntry) -> f64 {
        let word = self.word_count(&sense.lemma, sense.pos);
        if word == 0 {
            return 1.0;
        }
        match self.sense_count(&sense.sense_key) {
            0 => 1.0 / word as f64,
            count => count as f64 / word as f64,
        }
    }

    /// Most frequent sense in the store; WordNet's first sense when the
    /// word was never seen. Ties go to the lower sense number.
    pub fn mfs_sense<'g>(&self, graph: &'g WordNetGraph, lemma: &str, pos: Pos) -> Result<&'g SenseEntry> {
        let senses = graph.senses_of(lemma, pos);
        let mut best = senses.first().ok_or_else(|| Error::NoSense {
            lemma: lemma.to_string(),
            pos,
        })?;
        let mut best_count = self.sense_count(&best.sense_key);
        for s in &senses[1..] {
            let c = self.sense_count(&s.sense_key);
            if c > best_count {
                best = s;
                best_count = c;
            }
        }
        Ok(best)
    }
}

pub fn wn_first_sense<'g>(graph: &'g WordNetGraph, lemma: &str, pos: Pos) -> Result<&'g SenseEntry> {
    graph.senses_of(lemma, pos).first().ok_or_else(|| Error::NoSense {
        lemma: lemma.to_string(),
        pos,
    })
}

/// Column orders seen in `cntlist` variants, as (count, key, sense number)
/// positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    CountKeyNum,
    NumKeyCount,
    KeyNumCount,
    KeyCountNum,
}

impl Layout {
    // preference order when several layouts fit every line
    const ALL: [Layout; 4] = [
        Layout::CountKeyNum,
        Layout::KeyNumCount,
        Layout::NumKeyCount,
        Layout::KeyCountNum,
    ];

    fn key_index(self) -> usize {
        match self {
            Layout::CountKeyNum | Layout::NumKeyCount => 1,
            Layout::KeyNumCount | Layout::KeyCountNum => 0,
        }
    }

    /// (count, sense number) from the two numeric columns, in file order.
    fn split(self, first: u64, second: u64) -> (u64, u64) {
        match self {
            Layout::CountKeyNum | Layout::KeyCountNum => (first, second),
            Layout::NumKeyCount | Layout::KeyNumCount => (second, first),
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

/// Reads a `cntlist` file. Each line holds a tag count, a sense key and a
/// sense number; the column order is inferred from the whole file, using
/// the sense key's position and the fact that sense numbers stay below 100.
pub fn load_semcor_cntlist(path: impl AsRef<Path>) -> Result<HeuristicStore> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    let mut fits = Layout::ALL.iter().fold(0u8, |m, l| m | l.bit());
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let key_at = tokens
            .iter()
            .position(|t| t.contains('%'))
            .ok_or_else(|| Error::malformed(path, line_no, "no sense key on line"))?;
        if tokens.len() != 3 || key_at == 2 {
            return Err(Error::malformed(
                path,
                line_no,
                "expected a count, a sense key and a sense number",
            ));
        }
        let numbers: Vec<u64> = tokens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != key_at)
            .map(|(_, t)| t.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::malformed(path, line_no, "non-numeric count or sense number"))?;
        let (a, b) = (numbers[0], numbers[1]);
        let line_fits = Layout::ALL
            .iter()
            .filter(|l| l.key_index() == key_at && (1..=99).contains(&l.split(a, b).1))
            .fold(0u8, |m, l| m | l.bit());
        fits &= line_fits;
        if fits == 0 {
            return Err(Error::format(
                path,
                format!("column order at line {line_no} is inconsistent with earlier lines"),
            ));
        }
        rows.push((tokens[key_at], a, b));
    }
    let mut store = HeuristicStore::new();
    let Some(layout) = Layout::ALL.into_iter().find(|l| fits & l.bit() != 0) else {
        return Ok(store);
    };
    log::debug!("{}: cntlist layout {:?}", path.display(), layout);
    for (key, a, b) in rows {
        store.add(key, layout.split(a, b).0);
    }
    Ok(store)
}

/// Reads a key file (`instance_id sense_key [sense_key...]` per line) and
/// counts one occurrence for every listed key.
pub fn load_key_file_counts(path: impl AsRef<Path>) -> Result<HeuristicStore> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut store = HeuristicStore::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace().skip(1).peekable();
        if tokens.peek().is_none() {
            return Err(Error::malformed(path, i + 1, "instance without sense keys"));
        }
        for key in tokens {
            if !key.contains('%') || !store.add(key, 1) {
                return Err(Error::malformed(path, i + 1, format!("`{key}` is not a sense key")));
            }
        }
    }
    Ok(store)
}
