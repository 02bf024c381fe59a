//! Key files: one instance per line, `instance_id sense_key [sense_key...]`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Acceptable sense keys per instance id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldKeys {
    entries: BTreeMap<String, Vec<String>>,
}

impl GoldKeys {
    pub fn get(&self, id: &str) -> Option<&[String]> {
        self.entries.get(id).map(Vec::as_slice)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.entries.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by instance id.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }
}

impl FromIterator<(String, Vec<String>)> for GoldKeys {
    fn from_iter<I: IntoIterator<Item = (String, Vec<String>)>>(iter: I) -> Self {
        GoldKeys {
            entries: iter.into_iter().collect(),
        }
    }
}

fn parse_lines(path: &Path, max_keys: Option<usize>) -> Result<BTreeMap<String, Vec<String>>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut entries = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let mut tokens = line.split_whitespace();
        let Some(id) = tokens.next() else { continue };
        let keys: Vec<String> = tokens.map(str::to_string).collect();
        if keys.is_empty() {
            return Err(Error::malformed(path, i + 1, format!("`{id}` has no sense key")));
        }
        if max_keys.is_some_and(|m| keys.len() > m) {
            return Err(Error::malformed(path, i + 1, format!("`{id}` has more than one predicted key")));
        }
        if entries.insert(id.to_string(), keys).is_some() {
            return Err(Error::malformed(path, i + 1, format!("duplicate instance `{id}`")));
        }
    }
    Ok(entries)
}

pub fn parse_gold_keys(path: impl AsRef<Path>) -> Result<GoldKeys> {
    Ok(GoldKeys {
        entries: parse_lines(path.as_ref(), None)?,
    })
}

/// Reads a prediction file: exactly one sense key per instance.
pub fn parse_predictions(path: impl AsRef<Path>) -> Result<BTreeMap<String, String>> {
    let entries = parse_lines(path.as_ref(), Some(1))?;
    Ok(entries
        .into_iter()
        .map(|(id, mut keys)| (id, keys.remove(0)))
        .collect())
}

/// Writes `instance_id sense_key` lines sorted by instance id.
pub fn write_key_file<'a>(
    predictions: impl IntoIterator<Item = (&'a str, &'a str)>,
    mut out: impl Write,
) -> io::Result<()> {
    let sorted: BTreeMap<&str, &str> = predictions.into_iter().collect();
    for (id, key) in sorted {
        writeln!(out, "{id} {key}")?;
    }
    Ok(())
}
