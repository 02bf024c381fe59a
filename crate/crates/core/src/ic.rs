//! Information content of taxonomy concepts, IC(c) = -ln p(c), in nats.
//!
//! Counts are cumulative: a synset's count includes the counts of every
//! hyponym below it. Probabilities are taken relative to the per-POS total,
//! which is the sum of the counts of the taxonomy roots and doubles as the
//! count of the virtual root.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::pos::Pos;
use crate::wordnet::{SynsetId, WordNetGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct IcTable {
    counts: HashMap<SynsetId, f64>,
    root_total: [f64; 2],
    /// Count assumed for synsets missing from `counts`.
    smoothing: f64,
}

fn slot(pos: Pos) -> Option<usize> {
    match pos {
        Pos::Noun => Some(0),
        Pos::Verb => Some(1),
        _ => None,
    }
}

impl IcTable {
    pub fn count(&self, id: SynsetId) -> f64 {
        if id.is_virtual_root() {
            return self.root_total(id.pos);
        }
        self.counts.get(&id).copied().unwrap_or(self.smoothing)
    }

    pub fn root_total(&self, pos: Pos) -> f64 {
        slot(pos).map_or(0.0, |s| self.root_total[s])
    }

    /// `None` outside the noun and verb taxonomies. Synsets with a zero
    /// count have infinite information content.
    pub fn ic(&self, id: SynsetId) -> Option<f64> {
        slot(id.pos)?;
        let total = self.root_total(id.pos);
        let count = self.count(id);
        if count <= 0.0 || total <= 0.0 {
            return Some(f64::INFINITY);
        }
        // count <= total, so the log is never positive; max() clears -0.0
        Some((-(count / total).ln()).max(0.0))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Serializes in the `.dat` layout read by [`load_ic_file`]. Roots of the
    /// graph are flagged `ROOT`.
    pub fn write_to(&self, graph: &WordNetGraph, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "wnver::wordnet-3.0")?;
        for pos in [Pos::Noun, Pos::Verb] {
            let roots = graph.roots(pos);
            let mut ids: Vec<&SynsetId> = self.counts.keys().filter(|id| id.pos == pos).collect();
            ids.sort();
            for id in ids {
                let flag = if roots.binary_search(id).is_ok() { " ROOT" } else { "" };
                writeln!(out, "{}{} {}{}", id.offset, pos.letter(), self.counts[id], flag)?;
            }
        }
        Ok(())
    }

    pub fn save(&self, graph: &WordNetGraph, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut buf = Vec::new();
        self.write_to(graph, &mut buf)
            .and_then(|_| fs::write(path, buf))
            .map_err(|source| Error::Write {
                path: path.to_path_buf(),
                source,
            })
    }
}

/// Reads an IC `.dat` file: a `wnver::<hash>` header followed by lines
/// `<offset><pos-letter> <count> [ROOT]`. Synsets absent from the file get
/// a zero count.
pub fn load_ic_file(path: impl AsRef<Path>) -> Result<IcTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut counts = HashMap::new();
    let mut root_total = [0.0; 2];
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).peekable();
    match lines.peek() {
        Some((_, first)) if first.starts_with("wnver::") => {
            lines.next();
        }
        _ => log::warn!("{}: missing wnver header", path.display()),
    }
    for (i, line) in lines {
        let line_no = i + 1;
        let mut tokens = line.split_whitespace();
        let (Some(id), Some(count)) = (tokens.next(), tokens.next()) else {
            return Err(Error::malformed(path, line_no, "expected `<offset><pos> <count>`"));
        };
        let letter = id.chars().last().unwrap_or(' ');
        let pos = Pos::from_letter(letter)
            .ok_or_else(|| Error::malformed(path, line_no, format!("unknown POS letter `{letter}`")))?;
        let offset: u32 = id[..id.len() - letter.len_utf8()]
            .parse()
            .map_err(|_| Error::malformed(path, line_no, format!("bad synset offset in `{id}`")))?;
        let count: f64 = count
            .parse()
            .ok()
            .filter(|c: &f64| c.is_finite() && *c >= 0.0)
            .ok_or_else(|| Error::malformed(path, line_no, format!("non-numeric count `{count}`")))?;
        if tokens.next() == Some("ROOT") {
            if let Some(s) = slot(pos) {
                root_total[s] += count;
            }
        }
        counts.insert(SynsetId::new(pos, offset), count);
    }
    Ok(IcTable {
        counts,
        root_total,
        smoothing: 0.0,
    })
}

#[derive(Debug)]
pub struct IcComputation {
    pub table: IcTable,
    /// Sense keys that did not resolve in the graph.
    pub skipped: usize,
}

/// Builds an IC table from sense-key occurrence counts. Every noun and verb
/// synset receives one extra count before propagation to its ancestors.
pub fn compute_ic<'k>(
    graph: &WordNetGraph,
    sense_counts: impl IntoIterator<Item = (&'k str, u64)>,
) -> IcComputation {
    const SMOOTHING: f64 = 1.0;
    let mut own: HashMap<SynsetId, f64> = graph
        .synsets()
        .filter(|s| s.id.pos.has_taxonomy())
        .map(|s| (s.id, SMOOTHING))
        .collect();
    let mut skipped = 0;
    for (key, count) in sense_counts {
        match graph.sense_by_key(key).and_then(|s| own.get_mut(&s.synset)) {
            Some(c) => *c += count as f64,
            None => skipped += 1,
        }
    }
    let mut counts: HashMap<SynsetId, f64> = own.keys().map(|&id| (id, 0.0)).collect();
    for (&id, &c) in &own {
        for a in graph.ancestors(id) {
            if let Some(slot) = counts.get_mut(&a) {
                *slot += c;
            }
        }
    }
    let mut root_total = [0.0; 2];
    for pos in [Pos::Noun, Pos::Verb] {
        root_total[slot(pos).unwrap()] = graph.roots(pos).iter().map(|r| counts[r]).sum();
    }
    if skipped > 0 {
        log::info!("information content: {skipped} sense keys not found in WordNet");
    }
    IcComputation {
        table: IcTable {
            counts,
            root_total,
            smoothing: SMOOTHING,
        },
        skipped,
    }
}
