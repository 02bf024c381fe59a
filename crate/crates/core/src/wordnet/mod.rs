//! In-memory WordNet 3.0 knowledge graph.
//!
//! The graph is loaded once from the flat-file database (`index.*`,
//! `data.*`, `index.sense`) and is immutable afterwards, so it can be shared
//! freely between worker threads.
//!
//! Nouns and verbs form hypernym taxonomies. Verbs have hundreds of roots and
//! nouns have one, so every taxonomy root is attached to a per-POS virtual
//! root. This makes depth and least common subsumer total within a POS. The
//! virtual root has offset `0`, which never occurs in the database.

mod load;
mod relation;

use std::collections::{HashMap, VecDeque};
use std::fmt;

pub use load::{load_wordnet, sense_key_parts};
pub use relation::{EdgeSet, Relation};

use crate::error::{Error, Result};
use crate::pos::Pos;
use relation::EdgeKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SynsetId {
    pub pos: Pos,
    pub offset: u32,
}

impl SynsetId {
    pub fn new(pos: Pos, offset: u32) -> Self {
        SynsetId { pos, offset }
    }

    pub fn is_virtual_root(self) -> bool {
        self.offset == 0
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08}-{}", self.offset, self.pos)
    }
}

#[derive(Debug, Clone)]
pub struct Synset {
    pub id: SynsetId,
    pub lex_filenum: u8,
    pub lemmas: Vec<String>,
    pub gloss: String,
    pub relations: Vec<(Relation, SynsetId)>,
    pub sense_keys: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseEntry {
    pub lemma: String,
    pub pos: Pos,
    /// 1-based rank within `(lemma, pos)`, in index-file order.
    pub sense_number: u32,
    pub sense_key: String,
    pub synset: SynsetId,
    /// Tagged-corpus frequency recorded in `index.sense`.
    pub tag_count: u32,
}

const NO_DEPTH: u32 = u32::MAX;

pub struct WordNetGraph {
    synsets: Vec<Synset>,
    node_of: HashMap<SynsetId, u32>,
    index: HashMap<(String, Pos), Vec<SenseEntry>>,
    by_key: HashMap<String, (String, Pos, usize)>,
    /// Per node, including the two virtual roots at the end.
    hypernyms: Vec<Vec<u32>>,
    edges: Vec<Vec<(u32, EdgeKind)>>,
    depth: Vec<u32>,
    ancestors: Vec<Box<[u32]>>,
    max_depth: [u32; 2],
}

fn taxonomy_slot(pos: Pos) -> Option<usize> {
    match pos {
        Pos::Noun => Some(0),
        Pos::Verb => Some(1),
        _ => None,
    }
}

impl WordNetGraph {
    pub fn virtual_root(pos: Pos) -> SynsetId {
        SynsetId::new(pos, 0)
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.iter()
    }

    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.node_of
            .get(&id)
            .and_then(|&n| self.synsets.get(n as usize))
    }

    pub fn contains(&self, id: SynsetId) -> bool {
        self.node_of.contains_key(&id)
    }

    /// Senses of `(lemma, pos)` ordered by sense number. Empty when absent.
    pub fn senses_of(&self, lemma: &str, pos: Pos) -> &[SenseEntry] {
        self.index
            .get(&(lemma.to_string(), pos))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn sense_by_key(&self, key: &str) -> Option<&SenseEntry> {
        let (lemma, pos, slot) = self.by_key.get(key)?;
        self.index.get(&(lemma.clone(), *pos))?.get(*slot)
    }

    /// All `(lemma, pos)` pairs with their senses, in arbitrary order.
    pub fn index_entries(&self) -> impl Iterator<Item = (&str, Pos, &[SenseEntry])> {
        self.index
            .iter()
            .map(|((lemma, pos), senses)| (lemma.as_str(), *pos, senses.as_slice()))
    }

    pub fn hypernyms(&self, id: SynsetId) -> Vec<SynsetId> {
        match self.node_of.get(&id) {
            Some(&n) => self.hypernyms[n as usize]
                .iter()
                .map(|&h| self.id_of(h))
                .collect(),
            None => Vec::new(),
        }
    }

    /// The synset itself plus everything reachable over hypernym edges,
    /// including the virtual root. Empty outside the noun/verb taxonomies.
    pub fn ancestors(&self, id: SynsetId) -> Vec<SynsetId> {
        match self.node_of.get(&id) {
            Some(&n) => self.ancestors[n as usize]
                .iter()
                .map(|&a| self.id_of(a))
                .collect(),
            None => Vec::new(),
        }
    }

    /// Taxonomy roots of a POS (synsets without hypernyms).
    pub fn roots(&self, pos: Pos) -> Vec<SynsetId> {
        let Some(root) = self.node_of.get(&Self::virtual_root(pos)) else {
            return Vec::new();
        };
        let mut roots: Vec<SynsetId> = self
            .synsets
            .iter()
            .enumerate()
            .filter(|(n, s)| s.id.pos == pos && self.hypernyms[*n] == [*root])
            .map(|(_, s)| s.id)
            .collect();
        roots.sort();
        roots
    }

    /// Length of the longest hypernym chain from the virtual root (depth 0);
    /// real taxonomy roots have depth 1. `None` for adjectives and adverbs.
    pub fn depth(&self, id: SynsetId) -> Option<u32> {
        let n = *self.node_of.get(&id)?;
        let d = self.depth[n as usize];
        (d != NO_DEPTH).then_some(d)
    }

    /// Number of nodes on the deepest root path of a taxonomy, counting the
    /// virtual root. Any taxonomy path between two synsets of that POS spans
    /// fewer than `2 * max_depth` nodes. Zero for adjectives and adverbs.
    pub fn max_depth(&self, pos: Pos) -> u32 {
        taxonomy_slot(pos).map_or(0, |slot| self.max_depth[slot])
    }

    /// Least common subsumer: the shared ancestor with maximum depth. Ties
    /// go to the lowest synset id.
    pub fn lcs(&self, a: SynsetId, b: SynsetId) -> Result<SynsetId> {
        if a.pos != b.pos || !a.pos.has_taxonomy() {
            return Err(Error::UnsupportedTaxonomy(a, b));
        }
        let na = self.node(a)?;
        let nb = self.node(b)?;
        let (xs, ys) = (&self.ancestors[na as usize], &self.ancestors[nb as usize]);
        let (mut i, mut j) = (0, 0);
        let mut best: Option<(u32, SynsetId)> = None;
        while i < xs.len() && j < ys.len() {
            match xs[i].cmp(&ys[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let d = self.depth[xs[i] as usize];
                    let id = self.id_of(xs[i]);
                    let better = match best {
                        None => true,
                        Some((bd, bid)) => d > bd || (d == bd && id < bid),
                    };
                    if better {
                        best = Some((d, id));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        // both ancestor sets contain the virtual root
        best.map(|(_, id)| id).ok_or(Error::UnsupportedTaxonomy(a, b))
    }

    /// Breadth-first shortest path length in edges, walking the selected
    /// edge kinds in both directions. `Some(0)` when `a == b`, `None` when
    /// the two are disconnected or unknown.
    pub fn shortest_path_len(&self, a: SynsetId, b: SynsetId, edges: EdgeSet) -> Option<u32> {
        self.path_lengths_from(a, &[b], edges)[0]
    }

    /// Shortest path lengths from `source` to each target, computed with a
    /// single search that stops once every reachable target is settled.
    pub fn path_lengths_from(
        &self,
        source: SynsetId,
        targets: &[SynsetId],
        edges: EdgeSet,
    ) -> Vec<Option<u32>> {
        let mut out = vec![None; targets.len()];
        let Some(&start) = self.node_of.get(&source) else {
            return out;
        };
        let mut wanted: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, t) in targets.iter().enumerate() {
            if let Some(&n) = self.node_of.get(t) {
                wanted.entry(n).or_default().push(i);
            }
        }
        let mut remaining = wanted.len();
        if remaining == 0 {
            return out;
        }
        let mut dist = vec![NO_DEPTH; self.edges.len()];
        let mut queue = VecDeque::new();
        dist[start as usize] = 0;
        queue.push_back(start);
        while let Some(n) = queue.pop_front() {
            let d = dist[n as usize];
            if let Some(slots) = wanted.get(&n) {
                for &i in slots {
                    out[i] = Some(d);
                }
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
            }
            for &(m, kind) in &self.edges[n as usize] {
                if edges.admits(kind) && dist[m as usize] == NO_DEPTH {
                    dist[m as usize] = d + 1;
                    queue.push_back(m);
                }
            }
        }
        out
    }

    fn node(&self, id: SynsetId) -> Result<u32> {
        self.node_of
            .get(&id)
            .copied()
            .ok_or(Error::UnknownSynset(id))
    }

    fn id_of(&self, node: u32) -> SynsetId {
        let n = node as usize;
        if n < self.synsets.len() {
            self.synsets[n].id
        } else if n == self.synsets.len() {
            Self::virtual_root(Pos::Noun)
        } else {
            Self::virtual_root(Pos::Verb)
        }
    }
}

impl fmt::Debug for WordNetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordNetGraph")
            .field("synsets", &self.synsets.len())
            .field("lemmas", &self.index.len())
            .finish()
    }
}
