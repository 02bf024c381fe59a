//! Sense-to-sense semantic similarity over the WordNet graph.

use std::fmt;
use std::str::FromStr;

use dashmap::DashMap;
use ndarray::Array2;

use crate::error::{Error, Result};
use crate::ic::IcTable;
use crate::wordnet::{EdgeSet, SynsetId, WordNetGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Path,
    Lch,
    Wup,
    Jcn,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::Path, Measure::Lch, Measure::Wup, Measure::Jcn];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Path => "path",
            Measure::Lch => "lch",
            Measure::Wup => "wup",
            Measure::Jcn => "jcn",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownOption {
                what: "similarity measure",
                value: s.to_string(),
            })
    }
}

/// What to do with pairs the configured measure cannot relate: senses of
/// different parts of speech, and adjective or adverb pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossPosStrategy {
    Zero,
    /// Path similarity over every relation type, walked in both directions.
    FullGraphPath,
}

impl FromStr for CrossPosStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(CrossPosStrategy::Zero),
            "full-graph-path" | "path" => Ok(CrossPosStrategy::FullGraphPath),
            _ => Err(Error::UnknownOption {
                what: "cross-POS strategy",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityConfig {
    pub measure: Measure,
    /// JCN value used when the distance is (numerically) zero.
    pub jcn_cap: f64,
    pub cross_pos: CrossPosStrategy,
    pub normalize_per_matrix: bool,
}

impl Default for SimilarityConfig {
    fn default() -> Self {
        SimilarityConfig {
            measure: Measure::Jcn,
            jcn_cap: 1e6,
            cross_pos: CrossPosStrategy::FullGraphPath,
            normalize_per_matrix: true,
        }
    }
}

const JCN_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Plan {
    Zero,
    /// Needs a path length over these edges.
    Walk(EdgeSet, bool),
    /// Needs the least common subsumer.
    Subsumer,
}

/// Similarity oracle bound to one graph, IC table and configuration.
/// Results are memoized per unordered pair, so one instance can be shared
/// between threads.
pub struct Similarity<'a> {
    graph: &'a WordNetGraph,
    ic: Option<&'a IcTable>,
    cfg: SimilarityConfig,
    memo: DashMap<(SynsetId, SynsetId), f64>,
}

impl<'a> Similarity<'a> {
    pub fn new(graph: &'a WordNetGraph, ic: Option<&'a IcTable>, cfg: SimilarityConfig) -> Result<Self> {
        if cfg.measure == Measure::Jcn && ic.is_none() {
            return Err(Error::MissingIc);
        }
        if !(cfg.jcn_cap > 0.0 && cfg.jcn_cap.is_finite()) {
            return Err(Error::UnknownOption {
                what: "JCN cap",
                value: cfg.jcn_cap.to_string(),
            });
        }
        Ok(Similarity {
            graph,
            ic,
            cfg,
            memo: DashMap::new(),
        })
    }

    pub fn config(&self) -> &SimilarityConfig {
        &self.cfg
    }

    pub fn graph(&self) -> &'a WordNetGraph {
        self.graph
    }

    /// Symmetric, nonnegative and finite.
    pub fn similarity(&self, a: SynsetId, b: SynsetId) -> f64 {
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let v = match self.plan(key.0, key.1) {
            Plan::Zero => 0.0,
            Plan::Walk(edges, taxonomic) => {
                let len = self.graph.shortest_path_len(key.0, key.1, edges);
                self.score_path_len(key.0, len, taxonomic)
            }
            Plan::Subsumer => self.score_subsumer(key.0, key.1),
        };
        self.memo.insert(key, v);
        v
    }

    /// `rows × cols` similarity matrix. Path-based cells of a row share one
    /// graph search.
    pub fn matrix(&self, rows: &[SynsetId], cols: &[SynsetId]) -> Array2<f64> {
        let mut m = Array2::zeros((rows.len(), cols.len()));
        for (i, &a) in rows.iter().enumerate() {
            let mut walks: Vec<(EdgeSet, bool, Vec<usize>)> = Vec::new();
            for (j, &b) in cols.iter().enumerate() {
                let key = if a <= b { (a, b) } else { (b, a) };
                if let Some(v) = self.memo.get(&key) {
                    m[[i, j]] = *v;
                    continue;
                }
                match self.plan(a, b) {
                    Plan::Walk(edges, taxonomic) => {
                        match walks.iter_mut().find(|w| w.0 == edges && w.1 == taxonomic) {
                            Some(w) => w.2.push(j),
                            None => walks.push((edges, taxonomic, vec![j])),
                        }
                    }
                    _ => m[[i, j]] = self.similarity(a, b),
                }
            }
            for (edges, taxonomic, js) in walks {
                let targets: Vec<SynsetId> = js.iter().map(|&j| cols[j]).collect();
                let lens = self.graph.path_lengths_from(a, &targets, edges);
                for (&j, len) in js.iter().zip(lens) {
                    let v = self.score_path_len(a, len, taxonomic);
                    let b = cols[j];
                    self.memo.insert(if a <= b { (a, b) } else { (b, a) }, v);
                    m[[i, j]] = v;
                }
            }
        }
        m
    }

    fn plan(&self, a: SynsetId, b: SynsetId) -> Plan {
        if a.pos == b.pos && a.pos.has_taxonomy() {
            return match self.cfg.measure {
                Measure::Path | Measure::Lch => Plan::Walk(EdgeSet::taxonomy(), true),
                Measure::Wup | Measure::Jcn => Plan::Subsumer,
            };
        }
        match self.cfg.cross_pos {
            CrossPosStrategy::Zero => Plan::Zero,
            CrossPosStrategy::FullGraphPath => Plan::Walk(EdgeSet::all_relations(), false),
        }
    }

    fn score_path_len(&self, a: SynsetId, len: Option<u32>, taxonomic: bool) -> f64 {
        let Some(len) = len else { return 0.0 };
        if taxonomic && self.cfg.measure == Measure::Lch {
            let nodes = f64::from(len + 1);
            let d = f64::from(self.graph.max_depth(a.pos));
            let v = -(nodes / (2.0 * d)).ln();
            debug_assert!(v >= 0.0, "LCH path of {nodes} nodes exceeds 2 * {d}");
            return v.max(0.0);
        }
        1.0 / (1.0 + f64::from(len))
    }

    fn score_subsumer(&self, a: SynsetId, b: SynsetId) -> f64 {
        let Ok(lcs) = self.graph.lcs(a, b) else {
            return 0.0;
        };
        match self.cfg.measure {
            Measure::Wup => {
                let depth = |x| f64::from(self.graph.depth(x).unwrap_or(0));
                let total = depth(a) + depth(b);
                if total == 0.0 {
                    0.0
                } else {
                    2.0 * depth(lcs) / total
                }
            }
            _ => {
                let table = self.ic.expect("checked at construction");
                let ic = |x| table.ic(x).unwrap_or(f64::INFINITY);
                let (ia, ib, il) = (ic(a), ic(b), ic(lcs));
                // unseen synsets have infinite IC and are unrelated to anything
                if ia.is_infinite() || ib.is_infinite() {
                    return 0.0;
                }
                let distance = ia + ib - 2.0 * il;
                if distance < JCN_EPSILON {
                    self.cfg.jcn_cap
                } else {
                    1.0 / distance
                }
            }
        }
    }
}
