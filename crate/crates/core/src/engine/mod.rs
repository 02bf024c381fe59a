//! Sentence-level disambiguation by sequential multiplication of contextual
//! similarity matrices, with sentence and document fallbacks.

mod baseline;
mod chain;

use std::collections::HashMap;
use std::fmt;

use ndarray::Array2;

pub use baseline::{mfs_document, pedersen_document, pedersen_sentence, wn1st_document};
pub use chain::{backtrace, scsmm, Csm, ProductChain};

use crate::corpus::{Document, DocumentContext, Sentence};
use crate::error::Result;
use crate::heuristics::{HeuristicSource, HeuristicStore};
use crate::ic::IcTable;
use crate::pos::PosSet;
use crate::similarity::{Similarity, SimilarityConfig};
use crate::wordnet::{SenseEntry, SynsetId, WordNetGraph};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub similarity: SimilarityConfig,
    pub heuristic_source: HeuristicSource,
    pub doc_ctx: bool,
    pub doc_cf: bool,
    pub pos_of_interest: PosSet,
    pub doc_ctx_pos: PosSet,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            similarity: SimilarityConfig::default(),
            heuristic_source: HeuristicSource::SemCor,
            doc_ctx: true,
            doc_cf: true,
            pos_of_interest: PosSet::ALL,
            doc_ctx_pos: PosSet::NOUN_VERB,
        }
    }
}

/// How a prediction was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Scsmm,
    SentenceFallback,
    DocCarryForward,
    HeuristicOnly,
    Baseline,
}

impl Provenance {
    pub const ALL: [Provenance; 5] = [
        Provenance::Scsmm,
        Provenance::SentenceFallback,
        Provenance::DocCarryForward,
        Provenance::HeuristicOnly,
        Provenance::Baseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Provenance::Scsmm => "scsmm",
            Provenance::SentenceFallback => "sentence-fallback",
            Provenance::DocCarryForward => "doc-carry-forward",
            Provenance::HeuristicOnly => "heuristic-only",
            Provenance::Baseline => "baseline",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub instance_id: String,
    pub sense_key: String,
    pub synset: SynsetId,
    pub provenance: Provenance,
}

impl Prediction {
    fn new(instance_id: &str, sense: &SenseEntry, provenance: Provenance) -> Self {
        Prediction {
            instance_id: instance_id.to_string(),
            sense_key: sense.sense_key.clone(),
            synset: sense.synset,
            provenance,
        }
    }
}

/// A target still waiting for a sense.
#[derive(Debug, Clone)]
pub struct Pending<'g> {
    pub instance_id: String,
    pub senses: &'g [SenseEntry],
}

#[derive(Debug, Clone, Default)]
pub struct SentenceOutcome<'g> {
    pub predictions: Vec<Prediction>,
    /// Targets without local or sentence context.
    pub pending: Vec<Pending<'g>>,
    /// Targets whose lemma is not in WordNet.
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DocumentResult {
    /// Sorted by instance id.
    pub predictions: Vec<Prediction>,
    pub skipped: Vec<String>,
}

/// Looks up the senses of every target of interest in sentence order.
/// Returns the resolved targets and the ids of unknown lemmas.
pub(crate) fn resolve_targets<'s, 'g>(
    graph: &'g WordNetGraph,
    sentence: &'s Sentence,
    pos: PosSet,
) -> (Vec<(&'s str, &'g [SenseEntry])>, Vec<String>) {
    let mut found = Vec::new();
    let mut skipped = Vec::new();
    for t in sentence.targets() {
        let (Some(id), Some(p)) = (t.instance_id.as_deref(), t.pos) else {
            continue;
        };
        if !pos.contains(p) {
            continue;
        }
        let senses = graph.senses_of(&t.lookup_lemma(), p);
        if senses.is_empty() {
            skipped.push(id.to_string());
        } else {
            found.push((id, senses));
        }
    }
    (found, skipped)
}

/// First index holding the maximum; `None` for an empty slice.
fn argmax(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        if best.is_none_or(|b| v > values[b]) {
            best = Some(i);
        }
    }
    best
}

pub struct Engine<'a> {
    sim: Similarity<'a>,
    heuristics: Option<&'a HeuristicStore>,
    cfg: EngineConfig,
}

impl<'a> Engine<'a> {
    /// `heuristics` is ignored when the configured source is `Off`.
    pub fn new(
        graph: &'a WordNetGraph,
        ic: Option<&'a IcTable>,
        heuristics: Option<&'a HeuristicStore>,
        cfg: EngineConfig,
    ) -> Result<Self> {
        Ok(Engine {
            sim: Similarity::new(graph, ic, cfg.similarity)?,
            heuristics: heuristics.filter(|_| cfg.heuristic_source != HeuristicSource::Off),
            cfg,
        })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.cfg
    }

    pub fn similarity(&self) -> &Similarity<'a> {
        &self.sim
    }

    pub fn graph(&self) -> &'a WordNetGraph {
        self.sim.graph()
    }

    pub fn heuristic(&self, sense: &SenseEntry) -> f64 {
        self.heuristics.map_or(1.0, |h| h.heuristic(sense))
    }

    /// Mean similarity of a sense to the document context; the neutral 1
    /// when the context is empty or disabled.
    pub fn doc_ctx_sim(&self, sense: &SenseEntry, ctx: &DocumentContext) -> f64 {
        if !self.cfg.doc_ctx || ctx.is_empty() {
            return 1.0;
        }
        let synsets: Vec<SynsetId> = ctx.entries.iter().map(|e| e.sense.synset).collect();
        self.sim.matrix(&[sense.synset], &synsets).mean().unwrap_or(0.0)
    }

    fn sense_weights(&self, senses: &[SenseEntry], ctx: &DocumentContext) -> Vec<f64> {
        senses
            .iter()
            .map(|s| self.heuristic(s) * self.doc_ctx_sim(s, ctx))
            .collect()
    }

    fn raw_matrix(&self, prev: &[SenseEntry], curr: &[SenseEntry]) -> Array2<f64> {
        let rows: Vec<SynsetId> = prev.iter().map(|s| s.synset).collect();
        let cols: Vec<SynsetId> = curr.iter().map(|s| s.synset).collect();
        self.sim.matrix(&rows, &cols)
    }

    pub fn build_csm(&self, prev: &[SenseEntry], curr: &[SenseEntry], ctx: &DocumentContext) -> Csm {
        Csm::weighted(
            self.raw_matrix(prev, curr),
            &self.sense_weights(prev, ctx),
            &self.sense_weights(curr, ctx),
            self.cfg.similarity.normalize_per_matrix,
        )
    }

    /// Index of the sense with the highest mean similarity to `context`.
    /// `None` when the context is empty or every mean is zero.
    pub fn best_by_context(&self, senses: &[SenseEntry], context: &[SynsetId]) -> Option<usize> {
        if context.is_empty() {
            return None;
        }
        let rows: Vec<SynsetId> = senses.iter().map(|s| s.synset).collect();
        let means: Vec<f64> = self
            .sim
            .matrix(&rows, context)
            .rows()
            .into_iter()
            .map(|r| r.mean().unwrap_or(0.0))
            .collect();
        argmax(&means).filter(|&i| means[i] > 0.0)
    }

    fn heuristic_choice(&self, senses: &[SenseEntry]) -> usize {
        let h: Vec<f64> = senses.iter().map(|s| self.heuristic(s)).collect();
        argmax(&h).unwrap_or(0)
    }

    /// Resolves a withheld target against the senses already chosen in its
    /// sentence.
    pub fn fallback_sentence_context(&self, pending: &Pending<'_>, chosen: &[Prediction]) -> Option<Prediction> {
        let context: Vec<SynsetId> = chosen
            .iter()
            .filter(|p| p.instance_id != pending.instance_id)
            .map(|p| p.synset)
            .collect();
        self.best_by_context(pending.senses, &context)
            .map(|i| Prediction::new(&pending.instance_id, &pending.senses[i], Provenance::SentenceFallback))
    }

    /// Resolves carried-forward targets against every sense chosen in the
    /// document, falling back to the most probable sense.
    pub fn carry_forward_document(&self, pending: &[Pending<'_>], chosen: &[Prediction]) -> Vec<Prediction> {
        let mut context: Vec<SynsetId> = chosen.iter().map(|p| p.synset).collect();
        let mut out = Vec::new();
        for p in pending {
            let prediction = match self.best_by_context(p.senses, &context) {
                Some(i) => Prediction::new(&p.instance_id, &p.senses[i], Provenance::DocCarryForward),
                None => Prediction::new(
                    &p.instance_id,
                    &p.senses[self.heuristic_choice(p.senses)],
                    Provenance::HeuristicOnly,
                ),
            };
            context.push(prediction.synset);
            out.push(prediction);
        }
        out
    }

    /// Runs the chain over one sentence. Targets left without any context
    /// come back as `pending`.
    pub fn disambiguate_sentence(&self, sentence: &Sentence, ctx: &DocumentContext) -> SentenceOutcome<'a> {
        let (targets, skipped) = resolve_targets(self.graph(), sentence, self.cfg.pos_of_interest);
        let mut predictions = Vec::new();
        let mut ambiguous = Vec::new();
        for &(id, senses) in &targets {
            if senses.len() == 1 {
                predictions.push(Prediction::new(id, &senses[0], Provenance::Scsmm));
            } else {
                ambiguous.push((id, senses));
            }
        }

        let (active, withheld) = self.withhold(&ambiguous);
        match active.len() {
            0 => {}
            1 => {
                let (id, senses) = ambiguous[active[0]];
                let weights = self.sense_weights(senses, ctx);
                let pick = argmax(&weights).unwrap_or(0);
                predictions.push(Prediction::new(id, &senses[pick], Provenance::Scsmm));
            }
            _ => {
                let csms: Vec<Array2<f64>> = active
                    .windows(2)
                    .map(|w| self.build_csm(ambiguous[w[0]].1, ambiguous[w[1]].1, ctx).values)
                    .collect();
                let chain = scsmm(csms).expect("consecutive matrices share a term");
                match backtrace(&chain) {
                    Some(picks) => {
                        for (&t, &s) in active.iter().zip(&picks) {
                            let (id, senses) = ambiguous[t];
                            predictions.push(Prediction::new(id, &senses[s], Provenance::Scsmm));
                        }
                    }
                    None => log::debug!("sentence {}: chain product is all zero", sentence.id),
                }
            }
        }

        // anything not chosen above falls back, in sentence order
        let mut pending = Vec::new();
        for &(id, senses) in &ambiguous {
            if predictions.iter().any(|p| p.instance_id == id) {
                continue;
            }
            let item = Pending {
                instance_id: id.to_string(),
                senses,
            };
            match self.fallback_sentence_context(&item, &predictions) {
                Some(p) => predictions.push(p),
                None => pending.push(item),
            }
        }
        if !withheld.is_empty() {
            log::trace!("sentence {}: {} terms without local context", sentence.id, withheld.len());
        }
        SentenceOutcome {
            predictions,
            pending,
            skipped,
        }
    }

    /// Splits ambiguous targets into those that stay in the chain and those
    /// whose every link has zero plain similarity. Interior terms are
    /// dropped before chain ends, so a bad middle term does not take its
    /// neighbours with it; removal repeats until the re-linked chain is
    /// stable.
    fn withhold(&self, ambiguous: &[(&str, &[SenseEntry])]) -> (Vec<usize>, Vec<usize>) {
        let mut active: Vec<usize> = (0..ambiguous.len()).collect();
        let mut withheld = Vec::new();
        let mut zero_cache: HashMap<(usize, usize), bool> = HashMap::new();
        while active.len() >= 2 {
            let zero: Vec<bool> = active
                .windows(2)
                .map(|w| {
                    *zero_cache.entry((w[0], w[1])).or_insert_with(|| {
                        self.raw_matrix(ambiguous[w[0]].1, ambiguous[w[1]].1)
                            .iter()
                            .all(|&v| v == 0.0)
                    })
                })
                .collect();
            let last = active.len() - 1;
            let isolated: Vec<usize> = (0..active.len())
                .filter(|&p| (p == 0 || zero[p - 1]) && (p == last || zero[p]))
                .collect();
            let interior: Vec<usize> = isolated.iter().copied().filter(|&p| p > 0 && p < last).collect();
            let drop = if interior.is_empty() { isolated } else { interior };
            if drop.is_empty() {
                break;
            }
            for &p in drop.iter().rev() {
                withheld.push(active.remove(p));
            }
        }
        withheld.sort_unstable();
        (active, withheld)
    }

    pub fn disambiguate_document(&self, doc: &Document, ctx: &DocumentContext) -> DocumentResult {
        let mut predictions = Vec::new();
        let mut pending = Vec::new();
        let mut skipped = Vec::new();
        for sentence in &doc.sentences {
            let out = self.disambiguate_sentence(sentence, ctx);
            predictions.extend(out.predictions);
            pending.extend(out.pending);
            skipped.extend(out.skipped);
        }
        let resolved = if self.cfg.doc_cf {
            self.carry_forward_document(&pending, &predictions)
        } else {
            pending
                .iter()
                .map(|p| Prediction::new(&p.instance_id, &p.senses[self.heuristic_choice(p.senses)], Provenance::HeuristicOnly))
                .collect()
        };
        predictions.extend(resolved);
        predictions.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
        DocumentResult { predictions, skipped }
    }
}

#[cfg(test)]
mod tests;
