//! Reference systems: WordNet first sense, most frequent sense, and
//! maximum relatedness over the sentence.

use super::{argmax, resolve_targets, DocumentResult, Prediction, Provenance};
use crate::corpus::{Document, Sentence};
use crate::heuristics::HeuristicStore;
use crate::pos::PosSet;
use crate::similarity::Similarity;
use crate::wordnet::{SenseEntry, WordNetGraph};

fn per_target(
    graph: &WordNetGraph,
    doc: &Document,
    pos: PosSet,
    mut choose: impl FnMut(&[SenseEntry]) -> usize,
) -> DocumentResult {
    let mut result = DocumentResult::default();
    for sentence in &doc.sentences {
        let (targets, skipped) = resolve_targets(graph, sentence, pos);
        result.skipped.extend(skipped);
        for (id, senses) in targets {
            result
                .predictions
                .push(Prediction::new(id, &senses[choose(senses)], Provenance::Baseline));
        }
    }
    result.predictions.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    result
}

pub fn wn1st_document(graph: &WordNetGraph, doc: &Document, pos: PosSet) -> DocumentResult {
    per_target(graph, doc, pos, |_| 0)
}

pub fn mfs_document(graph: &WordNetGraph, store: &HeuristicStore, doc: &Document, pos: PosSet) -> DocumentResult {
    per_target(graph, doc, pos, |senses| {
        let counts: Vec<f64> = senses.iter().map(|s| store.sense_count(&s.sense_key) as f64).collect();
        argmax(&counts).unwrap_or(0)
    })
}

/// Maximum relatedness: each target takes the sense whose summed best
/// similarity to the other targets of the sentence is largest. Only
/// similarities above `threshold` contribute.
pub fn pedersen_sentence(sim: &Similarity<'_>, sentence: &Sentence, pos: PosSet, threshold: f64) -> DocumentResult {
    let (targets, skipped) = resolve_targets(sim.graph(), sentence, pos);
    let mut predictions = Vec::new();
    for (t, &(id, senses)) in targets.iter().enumerate() {
        let rows: Vec<_> = senses.iter().map(|s| s.synset).collect();
        let mut scores = vec![0.0; senses.len()];
        for (u, &(_, others)) in targets.iter().enumerate() {
            if u == t {
                continue;
            }
            let cols: Vec<_> = others.iter().map(|s| s.synset).collect();
            let m = sim.matrix(&rows, &cols);
            for (i, row) in m.rows().into_iter().enumerate() {
                let best = row.iter().copied().fold(0.0, f64::max);
                if best > threshold {
                    scores[i] += best;
                }
            }
        }
        let pick = argmax(&scores).unwrap_or(0);
        predictions.push(Prediction::new(id, &senses[pick], Provenance::Baseline));
    }
    DocumentResult { predictions, skipped }
}

pub fn pedersen_document(sim: &Similarity<'_>, doc: &Document, pos: PosSet, threshold: f64) -> DocumentResult {
    let mut result = DocumentResult::default();
    for sentence in &doc.sentences {
        let out = pedersen_sentence(sim, sentence, pos, threshold);
        result.predictions.extend(out.predictions);
        result.skipped.extend(out.skipped);
    }
    result.predictions.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    result
}
