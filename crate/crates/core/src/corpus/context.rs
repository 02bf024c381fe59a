//! Per-document context: monosemous terms with a nonzero tf-idf weight.

use std::collections::{BTreeMap, HashMap};

use super::{wordnet_lemma, Document};
use crate::pos::{Pos, PosSet};
use crate::wordnet::{SenseEntry, WordNetGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct ContextEntry {
    pub lemma: String,
    pub pos: Pos,
    pub sense: SenseEntry,
    pub tfidf: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DocumentContext {
    /// Sorted by lemma, then POS.
    pub entries: Vec<ContextEntry>,
}

impl DocumentContext {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

fn term_frequencies(doc: &Document) -> BTreeMap<(String, Pos), usize> {
    let mut tf = BTreeMap::new();
    for tok in doc.sentences.iter().flat_map(|s| &s.tokens) {
        if let Some(pos) = tok.pos {
            *tf.entry((wordnet_lemma(&tok.lemma), pos)).or_default() += 1;
        }
    }
    tf
}

/// Builds the context of every document. Term frequency is the raw count
/// in the document; idf is `ln(N / df)` over the given documents. Both
/// targets and plain tokens count.
pub fn document_contexts(docs: &[Document], graph: &WordNetGraph, pos: PosSet) -> Vec<DocumentContext> {
    let tfs: Vec<_> = docs.iter().map(term_frequencies).collect();
    let mut df: HashMap<&(String, Pos), usize> = HashMap::new();
    for tf in &tfs {
        for term in tf.keys() {
            *df.entry(term).or_default() += 1;
        }
    }
    let n = docs.len() as f64;
    tfs.iter()
        .map(|tf| {
            let entries = tf
                .iter()
                .filter(|((_, p), _)| pos.contains(*p))
                .filter_map(|(term @ (lemma, p), &count)| {
                    let senses = graph.senses_of(lemma, *p);
                    let tfidf = count as f64 * (n / df[term] as f64).ln();
                    (senses.len() == 1 && tfidf > 0.0).then(|| ContextEntry {
                        lemma: lemma.clone(),
                        pos: *p,
                        sense: senses[0].clone(),
                        tfidf,
                    })
                })
                .collect();
            DocumentContext { entries }
        })
        .collect()
}
