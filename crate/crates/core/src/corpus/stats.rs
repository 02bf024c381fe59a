use std::collections::BTreeMap;

use super::Document;
use crate::pos::Pos;
use crate::wordnet::WordNetGraph;

/// Sense-count distribution over ambiguous targets.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Granularity {
    pub n_ambiguous: usize,
    pub mean: f64,
    pub max: usize,
    /// Smallest of the most frequent sense counts.
    pub mode: usize,
    pub median: f64,
}

impl Granularity {
    fn from_counts(mut counts: Vec<usize>) -> Self {
        if counts.is_empty() {
            return Granularity::default();
        }
        counts.sort_unstable();
        let n = counts.len();
        let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &counts {
            *freq.entry(c).or_default() += 1;
        }
        // max_by_key keeps the last maximum, so walk in reverse for the smallest
        let mode = freq.iter().rev().max_by_key(|(_, &f)| f).map(|(&c, _)| c).unwrap_or(0);
        let median = if n % 2 == 1 {
            counts[n / 2] as f64
        } else {
            (counts[n / 2 - 1] + counts[n / 2]) as f64 / 2.0
        };
        Granularity {
            n_ambiguous: n,
            mean: counts.iter().sum::<usize>() as f64 / n as f64,
            max: counts[n - 1],
            mode,
            median,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PosStats {
    pub n_terms: usize,
    pub granularity: Granularity,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DatasetStats {
    pub n_docs: usize,
    /// Sentences holding at least one target.
    pub n_sentences: usize,
    pub n_terms: usize,
    /// `n_terms / n_sentences`, rounded to the nearest integer.
    pub avg_sentence_size: usize,
    pub mean_sentence_size: f64,
    pub n_monosemous: usize,
    pub n_ambiguous: usize,
    /// Targets whose lemma is missing from WordNet.
    pub n_unknown: usize,
    pub ambiguity_rate: f64,
    pub per_pos: BTreeMap<Pos, PosStats>,
    pub granularity: Granularity,
}

impl DatasetStats {
    /// Every figure as `(name, value)` pairs in a fixed order.
    pub fn rows(&self) -> Vec<(String, String)> {
        let mut rows = vec![
            ("docs".to_string(), self.n_docs.to_string()),
            ("sentences".to_string(), self.n_sentences.to_string()),
            ("terms".to_string(), self.n_terms.to_string()),
            ("avg_sentence_size".to_string(), self.avg_sentence_size.to_string()),
            ("mean_sentence_size".to_string(), format!("{:.3}", self.mean_sentence_size)),
            ("monosemous".to_string(), self.n_monosemous.to_string()),
            ("ambiguous".to_string(), self.n_ambiguous.to_string()),
            ("unknown".to_string(), self.n_unknown.to_string()),
            ("ambiguity_rate".to_string(), format!("{:.4}", self.ambiguity_rate)),
        ];
        fn push_granularity(rows: &mut Vec<(String, String)>, prefix: &str, g: &Granularity) {
            rows.push((format!("{prefix}ambiguous"), g.n_ambiguous.to_string()));
            rows.push((format!("{prefix}granularity_mean"), format!("{:.3}", g.mean)));
            rows.push((format!("{prefix}granularity_max"), g.max.to_string()));
            rows.push((format!("{prefix}granularity_mode"), g.mode.to_string()));
            rows.push((format!("{prefix}granularity_median"), g.median.to_string()));
        }
        push_granularity(&mut rows, "all.", &self.granularity);
        for pos in Pos::ALL {
            let s = self.per_pos.get(&pos).cloned().unwrap_or_default();
            let prefix = format!("{}.", pos.file_suffix());
            rows.push((format!("{prefix}terms"), s.n_terms.to_string()));
            push_granularity(&mut rows, &prefix, &s.granularity);
        }
        rows
    }
}

pub fn dataset_stats(docs: &[Document], graph: &WordNetGraph) -> DatasetStats {
    let mut stats = DatasetStats {
        n_docs: docs.len(),
        ..Default::default()
    };
    let mut all = Vec::new();
    let mut by_pos: BTreeMap<Pos, (usize, Vec<usize>)> = BTreeMap::new();
    for sent in docs.iter().flat_map(|d| &d.sentences) {
        let mut any = false;
        for t in sent.targets() {
            any = true;
            stats.n_terms += 1;
            let pos = t.pos.expect("targets always carry a POS");
            let entry = by_pos.entry(pos).or_default();
            entry.0 += 1;
            match graph.senses_of(&t.lookup_lemma(), pos).len() {
                0 => stats.n_unknown += 1,
                1 => stats.n_monosemous += 1,
                k => {
                    stats.n_ambiguous += 1;
                    all.push(k);
                    entry.1.push(k);
                }
            }
        }
        stats.n_sentences += usize::from(any);
    }
    if stats.n_sentences > 0 {
        stats.mean_sentence_size = stats.n_terms as f64 / stats.n_sentences as f64;
        stats.avg_sentence_size = stats.mean_sentence_size.round() as usize;
    }
    if stats.n_terms > 0 {
        stats.ambiguity_rate = stats.n_ambiguous as f64 / stats.n_terms as f64;
    }
    stats.granularity = Granularity::from_counts(all);
    stats.per_pos = by_pos
        .into_iter()
        .map(|(pos, (n_terms, counts))| {
            (
                pos,
                PosStats {
                    n_terms,
                    granularity: Granularity::from_counts(counts),
                },
            )
        })
        .collect();
    stats
}
