use approx::assert_relative_eq;
use ndarray::{array, Array2};

use super::*;
use crate::corpus::{ContextEntry, TermInstance};
use crate::pos::Pos;
use crate::similarity::{CrossPosStrategy, Measure};
use crate::testkit::MiniWordNet;
use crate::wordnet::{load_wordnet, Relation};

fn n(o: u32) -> SynsetId {
    SynsetId::new(Pos::Noun, o)
}

fn v(o: u32) -> SynsetId {
    SynsetId::new(Pos::Verb, o)
}

/// entity(1) > land(2) > {river(3), slope(4) "bank", deposit(7), feature(8)}
/// entity(1) > institution(5) "bank" > {deposit(6), feature(9)}
/// entity(1) > feature(12)
/// walk: verbs 10 and 11, the second derivationally related to river.
fn graph() -> (WordNetGraph, MiniWordNet) {
    let mut wn = MiniWordNet::new();
    wn.synset(Pos::Noun, 1, &["entity"], "g");
    wn.synset(Pos::Noun, 2, &["land"], "g");
    wn.synset(Pos::Noun, 3, &["river"], "g");
    wn.synset(Pos::Noun, 4, &["bank", "slope"], "sloping land");
    wn.synset(Pos::Noun, 5, &["bank", "institution"], "financial institution");
    wn.synset(Pos::Noun, 6, &["deposit"], "money in a bank");
    wn.synset(Pos::Noun, 7, &["deposit"], "sediment");
    wn.synset(Pos::Noun, 12, &["feature"], "g");
    wn.synset(Pos::Noun, 9, &["feature"], "g");
    wn.synset(Pos::Noun, 8, &["feature"], "g");
    wn.synset(Pos::Verb, 10, &["walk"], "use one's feet");
    wn.synset(Pos::Verb, 11, &["walk"], "walk along a river");
    for (child, parent) in [(2, 1), (3, 2), (4, 2), (7, 2), (8, 2), (5, 1), (6, 5), (9, 5), (12, 1)] {
        wn.isa(n(child), n(parent));
    }
    wn.link(v(11), Relation::Derivation, n(3));
    let dir = tempfile::tempdir().unwrap();
    wn.write(dir.path()).unwrap();
    (load_wordnet(dir.path()).unwrap(), wn)
}

fn config(cross_pos: CrossPosStrategy) -> EngineConfig {
    EngineConfig {
        similarity: SimilarityConfig {
            measure: Measure::Path,
            cross_pos,
            ..SimilarityConfig::default()
        },
        heuristic_source: HeuristicSource::Off,
        ..EngineConfig::default()
    }
}

fn sentence(id: &str, words: &[(&str, Pos)]) -> Sentence {
    Sentence {
        id: id.to_string(),
        tokens: words
            .iter()
            .enumerate()
            .map(|(i, &(lemma, pos))| TermInstance {
                instance_id: Some(format!("{id}.t{i}")),
                lemma: lemma.to_string(),
                pos: Some(pos),
                tag: pos.universal().to_string(),
                surface: lemma.to_string(),
                sentence_index: 0,
                position: i,
            })
            .collect(),
    }
}

fn context(graph: &WordNetGraph, words: &[(&str, Pos)]) -> DocumentContext {
    DocumentContext {
        entries: words
            .iter()
            .map(|&(lemma, pos)| ContextEntry {
                lemma: lemma.to_string(),
                pos,
                sense: graph.senses_of(lemma, pos)[0].clone(),
                tfidf: 1.0,
            })
            .collect(),
    }
}

fn keys(preds: &[Prediction]) -> Vec<(&str, &str)> {
    preds.iter().map(|p| (p.instance_id.as_str(), p.sense_key.as_str())).collect()
}

#[test]
fn monosemous_sentence_is_predicted_directly() {
    let (g, _) = graph();
    let engine = Engine::new(&g, None, None, config(CrossPosStrategy::Zero)).unwrap();
    let out = engine.disambiguate_sentence(&sentence("s", &[("river", Pos::Noun)]), &DocumentContext::default());
    assert_eq!(out.predictions.len(), 1);
    assert_eq!(out.predictions[0].synset, n(3));
    assert_eq!(out.predictions[0].provenance, Provenance::Scsmm);
}

#[test]
fn document_context_similarity() {
    let (g, _) = graph();
    let engine = Engine::new(&g, None, None, config(CrossPosStrategy::Zero)).unwrap();
    let slope = &g.senses_of("bank", Pos::Noun)[0];
    assert_eq!(engine.doc_ctx_sim(slope, &DocumentContext::default()), 1.0);
    assert_eq!(engine.doc_ctx_sim(slope, &context(&g, &[("slope", Pos::Noun)])), 1.0);
    // slope to river, land, institution: 2, 1 and 3 edges
    let ctx = context(&g, &[("river", Pos::Noun), ("land", Pos::Noun), ("institution", Pos::Noun)]);
    assert_relative_eq!(engine.doc_ctx_sim(slope, &ctx), (1.0 / 3.0 + 0.5 + 0.25) / 3.0);
    let off = EngineConfig {
        doc_ctx: false,
        ..config(CrossPosStrategy::Zero)
    };
    let engine = Engine::new(&g, None, None, off).unwrap();
    assert_eq!(engine.doc_ctx_sim(slope, &ctx), 1.0);
}

#[test]
fn unweighted_csm_is_the_similarity_matrix() {
    let (g, _) = graph();
    let cfg = EngineConfig {
        doc_ctx: false,
        similarity: SimilarityConfig {
            normalize_per_matrix: false,
            ..config(CrossPosStrategy::Zero).similarity
        },
        ..config(CrossPosStrategy::Zero)
    };
    let engine = Engine::new(&g, None, None, cfg).unwrap();
    let bank = g.senses_of("bank", Pos::Noun);
    let deposit = g.senses_of("deposit", Pos::Noun);
    let river = context(&g, &[("river", Pos::Noun)]);
    let with_ctx = engine.build_csm(bank, deposit, &river);
    let without = engine.build_csm(bank, deposit, &DocumentContext::default());
    assert_eq!(with_ctx, without);
    assert_eq!(with_ctx.values, with_ctx.raw);
    // rows slope, institution; columns deposit 6, deposit 7
    let expected: Array2<f64> = array![[0.2, 1.0 / 3.0], [0.5, 0.25]];
    for (a, b) in with_ctx.values.iter().zip(&expected) {
        assert_relative_eq!(a, b);
    }
}

#[test]
fn document_context_changes_the_choice() {
    let (g, _) = graph();
    let engine = Engine::new(&g, None, None, config(CrossPosStrategy::Zero)).unwrap();
    let s = sentence("s", &[("bank", Pos::Noun), ("deposit", Pos::Noun)]);
    let plain = engine.disambiguate_sentence(&s, &DocumentContext::default());
    let synsets: Vec<SynsetId> = plain.predictions.iter().map(|p| p.synset).collect();
    assert_eq!(synsets, [n(5), n(6)]);
    let river = engine.disambiguate_sentence(&s, &context(&g, &[("river", Pos::Noun)]));
    let synsets: Vec<SynsetId> = river.predictions.iter().map(|p| p.synset).collect();
    assert_eq!(synsets, [n(4), n(7)]);
}

#[test]
fn heuristics_reweight_the_matrix() {
    let (g, wn) = graph();
    let mut store = HeuristicStore::new();
    store.add(&wn.sense_key("bank", n(4)), 9);
    store.add(&wn.sense_key("bank", n(5)), 1);
    let cfg = EngineConfig {
        heuristic_source: HeuristicSource::SemCor,
        ..config(CrossPosStrategy::Zero)
    };
    let engine = Engine::new(&g, None, Some(&store), cfg).unwrap();
    let s = sentence("s", &[("bank", Pos::Noun), ("deposit", Pos::Noun)]);
    let out = engine.disambiguate_sentence(&s, &DocumentContext::default());
    // slope row now dominates: 0.9 * 1/3 against 0.1 * 0.5
    assert_eq!(out.predictions[0].synset, n(4));
    assert_eq!(out.predictions[1].synset, n(7));
}

#[test]
fn zero_linked_term_is_withheld_and_carried_forward() {
    let (g, wn) = graph();
    let mut store = HeuristicStore::new();
    store.add(&wn.sense_key("walk", v(11)), 5);
    store.add(&wn.sense_key("walk", v(10)), 2);
    let cfg = EngineConfig {
        heuristic_source: HeuristicSource::SemCor,
        ..config(CrossPosStrategy::Zero)
    };
    let engine = Engine::new(&g, None, Some(&store), cfg).unwrap();
    let s = sentence("s", &[("bank", Pos::Noun), ("walk", Pos::Verb), ("deposit", Pos::Noun)]);
    let out = engine.disambiguate_sentence(&s, &DocumentContext::default());
    assert_eq!(keys(&out.predictions).len(), 2);
    assert_eq!(out.pending.len(), 1);
    assert_eq!(out.pending[0].instance_id, "s.t1");
    let doc = Document {
        id: "d".into(),
        sentences: vec![s],
    };
    let result = engine.disambiguate_document(&doc, &DocumentContext::default());
    let walk = result.predictions.iter().find(|p| p.instance_id == "s.t1").unwrap();
    assert_eq!(walk.synset, v(11));
    assert_eq!(walk.provenance, Provenance::HeuristicOnly);
    // bank and deposit still chain across the withheld verb
    assert_eq!(result.predictions[0].synset, n(5));
    assert_eq!(result.predictions[0].provenance, Provenance::Scsmm);
}

#[test]
fn sentence_fallback_uses_chosen_senses() {
    let (g, _) = graph();
    let engine = Engine::new(&g, None, None, config(CrossPosStrategy::FullGraphPath)).unwrap();
    let walk = Pending {
        instance_id: "w".into(),
        senses: g.senses_of("walk", Pos::Verb),
    };
    assert_eq!(engine.fallback_sentence_context(&walk, &[]), None);
    let river = Prediction::new("r", &g.senses_of("river", Pos::Noun)[0], Provenance::Scsmm);
    let picked = engine.fallback_sentence_context(&walk, std::slice::from_ref(&river)).unwrap();
    // only walk 11 reaches river, through its derivation pointer
    assert_eq!(picked.synset, v(11));
    assert_eq!(picked.provenance, Provenance::SentenceFallback);

    let feature = Pending {
        instance_id: "f".into(),
        senses: g.senses_of("feature", Pos::Noun),
    };
    let slope = Prediction::new("b", &g.senses_of("bank", Pos::Noun)[0], Provenance::Scsmm);
    // means against river and slope: feature 12 -> 0.25, 9 -> 0.2, 8 -> 1/3
    let picked = engine.fallback_sentence_context(&feature, &[river, slope]).unwrap();
    assert_eq!(picked.synset, n(8));
}

#[test]
fn carry_forward_uses_the_whole_document() {
    let (g, _) = graph();
    let engine = Engine::new(&g, None, None, config(CrossPosStrategy::Zero)).unwrap();
    assert!(engine.carry_forward_document(&[], &[]).is_empty());
    let pending = [Pending {
        instance_id: "f".into(),
        senses: g.senses_of("feature", Pos::Noun),
    }];
    let chosen = [
        Prediction::new("a", &g.senses_of("institution", Pos::Noun)[0], Provenance::Scsmm),
        Prediction::new("b", &g.senses_of("deposit", Pos::Noun)[0], Provenance::Scsmm),
    ];
    // feature 12 -> (1/3 + 1/4) / 2, 9 -> (1/2 + 1/3) / 2, 8 -> (1/4 + 1/5) / 2
    let out = engine.carry_forward_document(&pending, &chosen);
    assert_eq!(out[0].synset, n(9));
    assert_eq!(out[0].provenance, Provenance::DocCarryForward);
    let verbs_only = [Prediction::new("w", &g.senses_of("walk", Pos::Verb)[0], Provenance::Scsmm)];
    let out = engine.carry_forward_document(&pending, &verbs_only);
    assert_eq!(out[0].provenance, Provenance::HeuristicOnly);
    assert_eq!(out[0].synset, n(12));
}

#[test]
fn coverage_accounts_for_every_target() {
    let (g, _) = graph();
    let engine = Engine::new(&g, None, None, config(CrossPosStrategy::FullGraphPath)).unwrap();
    let doc = Document {
        id: "d".into(),
        sentences: vec![
            sentence("a", &[("bank", Pos::Noun), ("xyzzy", Pos::Noun), ("walk", Pos::Verb)]),
            sentence("b", &[("feature", Pos::Noun), ("river", Pos::Noun), ("deposit", Pos::Noun)]),
            sentence("c", &[("plugh", Pos::Verb)]),
        ],
    };
    let result = engine.disambiguate_document(&doc, &DocumentContext::default());
    assert_eq!(result.skipped, ["a.t1", "c.t0"]);
    assert_eq!(result.predictions.len() + result.skipped.len(), 7);
    let ids: Vec<&str> = result.predictions.iter().map(|p| p.instance_id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(engine.disambiguate_document(&doc, &DocumentContext::default()), result);
}

#[test]
fn pos_filter_limits_predictions() {
    let (g, _) = graph();
    let cfg = EngineConfig {
        pos_of_interest: PosSet::of(&[Pos::Noun]),
        ..config(CrossPosStrategy::FullGraphPath)
    };
    let engine = Engine::new(&g, None, None, cfg).unwrap();
    let doc = Document {
        id: "d".into(),
        sentences: vec![sentence("a", &[("bank", Pos::Noun), ("walk", Pos::Verb), ("deposit", Pos::Noun)])],
    };
    let result = engine.disambiguate_document(&doc, &DocumentContext::default());
    assert_eq!(keys(&result.predictions).iter().map(|k| k.0).collect::<Vec<_>>(), ["a.t0", "a.t2"]);
}

#[test]
fn single_ambiguous_term_uses_weights_or_first_sense() {
    let (g, wn) = graph();
    let engine = Engine::new(&g, None, None, config(CrossPosStrategy::Zero)).unwrap();
    let s = sentence("s", &[("feature", Pos::Noun)]);
    let out = engine.disambiguate_sentence(&s, &DocumentContext::default());
    assert_eq!(out.predictions[0].synset, n(12));
    let mut store = HeuristicStore::new();
    store.add(&wn.sense_key("feature", n(9)), 3);
    let cfg = EngineConfig {
        heuristic_source: HeuristicSource::SemCor,
        ..config(CrossPosStrategy::Zero)
    };
    let engine = Engine::new(&g, None, Some(&store), cfg).unwrap();
    assert_eq!(engine.disambiguate_sentence(&s, &DocumentContext::default()).predictions[0].synset, n(9));
    let out = engine.disambiguate_sentence(&s, &context(&g, &[("river", Pos::Noun)]));
    // feature 8 is nearest to river but unseen: 1/3 * (1/3) against 1 * 0.2
    assert_eq!(out.predictions[0].synset, n(9));
}

#[test]
fn term_order_matters() {
    // A-B-C against A-C-B with the same pairwise matrices
    let ab = array![[1.0, 0.0], [0.0, 1.0]];
    let bc = array![[0.0, 1.0], [1.0, 0.0]];
    let ac = array![[1.0, 0.0], [0.0, 0.1]];
    let forward = backtrace(&scsmm(vec![ab, bc.clone()]).unwrap()).unwrap();
    let swapped = backtrace(&scsmm(vec![ac, bc.t().to_owned()]).unwrap()).unwrap();
    // (A, B, C) against (A, C, B)
    assert_eq!(forward, [0, 0, 1]);
    assert_eq!(swapped, [0, 0, 1]);
    let as_abc = [swapped[0], swapped[2], swapped[1]];
    assert_ne!(forward.as_slice(), as_abc);
}

#[test]
fn worked_example_matrices() {
    let table: Array2<f64> = array![
        [0.051, 0.053, 0.047, 0.045, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.048, 0.044, 0.044, 0.037, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.069, 0.072, 0.063, 0.059, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.042, 0.039, 0.039, 0.033, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.069, 0.072, 0.063, 0.059, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.065, 0.068, 0.060, 0.056, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.067, 0.077, 0.061, 0.058, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.066, 0.075, 0.061, 0.058, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.088, 0.069, 0.092, 0.055, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.065, 0.063, 0.059, 0.053, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    ];
    let plain = Csm::weighted(table.clone(), &[1.0; 10], &[1.0; 10], false);
    assert_eq!(backtrace(&scsmm(vec![plain.values]).unwrap()), Some(vec![8, 2]));
    let mut walk = vec![0.1 / 9.0; 10];
    walk[0] = 0.9;
    let mut bank = vec![0.0; 10];
    bank[..4].copy_from_slice(&[0.35, 0.5, 0.05, 0.025]);
    let weighted = Csm::weighted(table, &walk, &bank, false);
    assert_relative_eq!(weighted.values[[0, 1]], 0.0236, max_relative = 0.05);
    assert_eq!(backtrace(&scsmm(vec![weighted.values]).unwrap()), Some(vec![0, 1]));
}

#[test]
fn baselines() {
    let (g, wn) = graph();
    let doc = Document {
        id: "d".into(),
        sentences: vec![sentence("a", &[("bank", Pos::Noun), ("xyzzy", Pos::Noun), ("feature", Pos::Noun)])],
    };
    let first = wn1st_document(&g, &doc, PosSet::ALL);
    assert_eq!(first.predictions.iter().map(|p| p.synset).collect::<Vec<_>>(), [n(4), n(12)]);
    assert_eq!(first.skipped, ["a.t1"]);
    let mut store = HeuristicStore::new();
    store.add(&wn.sense_key("feature", n(8)), 4);
    store.add(&wn.sense_key("feature", n(9)), 4);
    let mfs = mfs_document(&g, &store, &doc, PosSet::ALL);
    assert_eq!(mfs.predictions.iter().map(|p| p.synset).collect::<Vec<_>>(), [n(4), n(9)]);
    assert!(mfs.predictions.iter().all(|p| p.provenance == Provenance::Baseline));
}

#[test]
fn pedersen_single_and_pair() {
    let (g, _) = graph();
    let sim = Similarity::new(&g, None, config(CrossPosStrategy::Zero).similarity).unwrap();
    let single = pedersen_sentence(&sim, &sentence("s", &[("feature", Pos::Noun)]), PosSet::ALL, 0.0);
    assert_eq!(single.predictions[0].synset, n(12));
    let pair = pedersen_sentence(&sim, &sentence("s", &[("bank", Pos::Noun), ("deposit", Pos::Noun)]), PosSet::ALL, 0.0);
    // bank rows peak at 1/3 and 1/2, deposit rows at 1/2 and 1/3
    assert_eq!(pair.predictions.iter().map(|p| p.synset).collect::<Vec<_>>(), [n(5), n(6)]);
}

#[test]
fn pedersen_matches_exhaustive_assignment_search() {
    let (g, _) = graph();
    let sim = Similarity::new(&g, None, config(CrossPosStrategy::Zero).similarity).unwrap();
    let words = [("bank", Pos::Noun), ("deposit", Pos::Noun), ("feature", Pos::Noun)];
    let senses: Vec<&[SenseEntry]> = words.iter().map(|&(l, p)| g.senses_of(l, p)).collect();
    for threshold in [0.0, 0.25, 0.4] {
        let objective = |assignment: &[usize]| -> f64 {
            let mut total = 0.0;
            for (t, &s) in assignment.iter().enumerate() {
                for (u, others) in senses.iter().enumerate() {
                    if u != t {
                        let best = others
                            .iter()
                            .map(|o| sim.similarity(senses[t][s].synset, o.synset))
                            .fold(0.0, f64::max);
                        if best > threshold {
                            total += best;
                        }
                    }
                }
            }
            total
        };
        let mut best: Option<(Vec<usize>, f64)> = None;
        for a in 0..senses[0].len() {
            for b in 0..senses[1].len() {
                for c in 0..senses[2].len() {
                    let score = objective(&[a, b, c]);
                    if best.as_ref().is_none_or(|(_, s)| score > *s + 1e-15) {
                        best = Some((vec![a, b, c], score));
                    }
                }
            }
        }
        let expected: Vec<SynsetId> = best.unwrap().0.iter().zip(&senses).map(|(&i, s)| s[i].synset).collect();
        let got = pedersen_sentence(&sim, &sentence("s", &words), PosSet::ALL, threshold);
        assert_eq!(got.predictions.iter().map(|p| p.synset).collect::<Vec<_>>(), expected, "threshold {threshold}");
    }
}
