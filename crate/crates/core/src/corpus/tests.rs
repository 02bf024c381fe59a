use std::path::Path;

use proptest::prelude::*;

use super::*;
use crate::pos::PosSet;
use crate::testkit::MiniWordNet;
use crate::wordnet::{load_wordnet, WordNetGraph};

const SAMPLE: &str = r#"<?xml version="1.0" encoding="UTF-8" ?>
<corpus lang="en" source="sample">
<text id="d000">
<sentence id="d000.s000">
<wf lemma="I" pos="PRON">I</wf>
<instance id="d000.s000.t000" lemma="walk" pos="VERB">walking</instance>
<wf lemma="to" pos="PRT">to</wf>
<wf lemma="the" pos="DET">the</wf>
<instance id="d000.s000.t001" lemma="bank" pos="NOUN">bank</instance>
</sentence>
<sentence id="d000.s001">
<wf lemma="." pos=".">.</wf>
</sentence>
</text>
<text id="d001">
<sentence id="d001.s000">
<instance id="d001.s000.t000" lemma="river" pos="NOUN">river</instance>
<wf lemma="river" pos="NOUN">river</wf>
</sentence>
</text>
</corpus>
"#;

fn parse(text: &str) -> Result<Vec<Document>> {
    parse_dataset_str(text, Path::new("sample.xml"))
}

/// bank (2 senses), river, stone, walk (verb) are in WordNet.
fn graph() -> WordNetGraph {
    let mut wn = MiniWordNet::new();
    wn.synset(Pos::Noun, 1, &["bank"], "sloping land");
    wn.synset(Pos::Noun, 2, &["bank"], "institution");
    wn.synset(Pos::Noun, 3, &["river"], "stream");
    wn.synset(Pos::Noun, 4, &["stone"], "rock");
    wn.synset(Pos::Verb, 5, &["walk"], "move on foot");
    let dir = tempfile::tempdir().unwrap();
    wn.write(dir.path()).unwrap();
    load_wordnet(dir.path()).unwrap()
}

#[test]
fn sample_parses_in_order() {
    let docs = parse(SAMPLE).unwrap();
    assert_eq!(docs.len(), 2);
    assert_eq!(docs[0].id, "d000");
    assert_eq!(docs[0].sentences.len(), 2);
    let targets: Vec<_> = docs[0].targets().collect();
    assert_eq!(targets.len(), 2);
    assert_eq!(targets[0].instance_id.as_deref(), Some("d000.s000.t000"));
    assert_eq!(targets[0].pos, Some(Pos::Verb));
    assert_eq!(targets[0].surface, "walking");
    assert_eq!(targets[1].position, 4);
    assert_eq!(docs[0].sentences[0].tokens[0].pos, None);
    assert_eq!(docs[1].targets().count(), 1);
}

#[test]
fn empty_corpus_has_no_documents() {
    assert!(parse("<corpus lang=\"en\"></corpus>").unwrap().is_empty());
}

#[test]
fn broken_inputs_are_reported() {
    assert!(matches!(parse("<corpus><text>"), Err(Error::Format { .. })));
    let missing = "<corpus>\n<text id=\"d0\">\n<sentence id=\"s\">\n<instance id=\"x\" pos=\"NOUN\">a</instance>\n</sentence></text></corpus>";
    assert!(matches!(parse(missing), Err(Error::Malformed { line: 4, .. })));
    let bad_pos = "<corpus><text><sentence><instance id=\"x\" lemma=\"a\" pos=\"DET\">a</instance></sentence></text></corpus>";
    assert!(matches!(parse(bad_pos), Err(Error::Malformed { .. })));
}

#[test]
fn dataset_prefix_of_combined_ids() {
    assert_eq!(dataset_of("senseval2.d000.s000.t000"), Some("senseval2"));
    assert_eq!(dataset_of("d000.s000.t000"), None);
}

fn write_tmp(text: &str) -> (tempfile::TempDir, std::path::PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("keys.txt");
    std::fs::write(&path, text).unwrap();
    (dir, path)
}

#[test]
fn gold_key_files() {
    let (_d, p) = write_tmp("d0.s0.t0 bank%1:14:00::\n");
    let gold = parse_gold_keys(&p).unwrap();
    assert_eq!(gold.len(), 1);
    let (_d, p) = write_tmp("d0.s0.t0 bank%1:14:00:: bank%1:17:01::\n");
    assert_eq!(parse_gold_keys(&p).unwrap().get("d0.s0.t0").unwrap().len(), 2);
    let (_d, p) = write_tmp("a k%1:00:00::\na k%1:00:00::\n");
    assert!(matches!(parse_gold_keys(&p), Err(Error::Malformed { line: 2, .. })));
    let (_d, p) = write_tmp("a\n");
    assert!(matches!(parse_gold_keys(&p), Err(Error::Malformed { line: 1, .. })));
    let (_d, p) = write_tmp("a k%1:00:00:: k%1:00:01::\n");
    assert!(parse_predictions(&p).is_err());
}

#[test]
fn key_files_are_written_sorted() {
    let mut out = Vec::new();
    write_key_file([("b", "k2"), ("a", "k1")], &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), "a k1\nb k2\n");
}

#[test]
fn tfidf_context_filters() {
    let g = graph();
    let xml = r#"<corpus>
<text id="a"><sentence>
<instance id="a.0" lemma="bank" pos="NOUN">bank</instance>
<wf lemma="river" pos="NOUN">river</wf><wf lemma="river" pos="NOUN">river</wf>
<wf lemma="stone" pos="NOUN">stone</wf><wf lemma="walk" pos="VERB">walk</wf>
</sentence></text>
<text id="b"><sentence>
<wf lemma="stone" pos="NOUN">stone</wf><wf lemma="bank" pos="NOUN">bank</wf>
</sentence></text>
</corpus>"#;
    let docs = parse(xml).unwrap();
    let ctx = document_contexts(&docs, &g, PosSet::NOUN_VERB);
    // river: tf 2 in one of two documents; stone is everywhere; bank is polysemous
    let lemmas: Vec<&str> = ctx[0].entries.iter().map(|e| e.lemma.as_str()).collect();
    assert_eq!(lemmas, ["river", "walk"]);
    assert!((ctx[0].entries[0].tfidf - 2.0 * std::f64::consts::LN_2).abs() < 1e-12);
    assert!(ctx[1].is_empty());
    let nouns = document_contexts(&docs, &g, PosSet::of(&[Pos::Noun]));
    assert_eq!(nouns[0].len(), 1);
}

#[test]
fn stats_of_sample() {
    let g = graph();
    let docs = parse(SAMPLE).unwrap();
    let s = dataset_stats(&docs, &g);
    assert_eq!(s.n_docs, 2);
    // the sentence without targets does not count
    assert_eq!(s.n_sentences, 2);
    assert_eq!(s.n_terms, 3);
    assert_eq!(s.n_ambiguous, 1);
    assert_eq!(s.n_monosemous, 2);
    assert_eq!(s.n_monosemous + s.n_ambiguous + s.n_unknown, s.n_terms);
    assert_eq!(s.avg_sentence_size, 2);
    assert!((s.ambiguity_rate - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(s.per_pos[&Pos::Noun].granularity.max, 2);
    assert_eq!(s.per_pos[&Pos::Verb].n_terms, 1);
    assert_eq!(dataset_stats(&[], &g), DatasetStats::default());
}

#[test]
fn monosemous_sentence_has_zero_ambiguity() {
    let g = graph();
    let xml = r#"<corpus><text><sentence>
<instance id="x.0" lemma="river" pos="NOUN">r</instance><instance id="x.1" lemma="stone" pos="NOUN">s</instance>
<instance id="x.2" lemma="River" pos="NOUN">r</instance><instance id="x.3" lemma="walk" pos="VERB">w</instance>
</sentence></text></corpus>"#;
    let s = dataset_stats(&parse(xml).unwrap(), &g);
    assert_eq!(s.n_terms, 4);
    assert_eq!(s.ambiguity_rate, 0.0);
}

fn token() -> impl Strategy<Value = (bool, String, String, &'static str)> {
    let tags = prop::sample::select(vec!["NOUN", "VERB", "ADJ", "ADV", "DET", "."]);
    (any::<bool>(), "[a-z&<\"']{1,6}", "[A-Za-z .&]{0,5}", tags)
}

proptest! {
    #[test]
    fn write_then_parse_is_a_fixed_point(doc_shapes in prop::collection::vec(prop::collection::vec(prop::collection::vec(token(), 0..5), 0..3), 0..3)) {
        let mut docs = Vec::new();
        let mut next = 0;
        for (d, sents) in doc_shapes.iter().enumerate() {
            let mut sentences = Vec::new();
            for (s, toks) in sents.iter().enumerate() {
                let tokens = toks.iter().enumerate().map(|(i, (target, lemma, surface, tag))| {
                    next += 1;
                    let target = *target && Pos::from_universal(tag).is_some();
                    TermInstance {
                        instance_id: target.then(|| format!("d{d}.s{s}.t{next}")),
                        lemma: lemma.clone(),
                        pos: Pos::from_universal(tag),
                        tag: tag.to_string(),
                        surface: surface.to_string(),
                        sentence_index: s,
                        position: i,
                    }
                }).collect();
                sentences.push(Sentence { id: format!("d{d}.s{s}"), tokens });
            }
            docs.push(Document { id: format!("d{d}"), sentences });
        }
        let xml = write_dataset(&docs, "generated");
        let back = parse(&xml).unwrap();
        prop_assert_eq!(&back, &docs);
        prop_assert_eq!(write_dataset(&back, "generated"), xml);
    }
}
