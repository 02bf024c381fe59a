//! Writes small hand-built WordNet databases in the real flat-file format.
//! Used by tests and by the acceptance harness.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use crate::pos::Pos;
use crate::wordnet::{Relation, SynsetId};

struct MiniSynset {
    id: SynsetId,
    words: Vec<String>,
    pointers: Vec<(Relation, SynsetId)>,
    gloss: String,
}

#[derive(Default)]
pub struct MiniWordNet {
    synsets: Vec<MiniSynset>,
    tag_counts: BTreeMap<(String, SynsetId), u32>,
}

fn inverse(rel: Relation) -> Option<Relation> {
    use Relation::*;
    Some(match rel {
        Hypernym => Hyponym,
        Hyponym => Hypernym,
        InstanceHypernym => InstanceHyponym,
        InstanceHyponym => InstanceHypernym,
        MemberHolonym => MemberMeronym,
        MemberMeronym => MemberHolonym,
        PartHolonym => PartMeronym,
        PartMeronym => PartHolonym,
        SubstanceHolonym => SubstanceMeronym,
        SubstanceMeronym => SubstanceHolonym,
        Antonym | SimilarTo | Derivation | VerbGroup | AlsoSee | Attribute => rel,
        _ => return None,
    })
}

fn ss_type(pos: Pos) -> u8 {
    match pos {
        Pos::Noun => 1,
        Pos::Verb => 2,
        Pos::Adj => 3,
        Pos::Adv => 4,
    }
}

impl MiniWordNet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a synset. Sense numbers follow insertion order per lemma.
    pub fn synset(&mut self, pos: Pos, offset: u32, words: &[&str], gloss: &str) -> SynsetId {
        let id = SynsetId::new(pos, offset);
        self.synsets.push(MiniSynset {
            id,
            words: words.iter().map(|w| w.to_string()).collect(),
            pointers: Vec::new(),
            gloss: gloss.to_string(),
        });
        id
    }

    /// Adds a pointer and, where WordNet has one, its reverse pointer.
    pub fn link(&mut self, from: SynsetId, rel: Relation, to: SynsetId) -> &mut Self {
        self.push_pointer(from, rel, to);
        if let Some(inv) = inverse(rel) {
            self.push_pointer(to, inv, from);
        }
        self
    }

    /// Shorthand for `link(child, Hypernym, parent)`.
    pub fn isa(&mut self, child: SynsetId, parent: SynsetId) -> &mut Self {
        self.link(child, Relation::Hypernym, parent)
    }

    /// Records a tagged-corpus count in `index.sense`.
    pub fn tag(&mut self, word: &str, id: SynsetId, count: u32) -> &mut Self {
        self.tag_counts.insert((word.to_string(), id), count);
        self
    }

    fn push_pointer(&mut self, from: SynsetId, rel: Relation, to: SynsetId) {
        let s = self
            .synsets
            .iter_mut()
            .find(|s| s.id == from)
            .expect("pointer source must be added first");
        if !s.pointers.contains(&(rel, to)) {
            s.pointers.push((rel, to));
        }
    }

    /// Sense key of `word` in synset `id`.
    pub fn sense_key(&self, word: &str, id: SynsetId) -> String {
        let rank = self
            .synsets
            .iter()
            .filter(|s| s.id.pos == id.pos && s.words.iter().any(|w| w == word))
            .position(|s| s.id == id)
            .expect("word must belong to the synset");
        format!("{}%{}:00:{:02}::", word, ss_type(id.pos), rank)
    }

    pub fn write(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        let mut index_sense = Vec::new();
        for pos in Pos::ALL {
            let mut data = String::from("  1 hand-built test database\n");
            let mut index: BTreeMap<&str, Vec<u32>> = BTreeMap::new();
            for s in self.synsets.iter().filter(|s| s.id.pos == pos) {
                let mut line = format!("{:08} 00 {} {:02x}", s.id.offset, pos.letter(), s.words.len());
                for w in &s.words {
                    line.push_str(&format!(" {w} 0"));
                    index.entry(w).or_default().push(s.id.offset);
                    let key = self.sense_key(w, s.id);
                    let rank = index[w.as_str()].len();
                    let tags = self.tag_counts.get(&(w.clone(), s.id)).copied().unwrap_or(0);
                    index_sense.push(format!("{key} {:08} {rank} {tags}", s.id.offset));
                }
                line.push_str(&format!(" {:03}", s.pointers.len()));
                for (rel, t) in &s.pointers {
                    line.push_str(&format!(" {} {:08} {} 0000", rel.symbol(), t.offset, t.pos.letter()));
                }
                line.push_str(&format!(" | {}\n", s.gloss));
                data.push_str(&line);
            }
            let mut idx = String::from("  1 hand-built test database\n");
            for (lemma, offsets) in &index {
                let list: Vec<String> = offsets.iter().map(|o| format!("{o:08}")).collect();
                idx.push_str(&format!(
                    "{lemma} {} {} 0 {} 0 {}\n",
                    pos.letter(),
                    offsets.len(),
                    offsets.len(),
                    list.join(" ")
                ));
            }
            fs::write(dir.join(format!("data.{}", pos.file_suffix())), data)?;
            fs::write(dir.join(format!("index.{}", pos.file_suffix())), idx)?;
        }
        index_sense.sort();
        fs::write(dir.join("index.sense"), index_sense.join("\n") + "\n")?;
        Ok(())
    }
}
