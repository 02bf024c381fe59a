//! Evaluation datasets in the unified-framework XML layout:
//! `corpus > text > sentence > (wf | instance)*`.

mod context;
mod keys;
mod stats;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

pub use context::{document_contexts, ContextEntry, DocumentContext};
pub use keys::{parse_gold_keys, parse_predictions, write_key_file, GoldKeys};
pub use stats::{dataset_stats, DatasetStats, Granularity, PosStats};

use crate::error::{Error, Result};
use crate::pos::Pos;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermInstance {
    /// Present on scored targets (`instance` elements).
    pub instance_id: Option<String>,
    pub lemma: String,
    /// `None` for tokens tagged outside nouns, verbs, adjectives, adverbs.
    pub pos: Option<Pos>,
    /// Raw POS tag as found in the file.
    pub tag: String,
    pub surface: String,
    pub sentence_index: usize,
    pub position: usize,
}

impl TermInstance {
    pub fn is_target(&self) -> bool {
        self.instance_id.is_some()
    }

    /// Lemma in the form used by the WordNet index.
    pub fn lookup_lemma(&self) -> String {
        wordnet_lemma(&self.lemma)
    }
}

pub fn wordnet_lemma(lemma: &str) -> String {
    lemma.trim().to_lowercase().replace(' ', "_")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub id: String,
    /// Every token in document order; targets carry an instance id.
    pub tokens: Vec<TermInstance>,
}

impl Sentence {
    pub fn targets(&self) -> impl Iterator<Item = &TermInstance> {
        self.tokens.iter().filter(|t| t.is_target())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub sentences: Vec<Sentence>,
}

impl Document {
    pub fn targets(&self) -> impl Iterator<Item = &TermInstance> {
        self.sentences.iter().flat_map(Sentence::targets)
    }
}

/// Dataset name of an instance id. Ids of the concatenated `ALL` corpus
/// carry it as a leading component (`senseval2.d000.s000.t000`).
pub fn dataset_of(instance_id: &str) -> Option<&str> {
    let parts: Vec<&str> = instance_id.split('.').collect();
    (parts.len() >= 4).then(|| parts[0])
}

pub fn parse_dataset(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_dataset_str(&text, path)
}

pub fn parse_dataset_str(text: &str, path: &Path) -> Result<Vec<Document>> {
    let xml = roxmltree::Document::parse(text).map_err(|e| Error::format(path, format!("invalid XML: {e}")))?;
    let line_of = |node: roxmltree::Node| xml.text_pos_at(node.range().start).row as usize;
    let mut docs = Vec::new();
    for (d, text_el) in xml
        .root_element()
        .children()
        .filter(|n| n.has_tag_name("text"))
        .enumerate()
    {
        let doc_id = text_el.attribute("id").map_or_else(|| format!("d{d:03}"), str::to_string);
        let mut sentences = Vec::new();
        for (s, sent_el) in text_el.children().filter(|n| n.has_tag_name("sentence")).enumerate() {
            let sent_id = sent_el
                .attribute("id")
                .map_or_else(|| format!("{doc_id}.s{s:03}"), str::to_string);
            let mut tokens = Vec::new();
            for tok in sent_el.children().filter(|n| n.is_element()) {
                let target = match tok.tag_name().name() {
                    "instance" => true,
                    "wf" => false,
                    _ => continue,
                };
                let attr = |name: &str| tok.attribute(name).map(str::to_string);
                let instance_id = if target {
                    Some(attr("id").ok_or_else(|| Error::malformed(path, line_of(tok), "instance without id"))?)
                } else {
                    None
                };
                let surface = tok.text().unwrap_or("").to_string();
                let lemma = attr("lemma");
                let tag = attr("pos");
                let (lemma, tag) = if target {
                    let missing = |what| Error::malformed(path, line_of(tok), format!("instance without {what}"));
                    (lemma.ok_or_else(|| missing("lemma"))?, tag.ok_or_else(|| missing("pos"))?)
                } else {
                    (lemma.unwrap_or_else(|| surface.clone()), tag.unwrap_or_default())
                };
                let pos = Pos::from_universal(&tag);
                if target && pos.is_none() {
                    return Err(Error::malformed(path, line_of(tok), format!("unknown instance POS `{tag}`")));
                }
                tokens.push(TermInstance {
                    instance_id,
                    lemma,
                    pos,
                    tag,
                    surface,
                    sentence_index: s,
                    position: tokens.len(),
                });
            }
            sentences.push(Sentence { id: sent_id, tokens });
        }
        docs.push(Document {
            id: doc_id,
            sentences,
        });
    }
    Ok(docs)
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Serializes documents back to the framework XML layout.
pub fn write_dataset(docs: &[Document], source: &str) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\" ?>\n");
    let _ = writeln!(out, "<corpus lang=\"en\" source=\"{}\">", escape(source));
    for doc in docs {
        let _ = writeln!(out, "<text id=\"{}\">", escape(&doc.id));
        for sent in &doc.sentences {
            let _ = writeln!(out, "<sentence id=\"{}\">", escape(&sent.id));
            for t in &sent.tokens {
                let (lemma, tag, surface) = (escape(&t.lemma), escape(&t.tag), escape(&t.surface));
                match &t.instance_id {
                    Some(id) => {
                        let _ = writeln!(
                            out,
                            "<instance id=\"{}\" lemma=\"{lemma}\" pos=\"{tag}\">{surface}</instance>",
                            escape(id)
                        );
                    }
                    None => {
                        let _ = writeln!(out, "<wf lemma=\"{lemma}\" pos=\"{tag}\">{surface}</wf>");
                    }
                }
            }
            out.push_str("</sentence>\n");
        }
        out.push_str("</text>\n");
    }
    out.push_str("</corpus>\n");
    out
}

#[cfg(test)]
mod tests;
