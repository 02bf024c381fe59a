use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use super::relation::EdgeKind;
use super::{taxonomy_slot, Relation, SenseEntry, Synset, SynsetId, WordNetGraph, NO_DEPTH};
use crate::error::{Error, Result};
use crate::pos::Pos;

/// Loads a WordNet 3.0 database directory (`index.{noun,verb,adj,adv}`,
/// `data.{noun,verb,adj,adv}` and `index.sense`).
pub fn load_wordnet(dir: impl AsRef<Path>) -> Result<WordNetGraph> {
    let dir = dir.as_ref();
    let mut synsets = Vec::new();
    for pos in Pos::ALL {
        let path = dir.join(format!("data.{}", pos.file_suffix()));
        parse_data_file(&path, pos, &mut synsets)?;
    }
    let sense_path = dir.join("index.sense");
    let keys = parse_sense_index(&sense_path)?;

    let mut index = HashMap::new();
    for pos in Pos::ALL {
        let path = dir.join(format!("index.{}", pos.file_suffix()));
        parse_index_file(&path, pos, &keys, &mut index)?;
    }
    assemble(synsets, index, &keys)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Lines of a database file with their 1-based numbers, license header
/// (lines indented by two spaces) and blank lines removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with("  ") && !l.trim().is_empty())
}

struct Tokens<'a> {
    iter: std::str::SplitWhitespace<'a>,
    path: &'a Path,
    line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str, path: &'a Path, line: usize) -> Self {
        Tokens {
            iter: text.split_whitespace(),
            path,
            line,
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.iter
            .next()
            .ok_or_else(|| Error::malformed(self.path, self.line, format!("missing {what}")))
    }

    fn number(&mut self, what: &str, radix: u32) -> Result<u32> {
        let tok = self.next(what)?;
        u32::from_str_radix(tok, radix)
            .map_err(|_| Error::malformed(self.path, self.line, format!("bad {what} `{tok}`")))
    }
}

fn parse_pos_letter(tok: &str, path: &Path, line: usize) -> Result<Pos> {
    let mut chars = tok.chars();
    match (chars.next().and_then(Pos::from_letter), chars.next()) {
        (Some(p), None) => Ok(p),
        _ => Err(Error::malformed(path, line, format!("bad part of speech `{tok}`"))),
    }
}

/// Drops the syntactic marker WordNet appends to some adjectives, e.g.
/// `galore(ip)`.
fn strip_marker(word: &str) -> &str {
    match word.find('(') {
        Some(i) if word.ends_with(')') => &word[..i],
        _ => word,
    }
}

fn parse_data_file(path: &Path, pos: Pos, out: &mut Vec<Synset>) -> Result<()> {
    let text = read(path)?;
    for (line_no, line) in content_lines(&text) {
        let (fields, gloss) = line.split_once('|').unwrap_or((line, ""));
        let mut t = Tokens::new(fields, path, line_no);
        let offset = t.number("synset offset", 10)?;
        let lex_filenum = t.number("lex_filenum", 10)? as u8;
        let ss_type = parse_pos_letter(t.next("ss_type")?, path, line_no)?;
        if ss_type != pos {
            return Err(Error::malformed(
                path,
                line_no,
                format!("synset type {ss_type} in a {} file", pos.file_suffix()),
            ));
        }
        let w_cnt = t.number("word count", 16)?;
        let mut lemmas = Vec::with_capacity(w_cnt as usize);
        for _ in 0..w_cnt {
            let word = t.next("word")?;
            t.number("lex_id", 16)?;
            lemmas.push(strip_marker(word).to_lowercase());
        }
        let p_cnt = t.number("pointer count", 10)?;
        let mut relations = Vec::with_capacity(p_cnt as usize);
        for _ in 0..p_cnt {
            let symbol = t.next("pointer symbol")?;
            let relation = Relation::from_symbol(symbol).ok_or_else(|| {
                Error::malformed(path, line_no, format!("unknown pointer symbol `{symbol}`"))
            })?;
            let target = t.number("pointer offset", 10)?;
            let target_pos = parse_pos_letter(t.next("pointer pos")?, path, line_no)?;
            t.next("pointer source/target")?;
            relations.push((relation, SynsetId::new(target_pos, target)));
        }
        out.push(Synset {
            id: SynsetId::new(pos, offset),
            lex_filenum,
            lemmas,
            gloss: gloss.trim().to_string(),
            relations,
            sense_keys: Vec::new(),
        });
    }
    Ok(())
}

type SenseKeyMap = HashMap<(String, Pos, u32), (String, u32)>;

/// Splits a sense key into its lowercase lemma and POS.
pub fn sense_key_parts(key: &str) -> Option<(String, Pos)> {
    let (lemma, rest) = key.split_once('%')?;
    let digit = rest.chars().next()?.to_digit(10)?;
    let pos = Pos::from_ss_type(digit as u8)?;
    Some((lemma.to_lowercase(), pos))
}

fn parse_sense_index(path: &Path) -> Result<SenseKeyMap> {
    let text = read(path)?;
    let mut keys = HashMap::new();
    for (line_no, line) in content_lines(&text) {
        let mut t = Tokens::new(line, path, line_no);
        let key = t.next("sense key")?;
        let offset = t.number("synset offset", 10)?;
        t.number("sense number", 10)?;
        let tag_cnt = t.number("tag count", 10)?;
        let (lemma, pos) = sense_key_parts(key)
            .ok_or_else(|| Error::malformed(path, line_no, format!("bad sense key `{key}`")))?;
        keys.insert((lemma, pos, offset), (key.to_string(), tag_cnt));
    }
    Ok(keys)
}

fn parse_index_file(
    path: &Path,
    pos: Pos,
    keys: &SenseKeyMap,
    index: &mut HashMap<(String, Pos), Vec<SenseEntry>>,
) -> Result<()> {
    let text = read(path)?;
    for (line_no, line) in content_lines(&text) {
        let mut t = Tokens::new(line, path, line_no);
        let lemma = t.next("lemma")?.to_lowercase();
        let file_pos = parse_pos_letter(t.next("pos")?, path, line_no)?;
        if file_pos != pos {
            return Err(Error::malformed(path, line_no, "part of speech does not match file"));
        }
        let synset_cnt = t.number("synset count", 10)?;
        let p_cnt = t.number("pointer count", 10)?;
        for _ in 0..p_cnt {
            t.next("pointer symbol")?;
        }
        t.number("sense count", 10)?;
        t.number("tagged sense count", 10)?;
        let mut senses = Vec::with_capacity(synset_cnt as usize);
        for rank in 1..=synset_cnt {
            let offset = t.number("synset offset", 10)?;
            let (key, tag_count) = keys
                .get(&(lemma.clone(), pos, offset))
                .cloned()
                .ok_or_else(|| {
                    Error::malformed(
                        path,
                        line_no,
                        format!("no index.sense entry for {lemma} at {offset:08}"),
                    )
                })?;
            senses.push(SenseEntry {
                lemma: lemma.clone(),
                pos,
                sense_number: rank,
                sense_key: key,
                synset: SynsetId::new(pos, offset),
                tag_count,
            });
        }
        index.insert((lemma, pos), senses);
    }
    Ok(())
}

fn assemble(
    mut synsets: Vec<Synset>,
    index: HashMap<(String, Pos), Vec<SenseEntry>>,
    keys: &SenseKeyMap,
) -> Result<WordNetGraph> {
    synsets.sort_by_key(|s| s.id);
    let real = synsets.len() as u32;
    let mut node_of: HashMap<SynsetId, u32> = synsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.id, i as u32))
        .collect();
    if node_of.len() != synsets.len() {
        return Err(Error::format(PathBuf::new(), "duplicate synset offsets"));
    }
    let noun_root = real;
    let verb_root = real + 1;
    node_of.insert(WordNetGraph::virtual_root(Pos::Noun), noun_root);
    node_of.insert(WordNetGraph::virtual_root(Pos::Verb), verb_root);
    let total = real as usize + 2;

    let mut hypernyms: Vec<Vec<u32>> = vec![Vec::new(); total];
    let mut edges: Vec<Vec<(u32, EdgeKind)>> = vec![Vec::new(); total];
    for (i, s) in synsets.iter_mut().enumerate() {
        for &(rel, target) in &s.relations {
            let Some(&t) = node_of.get(&target).filter(|_| target.offset != 0) else {
                return Err(Error::DanglingSynset {
                    from: s.id,
                    to: target,
                });
            };
            let kind = EdgeKind::relation(rel);
            edges[i].push((t, kind));
            edges[t as usize].push((i as u32, kind));
            if rel.is_hypernym() && s.id.pos.has_taxonomy() && target.pos == s.id.pos {
                hypernyms[i].push(t);
            }
        }
        s.sense_keys = s
            .lemmas
            .iter()
            .filter_map(|l| keys.get(&(l.clone(), s.id.pos, s.id.offset)))
            .map(|(k, _)| k.clone())
            .collect();
    }
    for (i, s) in synsets.iter().enumerate() {
        let root = match s.id.pos {
            Pos::Noun => noun_root,
            Pos::Verb => verb_root,
            _ => continue,
        };
        let h = &mut hypernyms[i];
        h.sort_unstable();
        h.dedup();
        if h.is_empty() {
            h.push(root);
            edges[i].push((root, EdgeKind::VIRTUAL_ROOT));
            edges[root as usize].push((i as u32, EdgeKind::VIRTUAL_ROOT));
        }
    }
    for adj in &mut edges {
        adj.sort_unstable();
        adj.dedup();
    }

    let depth = compute_depths(&hypernyms, &[noun_root, verb_root]);
    let ancestors = compute_ancestors(&hypernyms, &depth);
    let mut max_depth = [0u32; 2];
    for (i, s) in synsets.iter().enumerate() {
        if let Some(slot) = taxonomy_slot(s.id.pos) {
            max_depth[slot] = max_depth[slot].max(depth[i] + 1);
        }
    }

    let mut by_key = HashMap::new();
    for ((lemma, pos), senses) in &index {
        for (slot, sense) in senses.iter().enumerate() {
            if !node_of.contains_key(&sense.synset) {
                return Err(Error::format(
                    PathBuf::from(format!("index.{}", pos.file_suffix())),
                    format!("{} points to missing synset {}", sense.sense_key, sense.synset),
                ));
            }
            by_key.insert(sense.sense_key.clone(), (lemma.clone(), *pos, slot));
        }
    }

    Ok(WordNetGraph {
        synsets,
        node_of,
        index,
        by_key,
        hypernyms,
        edges,
        depth,
        ancestors,
        max_depth,
    })
}

/// Longest hypernym chain to a virtual root. A hypernym edge that closes a
/// cycle is ignored.
fn compute_depths(hypernyms: &[Vec<u32>], roots: &[u32]) -> Vec<u32> {
    const FRESH: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;
    let mut depth = vec![NO_DEPTH; hypernyms.len()];
    let mut state = vec![FRESH; hypernyms.len()];
    for &r in roots {
        depth[r as usize] = 0;
        state[r as usize] = DONE;
    }
    for start in 0..hypernyms.len() {
        if state[start] != FRESH || hypernyms[start].is_empty() {
            continue;
        }
        // explicit stack of (node, next hypernym to visit)
        let mut stack = vec![(start as u32, 0usize)];
        state[start] = OPEN;
        while let Some(top) = stack.last_mut() {
            let (n, next) = *top;
            let hs = &hypernyms[n as usize];
            if next < hs.len() {
                top.1 += 1;
                let h = hs[next];
                if state[h as usize] == FRESH && !hypernyms[h as usize].is_empty() {
                    state[h as usize] = OPEN;
                    stack.push((h, 0));
                }
            } else {
                let d = hs
                    .iter()
                    .filter(|&&h| state[h as usize] == DONE)
                    .map(|&h| depth[h as usize])
                    .filter(|&d| d != NO_DEPTH)
                    .max()
                    .map_or(0, |d| d + 1);
                depth[n as usize] = d;
                state[n as usize] = DONE;
                stack.pop();
            }
        }
    }
    depth
}

fn compute_ancestors(hypernyms: &[Vec<u32>], depth: &[u32]) -> Vec<Box<[u32]>> {
    let mut seen = vec![false; hypernyms.len()];
    let mut out = Vec::with_capacity(hypernyms.len());
    for n in 0..hypernyms.len() {
        if depth[n] == NO_DEPTH {
            out.push(Box::default());
            continue;
        }
        let mut found = vec![n as u32];
        seen[n] = true;
        let mut i = 0;
        while i < found.len() {
            for &h in &hypernyms[found[i] as usize] {
                if !seen[h as usize] {
                    seen[h as usize] = true;
                    found.push(h);
                }
            }
            i += 1;
        }
        for &f in &found {
            seen[f as usize] = false;
        }
        found.sort_unstable();
        out.push(found.into_boxed_slice());
    }
    out
}
