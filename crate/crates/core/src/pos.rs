//! Part-of-speech tags shared by the dictionary, corpora and engine.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Adv,
}

impl Pos {
    pub const ALL: [Pos; 4] = [Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv];

    /// Accepts the WordNet letters, including `s` for adjective satellites.
    pub fn from_letter(c: char) -> Option<Pos> {
        match c {
            'n' => Some(Pos::Noun),
            'v' => Some(Pos::Verb),
            'a' | 's' => Some(Pos::Adj),
            'r' => Some(Pos::Adv),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pos::Noun => 'n',
            Pos::Verb => 'v',
            Pos::Adj => 'a',
            Pos::Adv => 'r',
        }
    }

    /// `ss_type` digit of a sense key (`5` is an adjective satellite).
    pub fn from_ss_type(digit: u8) -> Option<Pos> {
        match digit {
            1 => Some(Pos::Noun),
            2 => Some(Pos::Verb),
            3 | 5 => Some(Pos::Adj),
            4 => Some(Pos::Adv),
            _ => None,
        }
    }

    /// Universal POS tags used by the evaluation datasets.
    pub fn from_universal(tag: &str) -> Option<Pos> {
        match tag {
            "NOUN" => Some(Pos::Noun),
            "VERB" => Some(Pos::Verb),
            "ADJ" => Some(Pos::Adj),
            "ADV" => Some(Pos::Adv),
            _ => None,
        }
    }

    pub fn universal(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Verb => "VERB",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
        }
    }

    pub fn file_suffix(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Adj => "adj",
            Pos::Adv => "adv",
        }
    }

    /// Only nouns and verbs are organised in a hypernym taxonomy.
    pub fn has_taxonomy(self) -> bool {
        matches!(self, Pos::Noun | Pos::Verb)
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "n" | "noun" => Ok(Pos::Noun),
            "v" | "verb" => Ok(Pos::Verb),
            "a" | "adj" | "s" => Ok(Pos::Adj),
            "r" | "adv" => Ok(Pos::Adv),
            _ => Err(format!("unknown part of speech `{s}`")),
        }
    }
}

/// A small set of parts of speech, e.g. the POS of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PosSet(u8);

impl PosSet {
    pub const EMPTY: PosSet = PosSet(0);
    pub const ALL: PosSet = PosSet(0b1111);
    pub const NOUN_VERB: PosSet = PosSet(0b0011);

    pub fn of(items: &[Pos]) -> PosSet {
        items.iter().fold(PosSet::EMPTY, |set, &p| set.with(p))
    }

    pub fn with(self, pos: Pos) -> PosSet {
        PosSet(self.0 | 1 << pos.index())
    }

    pub fn contains(self, pos: Pos) -> bool {
        self.0 & (1 << pos.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Pos> {
        Pos::ALL.into_iter().filter(move |&p| self.contains(p))
    }
}

impl fmt::Display for PosSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.iter().map(|p| p.letter().to_string()).collect();
        write!(f, "{}", letters.join(","))
    }
}

impl FromStr for PosSet {
    type Err = String;

    /// Parses comma-separated tags such as `n,v,a,r`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .try_fold(PosSet::EMPTY, |set, tok| Ok(set.with(tok.parse()?)))
    }
}
