//! In-memory WordNet lexicon: synsets, glosses, hyperonymy and antonymy.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod gloss;
mod jsonl;
mod wndb;

pub use gloss::{clean_gloss, EmptyGloss};
pub use jsonl::{read_lexicon_jsonl, write_lexicon_file, write_lexicon_jsonl};
pub use wndb::{parse_wordnet, parse_wordnet_with_warnings, ParseWarning, DATA_FILES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl Pos {
    pub const ALL: [Pos; 4] = [Pos::Noun, Pos::Verb, Pos::Adjective, Pos::Adverb];

    /// One-letter WNDB code. Adjective satellites (`s`) share `a`.
    pub fn code(self) -> char {
        match self {
            Pos::Noun => 'n',
            Pos::Verb => 'v',
            Pos::Adjective => 'a',
            Pos::Adverb => 'r',
        }
    }

    pub fn from_code(c: char) -> Option<Pos> {
        match c {
            'n' => Some(Pos::Noun),
            'v' => Some(Pos::Verb),
            'a' | 's' => Some(Pos::Adjective),
            'r' => Some(Pos::Adverb),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Adjective => "adjective",
            Pos::Adverb => "adverb",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Synset identifier: byte offset in the data file plus part of speech.
///
/// Ordered by part of speech first, then offset. Rendered as `00001740-n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SynsetId {
    pub pos: Pos,
    pub offset: u32,
}

impl SynsetId {
    pub fn new(offset: u32, pos: Pos) -> Self {
        SynsetId { pos, offset }
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08}-{}", self.offset, self.pos.code())
    }
}

impl FromStr for SynsetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::data(format!("malformed synset id `{s}`"));
        let (offset, pos) = s.split_once('-').ok_or_else(bad)?;
        if offset.len() != 8 || !offset.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut pos_chars = pos.chars();
        let pos = match (pos_chars.next(), pos_chars.next()) {
            (Some(c), None) => Pos::from_code(c).ok_or_else(bad)?,
            _ => return Err(bad()),
        };
        Ok(SynsetId::new(offset.parse().map_err(|_| bad())?, pos))
    }
}

impl From<SynsetId> for String {
    fn from(id: SynsetId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for SynsetId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Synset {
    pub id: SynsetId,
    pub lemmas: Vec<String>,
    pub gloss: String,
    pub hyperonyms: Vec<SynsetId>,
    pub antonyms: Vec<SynsetId>,
}

/// Immutable collection of synsets plus the derived hyponym (children) index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lexicon {
    synsets: BTreeMap<SynsetId, Synset>,
    children: BTreeMap<SynsetId, Vec<SynsetId>>,
}

impl Lexicon {
    /// Build a lexicon, validating the synset invariants.
    ///
    /// Relation lists are sorted and deduplicated. Dangling, self-referential
    /// or cross-pos hyperonym links are rejected; callers that want lenient
    /// behaviour filter them beforehand.
    pub fn new(synsets: impl IntoIterator<Item = Synset>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for mut s in synsets {
            if s.lemmas.is_empty() {
                return Err(Error::data(format!("synset {} has no lemmas", s.id)));
            }
            if s.gloss.trim().is_empty() {
                return Err(Error::EmptyGloss {
                    synset: s.id.to_string(),
                });
            }
            s.hyperonyms.sort();
            s.hyperonyms.dedup();
            s.antonyms.sort();
            s.antonyms.dedup();
            let id = s.id;
            if map.insert(id, s).is_some() {
                return Err(Error::data(format!("duplicate synset {id}")));
            }
        }

        let mut children: BTreeMap<SynsetId, Vec<SynsetId>> = BTreeMap::new();
        for s in map.values() {
            for h in &s.hyperonyms {
                if *h == s.id {
                    return Err(Error::data(format!("synset {} is its own hyperonym", s.id)));
                }
                if h.pos != s.id.pos {
                    return Err(Error::data(format!(
                        "synset {} has hyperonym {h} of a different part of speech",
                        s.id
                    )));
                }
                if !map.contains_key(h) {
                    return Err(Error::data(format!(
                        "synset {} points to unknown hyperonym {h}",
                        s.id
                    )));
                }
                children.entry(*h).or_default().push(s.id);
            }
            for a in &s.antonyms {
                if *a == s.id {
                    return Err(Error::data(format!("synset {} is its own antonym", s.id)));
                }
                if !map.contains_key(a) {
                    return Err(Error::data(format!(
                        "synset {} points to unknown antonym {a}",
                        s.id
                    )));
                }
            }
        }
        // Synsets are visited in id order, so each child list is already sorted.
        Ok(Lexicon {
            synsets: map,
            children,
        })
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn get(&self, id: &SynsetId) -> Option<&Synset> {
        self.synsets.get(id)
    }

    pub fn contains(&self, id: &SynsetId) -> bool {
        self.synsets.contains_key(id)
    }

    /// Synsets in id order.
    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.values()
    }

    pub fn gloss(&self, id: &SynsetId) -> Option<&str> {
        self.synsets.get(id).map(|s| s.gloss.as_str())
    }

    /// Direct hyponyms of `id`, sorted.
    pub fn children(&self, id: &SynsetId) -> &[SynsetId] {
        self.children.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Every synset with at least one direct hyponym, with its children.
    pub fn parents(&self) -> impl Iterator<Item = (&SynsetId, &[SynsetId])> {
        self.children.iter().map(|(p, c)| (p, c.as_slice()))
    }

    pub fn ids_by_pos(&self) -> BTreeMap<Pos, Vec<SynsetId>> {
        let mut out: BTreeMap<Pos, Vec<SynsetId>> = BTreeMap::new();
        for id in self.synsets.keys() {
            out.entry(id.pos).or_default().push(*id);
        }
        out
    }

    /// Unordered synset-level antonym links, each once as `(smaller, larger)`.
    pub fn antonym_links(&self) -> BTreeSet<(SynsetId, SynsetId)> {
        let mut links = BTreeSet::new();
        for s in self.synsets.values() {
            for a in &s.antonyms {
                links.insert(if s.id < *a { (s.id, *a) } else { (*a, s.id) });
            }
        }
        links
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    pub fn noun(offset: u32) -> SynsetId {
        SynsetId::new(offset, Pos::Noun)
    }

    pub fn synset(id: SynsetId, gloss: &str, hyperonyms: &[SynsetId]) -> Synset {
        Synset {
            id,
            lemmas: vec![format!("w{}", id.offset)],
            gloss: gloss.to_string(),
            hyperonyms: hyperonyms.to_vec(),
            antonyms: Vec::new(),
        }
    }
}
