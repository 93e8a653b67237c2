use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use super::{clean_gloss, Lexicon, Pos, Synset, SynsetId};
use crate::error::{Error, Result};

/// The four WNDB data files, in the order they are merged.
pub const DATA_FILES: [(&str, Pos); 4] = [
    ("data.noun", Pos::Noun),
    ("data.verb", Pos::Verb),
    ("data.adj", Pos::Adjective),
    ("data.adv", Pos::Adverb),
];

/// Non-fatal problem found while parsing, e.g. a pointer to a missing synset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub synset: SynsetId,
    pub message: String,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.synset, self.message)
    }
}

#[derive(Debug)]
struct Record {
    id: SynsetId,
    lemmas: Vec<String>,
    pointers: Vec<Pointer>,
    gloss: String,
}

#[derive(Debug)]
struct Pointer {
    symbol: String,
    target: SynsetId,
}

/// Parse a Princeton WNDB 3.0 `dict` directory.
///
/// Warnings (dangling or malformed links that were dropped) are logged.
pub fn parse_wordnet(dir: &Path) -> Result<Lexicon> {
    let (lexicon, warnings) = parse_wordnet_with_warnings(dir)?;
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(lexicon)
}

pub fn parse_wordnet_with_warnings(dir: &Path) -> Result<(Lexicon, Vec<ParseWarning>)> {
    for (name, _) in DATA_FILES {
        let path = dir.join(name);
        if !path.is_file() {
            return Err(Error::MissingFile { path });
        }
    }
    let per_file: Vec<Vec<Record>> = DATA_FILES
        .par_iter()
        .map(|(name, _)| parse_data_file(&dir.join(name), name))
        .collect::<Result<_>>()?;
    let records: Vec<Record> = per_file.into_iter().flatten().collect();
    assemble(records)
}

fn parse_data_file(path: &Path, name: &str) -> Result<Vec<Record>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    let mut offset = 0usize;
    for raw_line in bytes.split_inclusive(|b| *b == b'\n') {
        let line_offset = offset;
        offset += raw_line.len();
        // License header lines start with two spaces.
        if raw_line.starts_with(b"  ") || raw_line.iter().all(u8::is_ascii_whitespace) {
            continue;
        }
        let perr = |message: String| Error::Parse {
            file: name.to_string(),
            offset: line_offset as u64,
            message,
        };
        let line = std::str::from_utf8(raw_line).map_err(|e| perr(format!("invalid UTF-8: {e}")))?;
        records.push(parse_record(line).map_err(perr)?);
    }
    Ok(records)
}

fn parse_record(line: &str) -> std::result::Result<Record, String> {
    let (head, gloss) = line
        .split_once('|')
        .ok_or_else(|| "record has no `|` gloss separator".to_string())?;
    let mut tokens = head.split_ascii_whitespace();
    let mut next = |what: &str| tokens.next().ok_or_else(|| format!("truncated record: expected {what}"));

    let offset_tok = next("synset offset")?;
    if offset_tok.len() != 8 {
        return Err(format!("synset offset `{offset_tok}` is not 8 digits"));
    }
    let offset: u32 = offset_tok
        .parse()
        .map_err(|_| format!("bad synset offset `{offset_tok}`"))?;
    next("lex_filenum")?;
    let ss_type = next("ss_type")?;
    let pos = single_char(ss_type)
        .and_then(Pos::from_code)
        .ok_or_else(|| format!("bad ss_type `{ss_type}`"))?;
    let w_cnt_tok = next("w_cnt")?;
    let w_cnt = usize::from_str_radix(w_cnt_tok, 16).map_err(|_| format!("bad w_cnt `{w_cnt_tok}`"))?;
    let mut lemmas = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        let word = next("word")?;
        next("lex_id")?;
        lemmas.push(strip_adjective_marker(word).to_string());
    }
    if lemmas.is_empty() {
        return Err("record lists no words".to_string());
    }
    let p_cnt_tok = next("p_cnt")?;
    let p_cnt: usize = p_cnt_tok.parse().map_err(|_| format!("bad p_cnt `{p_cnt_tok}`"))?;
    let mut pointers = Vec::with_capacity(p_cnt);
    for _ in 0..p_cnt {
        let symbol = next("pointer symbol")?.to_string();
        let target_tok = next("pointer offset")?;
        let target_off: u32 = target_tok
            .parse()
            .map_err(|_| format!("bad pointer offset `{target_tok}`"))?;
        let pos_tok = next("pointer pos")?;
        let target_pos = single_char(pos_tok)
            .and_then(Pos::from_code)
            .ok_or_else(|| format!("bad pointer pos `{pos_tok}`"))?;
        let st = next("pointer source/target")?;
        if st.len() != 4 || u16::from_str_radix(st, 16).is_err() {
            return Err(format!("bad pointer source/target `{st}`"));
        }
        pointers.push(Pointer {
            symbol,
            target: SynsetId::new(target_off, target_pos),
        });
    }
    // Verb frames may follow; they are not needed.
    Ok(Record {
        id: SynsetId::new(offset, pos),
        lemmas,
        pointers,
        gloss: gloss.to_string(),
    })
}

fn single_char(s: &str) -> Option<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

fn strip_adjective_marker(word: &str) -> &str {
    for marker in ["(ip)", "(a)", "(p)"] {
        if let Some(w) = word.strip_suffix(marker) {
            return w;
        }
    }
    word
}

fn assemble(records: Vec<Record>) -> Result<(Lexicon, Vec<ParseWarning>)> {
    let mut warnings = Vec::new();
    let known: HashSet<SynsetId> = records.iter().map(|r| r.id).collect();
    if known.len() != records.len() {
        let mut seen = HashSet::new();
        let dup = records.iter().find(|r| !seen.insert(r.id)).map(|r| r.id);
        return Err(Error::data(format!("duplicate synset record {}", dup.unwrap())));
    }

    // Antonymy is stored per lemma; lift every link to its two synsets.
    let mut antonyms: BTreeMap<SynsetId, BTreeSet<SynsetId>> = BTreeMap::new();
    let mut hyperonyms: BTreeMap<SynsetId, Vec<SynsetId>> = BTreeMap::new();
    for r in &records {
        for p in &r.pointers {
            let kind = match p.symbol.as_str() {
                "@" | "@i" => "hyperonym",
                "!" => "antonym",
                _ => continue,
            };
            let warn = |message: String| ParseWarning {
                synset: r.id,
                message,
            };
            if !known.contains(&p.target) {
                warnings.push(warn(format!("dropped {kind} pointer to missing synset {}", p.target)));
                continue;
            }
            if p.target == r.id {
                warnings.push(warn(format!("dropped self-referential {kind} pointer")));
                continue;
            }
            if kind == "hyperonym" {
                if p.target.pos != r.id.pos {
                    warnings.push(warn(format!("dropped cross-pos hyperonym pointer to {}", p.target)));
                    continue;
                }
                hyperonyms.entry(r.id).or_default().push(p.target);
            } else {
                antonyms.entry(r.id).or_default().insert(p.target);
                antonyms.entry(p.target).or_default().insert(r.id);
            }
        }
    }

    let mut synsets = Vec::with_capacity(records.len());
    for r in records {
        let gloss = clean_gloss(&r.gloss).map_err(|_| Error::EmptyGloss {
            synset: r.id.to_string(),
        })?;
        synsets.push(Synset {
            id: r.id,
            lemmas: r.lemmas,
            gloss,
            hyperonyms: hyperonyms.remove(&r.id).unwrap_or_default(),
            antonyms: antonyms
                .remove(&r.id)
                .map(|s| s.into_iter().collect())
                .unwrap_or_default(),
        });
    }
    warnings.sort_by(|a, b| (a.synset, &a.message).cmp(&(b.synset, &b.message)));
    Ok((Lexicon::new(synsets)?, warnings))
}
