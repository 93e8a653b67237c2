//! Labeled definition pairs: generation from a lexicon, splitting, and the
//! JSONL pair file format.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::RelationLabel;
use crate::wordnet::{Pos, SynsetId};

mod generate;
mod split;

pub use generate::{
    gen_antonym_pairs, gen_cohyponym_pairs, gen_homonym_pairs, gen_hyperonym_pairs,
    gen_hyponym_pairs, generate_all,
};
pub use split::{leakage, split_dataset, LeakageReport, Split, SplitSpec, SplitStats, Splits};

/// An ordered pair of definitions with its relation label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPair {
    pub id: String,
    pub def1: Arc<str>,
    pub def2: Arc<str>,
    pub label: RelationLabel,
    pub pos: Pos,
    pub src1: SynsetId,
    pub src2: SynsetId,
}

impl LabeledPair {
    pub fn new(label: RelationLabel, src1: SynsetId, def1: Arc<str>, src2: SynsetId, def2: Arc<str>) -> Self {
        debug_assert_eq!(src1.pos, src2.pos);
        LabeledPair {
            id: pair_id(label, src1, src2),
            def1,
            def2,
            label,
            pos: src1.pos,
            src1,
            src2,
        }
    }

    /// Dedup/leakage key: the two definition texts and the label.
    pub fn key(&self) -> (&str, &str, RelationLabel) {
        (&self.def1, &self.def2, self.label)
    }
}

pub fn pair_id(label: RelationLabel, src1: SynsetId, src2: SynsetId) -> String {
    format!("{}:{}:{}", label, src1, src2)
}

/// Shares definition strings between pairs read from disk.
#[derive(Default)]
pub struct Interner {
    strings: HashSet<Arc<str>>,
}

impl Interner {
    pub fn intern(&mut self, s: Arc<str>) -> Arc<str> {
        if let Some(k) = self.strings.get(&s) {
            return k.clone();
        }
        self.strings.insert(s.clone());
        s
    }
}

pub fn write_pairs<W: Write>(pairs: &[LabeledPair], mut out: W) -> Result<()> {
    for p in pairs {
        serde_json::to_writer(&mut out, p)?;
        out.write_all(b"\n").map_err(|e| Error::io("<pair output>", e))?;
    }
    Ok(())
}

pub fn write_pairs_file(pairs: &[LabeledPair], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_pairs(pairs, &mut w)?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_pairs_file(path: &Path) -> Result<Vec<LabeledPair>> {
    read_pairs_interned(path, &mut Interner::default())
}

pub fn read_pairs_interned(path: &Path, interner: &mut Interner) -> Result<Vec<LabeledPair>> {
    let file = File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile {
            path: path.to_path_buf(),
        },
        _ => Error::io(path, e),
    })?;
    let mut reader = BufReader::new(file);
    let mut out = Vec::new();
    let mut line = String::new();
    let mut offset = 0u64;
    loop {
        line.clear();
        let n = reader.read_line(&mut line).map_err(|e| Error::io(path, e))?;
        if n == 0 {
            break;
        }
        if !line.trim().is_empty() {
            let mut p: LabeledPair = serde_json::from_str(&line).map_err(|e| Error::Parse {
                file: path.display().to_string(),
                offset,
                message: e.to_string(),
            })?;
            if p.src1 == p.src2 {
                return Err(Error::data(format!("pair {} pairs a synset with itself", p.id)));
            }
            if p.src1.pos != p.src2.pos || p.pos != p.src1.pos {
                return Err(Error::data(format!("pair {} mixes parts of speech", p.id)));
            }
            p.def1 = interner.intern(p.def1);
            p.def2 = interner.intern(p.def2);
            out.push(p);
        }
        offset += n as u64;
    }
    Ok(out)
}

/// File name used for a class's exhaustive pair list.
pub fn class_file_name(label: RelationLabel) -> String {
    format!("{}.jsonl", label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_file_round_trip() {
        let a = SynsetId::new(1, Pos::Verb);
        let b = SynsetId::new(2, Pos::Verb);
        let p = LabeledPair::new(RelationLabel::Hyponymy, a, "kill".into(), b, "drown".into());
        assert_eq!(p.id, "hyponymy:00000001-v:00000002-v");
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.jsonl");
        write_pairs_file(std::slice::from_ref(&p), &path).unwrap();
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            "{\"id\":\"hyponymy:00000001-v:00000002-v\",\"def1\":\"kill\",\"def2\":\"drown\",\"label\":\"hyponymy\",\"pos\":\"verb\",\"src1\":\"00000001-v\",\"src2\":\"00000002-v\"}\n"
        );
        assert_eq!(read_pairs_file(&path).unwrap(), vec![p]);
    }

    #[test]
    fn rejects_cross_pos_pair() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.jsonl");
        std::fs::write(
            &path,
            "{\"id\":\"x\",\"def1\":\"a\",\"def2\":\"b\",\"label\":\"homonymy\",\"pos\":\"noun\",\"src1\":\"00000001-n\",\"src2\":\"00000002-v\"}\n",
        )
        .unwrap();
        assert!(matches!(read_pairs_file(&path), Err(Error::Data(_))));
    }
}
