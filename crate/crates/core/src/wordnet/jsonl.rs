use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{Lexicon, Synset};
use crate::error::{Error, Result};

/// Write one JSON object per synset, in id order, LF-terminated.
pub fn write_lexicon_jsonl<W: Write>(lexicon: &Lexicon, mut out: W) -> Result<()> {
    for s in lexicon.synsets() {
        serde_json::to_writer(&mut out, s)?;
        out.write_all(b"\n").map_err(|e| Error::io("<lexicon output>", e))?;
    }
    Ok(())
}

pub fn read_lexicon_jsonl(path: &Path) -> Result<Lexicon> {
    let file = File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile {
            path: path.to_path_buf(),
        },
        _ => Error::io(path, e),
    })?;
    let name = path.display().to_string();
    let mut reader = BufReader::new(file);
    let mut synsets = Vec::new();
    let mut line = String::new();
    let mut offset = 0u64;
    loop {
        line.clear();
        let n = reader.read_line(&mut line).map_err(|e| Error::io(path, e))?;
        if n == 0 {
            break;
        }
        if !line.trim().is_empty() {
            let s: Synset = serde_json::from_str(&line).map_err(|e| Error::Parse {
                file: name.clone(),
                offset,
                message: e.to_string(),
            })?;
            synsets.push(s);
        }
        offset += n as u64;
    }
    Lexicon::new(synsets)
}

/// Convenience wrapper writing to a file path.
pub fn write_lexicon_file(lexicon: &Lexicon, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_lexicon_jsonl(lexicon, &mut w)?;
    w.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordnet::test_support::*;

    #[test]
    fn round_trip() {
        let a = noun(1);
        let b = noun(2);
        let c = noun(3);
        let mut sa = synset(a, "a living thing", &[]);
        sa.antonyms.push(c);
        let mut sc = synset(c, "not a living thing", &[]);
        sc.antonyms.push(a);
        let lex = Lexicon::new([sa, synset(b, "a plant", &[a]), sc]).unwrap();

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("lexicon.jsonl");
        write_lexicon_file(&lex, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(
            r#"{"id":"00000001-n","lemmas":["w1"],"gloss":"a living thing","hyperonyms":[],"antonyms":["00000003-n"]}"#
        ));
        assert_eq!(read_lexicon_jsonl(&path).unwrap(), lex);
    }

    #[test]
    fn bad_line_reports_offset() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("lexicon.jsonl");
        std::fs::write(
            &path,
            "{\"id\":\"00000001-n\",\"lemmas\":[\"x\"],\"gloss\":\"g\",\"hyperonyms\":[],\"antonyms\":[]}\nnot json\n",
        )
        .unwrap();
        match read_lexicon_jsonl(&path) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 77),
            other => panic!("unexpected {other:?}"),
        }
    }
}
