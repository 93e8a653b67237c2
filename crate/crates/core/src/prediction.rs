//! Classifier predictions and the shared TSV prediction file format:
//!
//! ```text
//! pair_id<TAB>label[<TAB>s_hyperonymy<TAB>s_hyponymy<TAB>s_cohyponymy<TAB>s_antonymy<TAB>s_homonymy]
//! ```
//!
//! A header line starting with `pair_id` is written and optional on input.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::RelationLabel;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub pair_id: String,
    pub label: RelationLabel,
    /// Per-class scores in [`RelationLabel::ALL`] order.
    pub scores: Option<[f64; 5]>,
}

pub fn write_predictions<W: Write>(preds: &[Prediction], out: W) -> Result<()> {
    let mut w = BufWriter::new(out);
    let err = |e| Error::io("<prediction output>", e);
    let mut header = vec!["pair_id", "label"];
    header.extend(RelationLabel::ALL.iter().map(|l| l.score_column()));
    writeln!(w, "{}", header.join("\t")).map_err(err)?;
    for p in preds {
        if p.pair_id.contains(['\t', '\n']) {
            return Err(Error::data(format!("pair id {:?} contains a tab or newline", p.pair_id)));
        }
        write!(w, "{}\t{}", p.pair_id, p.label).map_err(err)?;
        if let Some(scores) = &p.scores {
            for s in scores {
                write!(w, "\t{s}").map_err(err)?;
            }
        }
        writeln!(w).map_err(err)?;
    }
    w.flush().map_err(err)
}

pub fn write_predictions_file(preds: &[Prediction], path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_predictions(preds, file)
}

/// Parse a prediction file, checking the column count and pair id uniqueness.
pub fn parse_predictions(text: &str, source: &str) -> Result<Vec<Prediction>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut offset = 0u64;
    for line in text.split_inclusive('\n') {
        let line_offset = offset;
        offset += line.len() as u64;
        let line = line.trim_end_matches(['\n', '\r']);
        if line.is_empty() || (line_offset == 0 && line.starts_with("pair_id\t")) {
            continue;
        }
        let perr = |message: String| Error::Parse {
            file: source.to_string(),
            offset: line_offset,
            message,
        };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 2 && cols.len() != 7 {
            return Err(perr(format!("expected 2 or 7 columns, found {}", cols.len())));
        }
        let label: RelationLabel = cols[1].parse().map_err(|e: Error| perr(e.to_string()))?;
        let scores = if cols.len() == 7 {
            let mut s = [0.0; 5];
            for (slot, raw) in s.iter_mut().zip(&cols[2..]) {
                *slot = raw
                    .parse()
                    .map_err(|_| perr(format!("bad score `{raw}`")))?;
            }
            Some(s)
        } else {
            None
        };
        if !seen.insert(cols[0].to_string()) {
            return Err(perr(format!("duplicate pair id `{}`", cols[0])));
        }
        out.push(Prediction {
            pair_id: cols[0].to_string(),
            label,
            scores,
        });
    }
    Ok(out)
}

pub fn read_predictions_file(path: &Path) -> Result<Vec<Prediction>> {
    let text = crate::eval::io::read_text(path)?;
    parse_predictions(&text, &path.display().to_string())
}

/// Index predictions by pair id.
pub fn by_pair_id(preds: &[Prediction]) -> BTreeMap<&str, &Prediction> {
    preds.iter().map(|p| (p.pair_id.as_str(), p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_parse() {
        let preds = vec![
            Prediction {
                pair_id: "a".into(),
                label: RelationLabel::CoHyponymy,
                scores: Some([0.1, -0.2, 1.5, 0.0, 0.25]),
            },
            Prediction {
                pair_id: "b".into(),
                label: RelationLabel::Homonymy,
                scores: None,
            },
        ];
        let mut buf = Vec::new();
        write_predictions(&preds, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "pair_id\tlabel\ts_hyperonymy\ts_hyponymy\ts_cohyponymy\ts_antonymy\ts_homonymy\na\tco-hyponymy\t0.1\t-0.2\t1.5\t0\t0.25\n"
        ));
        assert_eq!(parse_predictions(&text, "t").unwrap(), preds);
    }

    #[test]
    fn header_is_optional() {
        let p = parse_predictions("x\thomonymy\n", "t").unwrap();
        assert_eq!(p[0].label, RelationLabel::Homonymy);
    }

    #[test]
    fn rejects_duplicates_and_bad_rows() {
        assert!(parse_predictions("x\thomonymy\nx\tantonymy\n", "t").is_err());
        assert!(parse_predictions("x\tsynonymy\n", "t").is_err());
        assert!(parse_predictions("x\thomonymy\t0.5\n", "t").is_err());
        assert!(parse_predictions("x\thomonymy\t1\t2\t3\t4\tfive\n", "t").is_err());
    }
}
