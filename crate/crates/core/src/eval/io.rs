//! TSV readers for judgment, cosine and gold files.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile {
            path: path.to_path_buf(),
        },
        _ => Error::io(path, e),
    })
}

/// Two usages of a lemma with their mean human relatedness judgment (1-4).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JudgedUsagePair {
    pub lemma: String,
    pub usage_id1: String,
    pub usage_id2: String,
    pub period1: String,
    pub period2: String,
    pub judgment: f64,
    pub cosine: Option<f64>,
}

impl JudgedUsagePair {
    /// `usage_id1||usage_id2`, the key shared by cosine and prediction files.
    pub fn pair_id(&self) -> String {
        format!("{}||{}", self.usage_id1, self.usage_id2)
    }

    pub fn is_cross_period(&self) -> bool {
        self.period1 != self.period2
    }
}

struct Row<'a> {
    offset: u64,
    cols: Vec<&'a str>,
}

/// Split TSV text into rows, skipping blank lines and an optional header
/// whose first column equals `header`.
fn tsv_rows<'a>(text: &'a str, header: &str) -> Vec<Row<'a>> {
    let mut rows = Vec::new();
    let mut offset = 0u64;
    for line in text.split_inclusive('\n') {
        let line_offset = offset;
        offset += line.len() as u64;
        let line = line.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if line_offset == 0 && cols[0] == header {
            continue;
        }
        rows.push(Row {
            offset: line_offset,
            cols,
        });
    }
    rows
}

fn parse_err(source: &str, offset: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        file: source.to_string(),
        offset,
        message: message.into(),
    }
}

/// Parse a judgment file:
/// `lemma<TAB>usage_id1<TAB>usage_id2<TAB>period1<TAB>period2<TAB>judgment`.
///
/// With `aggregate`, repeated rows for the same usage pair are raw annotator
/// judgments: rows with judgment 0 ("cannot decide") are skipped and the rest
/// are averaged. Without it, every usage pair must appear once.
pub fn parse_judgments(text: &str, source: &str, aggregate: bool) -> Result<Vec<JudgedUsagePair>> {
    let mut out: Vec<JudgedUsagePair> = Vec::new();
    let mut sums: Vec<(f64, usize)> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for row in tsv_rows(text, "lemma") {
        if row.cols.len() != 6 {
            return Err(parse_err(
                source,
                row.offset,
                format!("expected 6 columns, found {}", row.cols.len()),
            ));
        }
        let judgment: f64 = row.cols[5]
            .trim()
            .parse()
            .map_err(|_| parse_err(source, row.offset, format!("bad judgment `{}`", row.cols[5])))?;
        if aggregate && judgment == 0.0 {
            continue;
        }
        if !(1.0..=4.0).contains(&judgment) {
            return Err(parse_err(
                source,
                row.offset,
                format!("judgment {judgment} outside the 1-4 scale"),
            ));
        }
        let pair = JudgedUsagePair {
            lemma: row.cols[0].to_string(),
            usage_id1: row.cols[1].to_string(),
            usage_id2: row.cols[2].to_string(),
            period1: row.cols[3].to_string(),
            period2: row.cols[4].to_string(),
            judgment,
            cosine: None,
        };
        let id = pair.pair_id();
        match index.get(&id) {
            Some(&i) if aggregate => {
                sums[i].0 += judgment;
                sums[i].1 += 1;
            }
            Some(_) => {
                return Err(parse_err(source, row.offset, format!("duplicate usage pair `{id}`")));
            }
            None => {
                index.insert(id, out.len());
                sums.push((judgment, 1));
                out.push(pair);
            }
        }
    }
    for (pair, (sum, n)) in out.iter_mut().zip(sums) {
        pair.judgment = sum / n as f64;
    }
    Ok(out)
}

pub fn read_judgments(path: &Path, aggregate: bool) -> Result<Vec<JudgedUsagePair>> {
    parse_judgments(&read_text(path)?, &path.display().to_string(), aggregate)
}

/// Parse `pair_id<TAB>cosine`.
pub fn parse_cosines(text: &str, source: &str) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for row in tsv_rows(text, "pair_id") {
        if row.cols.len() != 2 {
            return Err(parse_err(
                source,
                row.offset,
                format!("expected 2 columns, found {}", row.cols.len()),
            ));
        }
        let cos: f64 = row.cols[1]
            .trim()
            .parse()
            .map_err(|_| parse_err(source, row.offset, format!("bad cosine `{}`", row.cols[1])))?;
        if !cos.is_finite() {
            return Err(parse_err(source, row.offset, "cosine is not finite"));
        }
        if out.insert(row.cols[0].to_string(), cos).is_some() {
            return Err(parse_err(source, row.offset, format!("duplicate pair id `{}`", row.cols[0])));
        }
    }
    Ok(out)
}

pub fn read_cosines(path: &Path) -> Result<BTreeMap<String, f64>> {
    parse_cosines(&read_text(path)?, &path.display().to_string())
}

/// Parse `lemma<TAB>change` with change in {0, 1}.
pub fn parse_gold(text: &str, source: &str) -> Result<BTreeMap<String, u8>> {
    let mut out = BTreeMap::new();
    for row in tsv_rows(text, "lemma") {
        if row.cols.len() != 2 {
            return Err(parse_err(
                source,
                row.offset,
                format!("expected 2 columns, found {}", row.cols.len()),
            ));
        }
        let change = match row.cols[1].trim() {
            "0" => 0,
            "1" => 1,
            other => return Err(parse_err(source, row.offset, format!("change must be 0 or 1, got `{other}`"))),
        };
        if out.insert(row.cols[0].to_string(), change).is_some() {
            return Err(parse_err(source, row.offset, format!("duplicate lemma `{}`", row.cols[0])));
        }
    }
    Ok(out)
}

pub fn read_gold(path: &Path) -> Result<BTreeMap<String, u8>> {
    parse_gold(&read_text(path)?, &path.display().to_string())
}

/// Attach cosine scores by pair id. Pairs without a score keep `None`.
pub fn attach_cosines(pairs: &mut [JudgedUsagePair], cosines: &BTreeMap<String, f64>) {
    for p in pairs {
        p.cosine = cosines.get(&p.pair_id()).copied();
    }
}

/// Short human-readable list of ids for error messages.
pub(crate) fn id_list(ids: &[String]) -> String {
    const SHOWN: usize = 10;
    let mut s = ids.iter().take(SHOWN).cloned().collect::<Vec<_>>().join(", ");
    if ids.len() > SHOWN {
        s.push_str(&format!(" and {} more", ids.len() - SHOWN));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn judgments_with_header() {
        let text = "lemma\tusage_id1\tusage_id2\tperiod1\tperiod2\tjudgment\nplane\tu1\tu2\t1\t2\t3.5\n";
        let j = parse_judgments(text, "t", false).unwrap();
        assert_eq!(j.len(), 1);
        assert_eq!(j[0].pair_id(), "u1||u2");
        assert!(j[0].is_cross_period());
        assert_eq!(j[0].judgment, 3.5);
    }

    #[test]
    fn judgment_range_and_duplicates() {
        assert!(parse_judgments("w\ta\tb\t1\t1\t4.5\n", "t", false).is_err());
        assert!(parse_judgments("w\ta\tb\t1\t1\t2\nw\ta\tb\t1\t1\t3\n", "t", false).is_err());
        assert!(parse_judgments("w\ta\tb\t1\t1\n", "t", false).is_err());
    }

    #[test]
    fn aggregation_averages_and_skips_zero() {
        let text = "w\ta\tb\t1\t2\t2\nw\ta\tb\t1\t2\t0\nw\ta\tb\t1\t2\t3\nw\tc\td\t1\t1\t4\n";
        let j = parse_judgments(text, "t", true).unwrap();
        assert_eq!(j.len(), 2);
        assert_eq!(j[0].judgment, 2.5);
        assert_eq!(j[1].judgment, 4.0);
    }

    #[test]
    fn cosines_and_gold() {
        let c = parse_cosines("pair_id\tcosine\na||b\t0.25\nc||d\t-0.5\n", "t").unwrap();
        assert_eq!(c["c||d"], -0.5);
        assert!(parse_cosines("a||b\tnan\n", "t").is_err());
        assert!(parse_cosines("a||b\t1\na||b\t2\n", "t").is_err());
        let g = parse_gold("attack\t1\nbit\t0\n", "t").unwrap();
        assert_eq!(g["attack"], 1);
        assert!(parse_gold("x\t2\n", "t").is_err());
    }
}
