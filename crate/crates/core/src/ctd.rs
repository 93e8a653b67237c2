//! The cause/type/definition benchmark of attested semantic changes.
//!
//! The file is CSV with the columns in [`COLUMNS`]. A column map (JSON object
//! from canonical name to file header) adapts files with other headers.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::confusion::{confusion, ConfusionMatrix};
use crate::eval::io::{id_list, read_text};
use crate::labels::{map_change_type, ChangeType, RelationLabel};
use crate::prediction::{by_pair_id, Prediction};

pub const COLUMNS: [&str; 9] = [
    "word",
    "old_gloss",
    "new_gloss",
    "old_translation",
    "new_translation",
    "old_definition",
    "new_definition",
    "cause",
    "type",
];

/// Canonical column name → header used in the file.
pub type ColumnMap = BTreeMap<String, String>;

pub fn load_column_map(path: &Path) -> Result<ColumnMap> {
    let map: ColumnMap = serde_json::from_str(&read_text(path)?)?;
    if let Some(unknown) = map.keys().find(|k| !COLUMNS.contains(&k.as_str())) {
        return Err(Error::config(format!("column map names unknown column `{unknown}`")));
    }
    Ok(map)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CtdEntry {
    /// 1-based data row, excluding the header.
    pub row: usize,
    pub word: String,
    pub old_gloss: String,
    pub new_gloss: String,
    pub old_translation: String,
    pub new_translation: String,
    pub old_definition: String,
    pub new_definition: String,
    pub cause: String,
    /// The type cell as written in the file.
    pub raw_type: String,
    /// `None` for types outside the five modeled ones.
    pub change_type: Option<ChangeType>,
}

impl CtdEntry {
    /// Whether the entry takes part in change-type evaluation.
    pub fn in_scope(&self) -> bool {
        matches!(self.change_type, Some(t) if t != ChangeType::Unrelated)
    }

    pub fn pair_id(&self) -> String {
        format!("ctd-{:04}", self.row)
    }

    pub fn expected_label(&self) -> Option<RelationLabel> {
        self.change_type.map(map_change_type)
    }

    fn cells(&self) -> [&str; 9] {
        [
            &self.word,
            &self.old_gloss,
            &self.new_gloss,
            &self.old_translation,
            &self.new_translation,
            &self.old_definition,
            &self.new_definition,
            &self.cause,
            &self.raw_type,
        ]
    }
}

pub fn parse_ctd<R: Read>(input: R, source: &str, map: Option<&ColumnMap>) -> Result<Vec<CtdEntry>> {
    let mut reader = csv::ReaderBuilder::new().flexible(false).from_reader(input);
    let headers = reader.headers()?.clone();
    let mut positions = [0usize; 9];
    for (slot, name) in positions.iter_mut().zip(COLUMNS) {
        let header = map.and_then(|m| m.get(name)).map_or(name, String::as_str);
        *slot = headers
            .iter()
            .position(|h| h.trim() == header)
            .ok_or_else(|| Error::data(format!("{source}: missing column `{header}`")))?;
    }
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = i + 1;
        let cell = |k: usize| record.get(positions[k]).unwrap_or_default().to_string();
        for k in [5, 6] {
            if cell(k).trim().is_empty() {
                return Err(Error::data(format!("{source}: row {row} has an empty {}", COLUMNS[k])));
            }
        }
        let raw_type = cell(8);
        out.push(CtdEntry {
            row,
            word: cell(0),
            old_gloss: cell(1),
            new_gloss: cell(2),
            old_translation: cell(3),
            new_translation: cell(4),
            old_definition: cell(5),
            new_definition: cell(6),
            cause: cell(7),
            change_type: raw_type.parse().ok(),
            raw_type,
        });
    }
    Ok(out)
}

pub fn load_ctd(path: &Path, map: Option<&ColumnMap>) -> Result<Vec<CtdEntry>> {
    let text = read_text(path)?;
    parse_ctd(text.as_bytes(), &path.display().to_string(), map)
}

/// Write entries back with the canonical header, quoting only where needed.
pub fn write_ctd<W: Write>(entries: &[CtdEntry], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for e in entries {
        w.write_record(e.cells())?;
    }
    w.flush().map_err(|e| Error::io("<benchmark output>", e))
}

/// A benchmark entry as a definition pair with its expected relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CtdPair {
    pub id: String,
    pub word: String,
    pub def1: String,
    pub def2: String,
    pub label: RelationLabel,
    pub change_type: ChangeType,
}

/// Pairs for every entry with a known change type, old definition first
/// unless `swap` is set.
pub fn ctd_to_pairs(entries: &[CtdEntry], swap: bool) -> Vec<CtdPair> {
    entries
        .iter()
        .filter_map(|e| {
            let t = e.change_type?;
            let (def1, def2) = if swap {
                (&e.new_definition, &e.old_definition)
            } else {
                (&e.old_definition, &e.new_definition)
            };
            Some(CtdPair {
                id: e.pair_id(),
                word: e.word.clone(),
                def1: def1.clone(),
                def2: def2.clone(),
                label: map_change_type(t),
                change_type: t,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeRecall {
    pub change_type: ChangeType,
    pub label: RelationLabel,
    pub support: u64,
    /// Predicted label counts in [`RelationLabel::ALL`] order.
    pub counts: Vec<u64>,
    pub normalized: Vec<f64>,
    pub recall: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CtdReport {
    pub n: usize,
    /// Entries left out because their type is not one of the modeled changes.
    pub excluded: usize,
    pub accuracy: f64,
    pub confusion: ConfusionMatrix,
    pub per_type: Vec<TypeRecall>,
}

/// Confusion of in-scope entries against predictions keyed by
/// [`CtdEntry::pair_id`].
pub fn eval_ctd(entries: &[CtdEntry], preds: &[Prediction]) -> Result<CtdReport> {
    let index = by_pair_id(preds);
    let scoped: Vec<&CtdEntry> = entries.iter().filter(|e| e.in_scope()).collect();
    let mut golds = Vec::with_capacity(scoped.len());
    let mut predicted = Vec::with_capacity(scoped.len());
    let mut missing = Vec::new();
    for e in &scoped {
        let id = e.pair_id();
        match index.get(id.as_str()) {
            Some(p) => {
                golds.push(e.expected_label().expect("in-scope entries have a type"));
                predicted.push(p.label);
            }
            None => missing.push(id),
        }
    }
    if !missing.is_empty() {
        return Err(Error::data(format!(
            "{} benchmark entries have no prediction: {}",
            missing.len(),
            id_list(&missing)
        )));
    }
    if scoped.is_empty() {
        return Err(Error::data("no in-scope benchmark entries to evaluate"));
    }
    let matrix = confusion(&golds, &predicted)?;
    let per_type = ChangeType::ALL
        .iter()
        .filter_map(|t| {
            let label = map_change_type(*t);
            let i = label.index();
            let recall = matrix.recall(i)?;
            Some(TypeRecall {
                change_type: *t,
                label,
                support: matrix.support(i),
                counts: matrix.counts[i].clone(),
                normalized: matrix.normalized[i].clone(),
                recall,
            })
        })
        .collect();
    Ok(CtdReport {
        n: scoped.len(),
        excluded: entries.len() - scoped.len(),
        accuracy: matrix.accuracy(),
        confusion: matrix,
        per_type,
    })
}
