use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::io::{id_list, JudgedUsagePair};
use super::spearman::spearman;
use crate::error::{Error, Result};
use crate::labels::{RelationLabel, Relatedness};
use crate::prediction::{by_pair_id, Prediction};

/// Relation-aware relatedness score: the cosine for related pairs, 0 for
/// unrelated ones. Negative cosines pass through unchanged.
pub fn combine_score(cosine: f64, relatedness: Relatedness) -> Result<f64> {
    if !cosine.is_finite() {
        return Err(Error::data(format!("cosine {cosine} is not finite")));
    }
    Ok(match relatedness {
        Relatedness::Related => cosine,
        Relatedness::Unrelated => 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WicMode {
    /// Correlate judgments with the 0/1 relatedness of the predicted label.
    BinaryOnly,
    /// Correlate judgments with [`combine_score`].
    Combined,
}

impl WicMode {
    pub fn as_str(self) -> &'static str {
        match self {
            WicMode::BinaryOnly => "binary-only",
            WicMode::Combined => "combined",
        }
    }
}

impl fmt::Display for WicMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WicMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary-only" | "binary" => Ok(WicMode::BinaryOnly),
            "combined" => Ok(WicMode::Combined),
            _ => Err(Error::config(format!("unknown graded mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WicReport {
    pub mode: WicMode,
    pub n: usize,
    pub spearman: f64,
    /// Judgments against raw cosines, when every pair has one.
    pub cosine_only_spearman: Option<f64>,
}

/// Look up the prediction of every pair, failing with the list of pair ids
/// that have none.
fn predictions_for<'a>(pairs: &[JudgedUsagePair], preds: &'a [Prediction]) -> Result<Vec<&'a Prediction>> {
    let index = by_pair_id(preds);
    let mut found = Vec::with_capacity(pairs.len());
    let mut missing = Vec::new();
    for p in pairs {
        let id = p.pair_id();
        match index.get(id.as_str()) {
            Some(pred) => found.push(*pred),
            None => missing.push(id),
        }
    }
    if !missing.is_empty() {
        return Err(Error::data(format!(
            "{} judged pairs have no prediction: {}",
            missing.len(),
            id_list(&missing)
        )));
    }
    Ok(found)
}

fn all_cosines(pairs: &[JudgedUsagePair]) -> Option<Vec<f64>> {
    pairs.iter().map(|p| p.cosine).collect()
}

/// Spearman correlation of human judgments with predicted relatedness,
/// optionally weighted by cosine similarity.
pub fn eval_graded_wic(pairs: &[JudgedUsagePair], preds: &[Prediction], mode: WicMode) -> Result<WicReport> {
    let found = predictions_for(pairs, preds)?;
    let judgments: Vec<f64> = pairs.iter().map(|p| p.judgment).collect();
    let cosines = all_cosines(pairs);
    let scores: Vec<f64> = match mode {
        WicMode::BinaryOnly => found.iter().map(|p| p.label.relatedness().as_score()).collect(),
        WicMode::Combined => {
            let Some(cos) = &cosines else {
                let missing: Vec<String> = pairs
                    .iter()
                    .filter(|p| p.cosine.is_none())
                    .map(|p| p.pair_id())
                    .collect();
                return Err(Error::data(format!(
                    "combined mode needs a cosine for every pair; missing for {}",
                    id_list(&missing)
                )));
            };
            cos.iter()
                .zip(&found)
                .map(|(c, p)| combine_score(*c, p.label.relatedness()))
                .collect::<Result<_>>()?
        }
    };
    let cosine_only_spearman = match &cosines {
        Some(cos) => Some(spearman(&judgments, cos)?),
        None => None,
    };
    Ok(WicReport {
        mode,
        n: pairs.len(),
        spearman: spearman(&judgments, &scores)?,
        cosine_only_spearman,
    })
}

/// Nearest integer bin on the 1-4 scale, rounding halves up.
pub fn bin_judgment(judgment: f64) -> u8 {
    (judgment + 0.5).floor().clamp(1.0, 4.0) as u8
}

/// Predicted label × judgment bin cross-tabulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JudgmentDistribution {
    pub labels: Vec<RelationLabel>,
    pub bins: Vec<u8>,
    /// `counts[label][bin - 1]`.
    pub counts: Vec<Vec<u64>>,
    /// Each label row divided by its total; zero rows stay zero.
    pub row_ratios: Vec<Vec<f64>>,
    /// Each bin column divided by its total; zero columns stay zero.
    pub column_shares: Vec<Vec<f64>>,
    pub n: u64,
    /// Judged pairs without a prediction, left out of the table.
    pub skipped: u64,
}

pub fn judgment_distribution(pairs: &[JudgedUsagePair], preds: &[Prediction]) -> JudgmentDistribution {
    let index = by_pair_id(preds);
    let mut counts = vec![vec![0u64; 4]; 5];
    let mut skipped = 0;
    for p in pairs {
        match index.get(p.pair_id().as_str()) {
            Some(pred) => counts[pred.label.index()][bin_judgment(p.judgment) as usize - 1] += 1,
            None => skipped += 1,
        }
    }
    let share = |c: u64, total: u64| if total > 0 { c as f64 / total as f64 } else { 0.0 };
    let row_ratios = counts
        .iter()
        .map(|row| {
            let total = row.iter().sum();
            row.iter().map(|c| share(*c, total)).collect()
        })
        .collect();
    let column_totals: Vec<u64> = (0..4).map(|b| counts.iter().map(|r| r[b]).sum()).collect();
    let column_shares = counts
        .iter()
        .map(|row| row.iter().zip(&column_totals).map(|(c, t)| share(*c, *t)).collect())
        .collect();
    JudgmentDistribution {
        labels: RelationLabel::ALL.to_vec(),
        bins: vec![1, 2, 3, 4],
        n: counts.iter().flatten().sum(),
        counts,
        row_ratios,
        column_shares,
        skipped,
    }
}

/// Group pairs by lemma, keeping file order within each lemma.
pub fn by_lemma(pairs: &[JudgedUsagePair]) -> BTreeMap<&str, Vec<&JudgedUsagePair>> {
    let mut out: BTreeMap<&str, Vec<&JudgedUsagePair>> = BTreeMap::new();
    for p in pairs {
        out.entry(p.lemma.as_str()).or_default().push(p);
    }
    out
}
