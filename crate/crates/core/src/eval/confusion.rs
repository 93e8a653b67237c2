use std::fmt::Display;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::RelationLabel;

/// Rows are gold labels, columns are predicted labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfusionMatrix<L = RelationLabel> {
    pub labels: Vec<L>,
    pub counts: Vec<Vec<u64>>,
    /// Row-normalized counts; rows without support are all zero.
    pub normalized: Vec<Vec<f64>>,
}

/// Confusion matrix over the five relation labels.
pub fn confusion(golds: &[RelationLabel], preds: &[RelationLabel]) -> Result<ConfusionMatrix> {
    confusion_over(&RelationLabel::ALL, golds, preds)
}

/// Confusion matrix over an explicit, ordered label set.
pub fn confusion_over<L: PartialEq + Clone + Display>(labels: &[L], golds: &[L], preds: &[L]) -> Result<ConfusionMatrix<L>> {
    if golds.len() != preds.len() {
        return Err(Error::data(format!(
            "{} gold labels but {} predictions",
            golds.len(),
            preds.len()
        )));
    }
    if golds.is_empty() {
        return Err(Error::data("confusion matrix needs at least one pair"));
    }
    let position = |l: &L| {
        labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| Error::data(format!("label `{l}` is not in the label set")))
    };
    let k = labels.len();
    let mut counts = vec![vec![0u64; k]; k];
    for (g, p) in golds.iter().zip(preds) {
        counts[position(g)?][position(p)?] += 1;
    }
    let normalized = counts
        .iter()
        .map(|row| {
            let total: u64 = row.iter().sum();
            row.iter()
                .map(|c| if total > 0 { *c as f64 / total as f64 } else { 0.0 })
                .collect()
        })
        .collect();
    Ok(ConfusionMatrix {
        labels: labels.to_vec(),
        counts,
        normalized,
    })
}

impl<L: PartialEq + Display> ConfusionMatrix<L> {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn support(&self, i: usize) -> u64 {
        self.counts[i].iter().sum()
    }

    /// Per-class recall (the normalized diagonal); `None` without support.
    pub fn recall(&self, i: usize) -> Option<f64> {
        (self.support(i) > 0).then(|| self.normalized[i][i])
    }

    pub fn accuracy(&self) -> f64 {
        let correct: u64 = (0..self.labels.len()).map(|i| self.counts[i][i]).sum();
        correct as f64 / self.total() as f64
    }

    /// Rate of the most frequent gold class, i.e. the accuracy of always
    /// predicting it.
    pub fn majority_rate(&self) -> f64 {
        let best = (0..self.labels.len()).map(|i| self.support(i)).max().unwrap_or(0);
        best as f64 / self.total() as f64
    }

    /// CSV with a `gold\predicted` corner cell; `normalized` picks the table.
    pub fn to_csv(&self, normalized: bool) -> String {
        let mut out = String::from("gold\\predicted");
        for l in &self.labels {
            write!(out, ",{l}").unwrap();
        }
        out.push('\n');
        for (i, l) in self.labels.iter().enumerate() {
            write!(out, "{l}").unwrap();
            for j in 0..self.labels.len() {
                if normalized {
                    write!(out, ",{}", self.normalized[i][j]).unwrap();
                } else {
                    write!(out, ",{}", self.counts[i][j]).unwrap();
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RelationLabel::*;

    #[test]
    fn two_label_example() {
        let m = confusion_over(
            &[Hyperonymy, Hyponymy],
            &[Hyperonymy, Hyperonymy, Hyponymy],
            &[Hyperonymy, Hyponymy, Hyponymy],
        )
        .unwrap();
        assert_eq!(m.counts, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(m.normalized, vec![vec![0.5, 0.5], vec![0.0, 1.0]]);
        assert_eq!(m.recall(0), Some(0.5));
    }

    #[test]
    fn perfect_predictions_give_identity() {
        let golds = RelationLabel::ALL.to_vec();
        let m = confusion(&golds, &golds).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(m.normalized[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
        assert_eq!(m.accuracy(), 1.0);
    }

    #[test]
    fn errors() {
        assert!(confusion(&[Hyperonymy], &[]).is_err());
        assert!(confusion(&[], &[]).is_err());
        assert!(confusion_over(&[Hyperonymy], &[Hyperonymy], &[Homonymy]).is_err());
    }

    #[test]
    fn rows_without_support() {
        let m = confusion(&[Antonymy, Antonymy], &[Antonymy, Homonymy]).unwrap();
        assert_eq!(m.recall(0), None);
        assert_eq!(m.recall(3), Some(0.5));
        assert_eq!(m.total(), 2);
        assert!(m.to_csv(false).starts_with("gold\\predicted,hyperonymy,hyponymy"));
    }
}
