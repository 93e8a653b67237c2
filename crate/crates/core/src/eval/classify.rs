use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::confusion::{confusion, ConfusionMatrix};
use super::io::id_list;
use crate::error::{Error, Result};
use crate::labels::RelationLabel;
use crate::prediction::{by_pair_id, Prediction};

/// Relation classification quality on a labeled test set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub accuracy: f64,
    /// Accuracy of always predicting the most frequent gold class.
    pub majority_rate: f64,
    /// Normalized diagonal; absent for classes without test pairs.
    pub recall: BTreeMap<RelationLabel, f64>,
    pub confusion: ConfusionMatrix,
}

/// Score predictions against `(pair_id, gold label)` items. Every item needs
/// a prediction; predictions for other ids are ignored.
pub fn eval_classification<'a>(gold: impl IntoIterator<Item = (&'a str, RelationLabel)>, preds: &[Prediction]) -> Result<ClassificationReport> {
    let index = by_pair_id(preds);
    let mut golds = Vec::new();
    let mut predicted = Vec::new();
    let mut missing = Vec::new();
    for (id, label) in gold {
        match index.get(id) {
            Some(p) => {
                golds.push(label);
                predicted.push(p.label);
            }
            None => missing.push(id.to_string()),
        }
    }
    if !missing.is_empty() {
        return Err(Error::data(format!(
            "{} test pairs have no prediction: {}",
            missing.len(),
            id_list(&missing)
        )));
    }
    let matrix = confusion(&golds, &predicted)?;
    let recall = RelationLabel::ALL
        .iter()
        .filter_map(|l| matrix.recall(l.index()).map(|r| (*l, r)))
        .collect();
    Ok(ClassificationReport {
        n: golds.len(),
        accuracy: matrix.accuracy(),
        majority_rate: matrix.majority_rate(),
        recall,
        confusion: matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use RelationLabel::*;

    fn pred(id: &str, label: RelationLabel) -> Prediction {
        Prediction {
            pair_id: id.into(),
            label,
            scores: None,
        }
    }

    #[test]
    fn accuracy_and_majority() {
        let gold = [("a", Homonymy), ("b", Homonymy), ("c", Antonymy)];
        let preds = [pred("a", Homonymy), pred("b", Antonymy), pred("c", Antonymy), pred("z", Hyponymy)];
        let r = eval_classification(gold, &preds).unwrap();
        assert_eq!(r.n, 3);
        assert!((r.accuracy - 2.0 / 3.0).abs() < 1e-15);
        assert!((r.majority_rate - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.recall.len(), 2);
        assert_eq!(r.recall[&Antonymy], 1.0);
        assert!(eval_classification([("q", Homonymy)], &preds).is_err());
    }
}
