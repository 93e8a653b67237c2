use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::io::{id_list, JudgedUsagePair};
use crate::error::{Error, Result};
use crate::labels::RelationLabel;
use crate::prediction::{by_pair_id, Prediction};

/// How a tie between homonymy and another class is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    /// Homonymy must be strictly more frequent than every other class.
    #[default]
    Strict,
    /// Homonymy may share the top count.
    Inclusive,
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieRule::Strict => "strict",
            TieRule::Inclusive => "inclusive",
        })
    }
}

impl FromStr for TieRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(TieRule::Strict),
            "inclusive" => Ok(TieRule::Inclusive),
            _ => Err(Error::config(format!("unknown tie rule `{s}`"))),
        }
    }
}

/// Label counts in [`RelationLabel::ALL`] order.
pub type LabelCounts = [u64; 5];

pub fn tally(labels: impl IntoIterator<Item = RelationLabel>) -> LabelCounts {
    let mut counts = [0; 5];
    for l in labels {
        counts[l.index()] += 1;
    }
    counts
}

/// 1 if homonymy is the most frequent label, else 0.
pub fn change_from_counts(counts: &LabelCounts, tie: TieRule) -> u8 {
    let hom = counts[RelationLabel::Homonymy.index()];
    let best_other = RelationLabel::ALL
        .iter()
        .filter(|l| **l != RelationLabel::Homonymy)
        .map(|l| counts[l.index()])
        .max()
        .unwrap_or(0);
    let changed = match tie {
        TieRule::Strict => hom > best_other,
        TieRule::Inclusive => hom > 0 && hom >= best_other,
    };
    changed as u8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaDecision {
    pub lemma: String,
    pub n: usize,
    /// Label counts for the label rule; sub-threshold pair count for the
    /// threshold rule.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<LabelCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub below_threshold: Option<usize>,
    pub predicted: u8,
    pub gold: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryReport {
    pub rule: String,
    pub accuracy: f64,
    pub n: usize,
    pub correct: usize,
    pub labels: Vec<RelationLabel>,
    pub lemmas: Vec<LemmaDecision>,
}

fn report(rule: String, lemmas: Vec<LemmaDecision>) -> BinaryReport {
    let correct = lemmas.iter().filter(|d| d.predicted == d.gold).count();
    BinaryReport {
        rule,
        accuracy: correct as f64 / lemmas.len() as f64,
        n: lemmas.len(),
        correct,
        labels: RelationLabel::ALL.to_vec(),
        lemmas,
    }
}

/// Both sides must name exactly the same, non-empty set of lemmas.
fn check_lemmas<'a>(have: impl Iterator<Item = &'a str>, gold: &BTreeMap<String, u8>) -> Result<()> {
    let have: Vec<&str> = have.collect();
    let missing: Vec<String> = gold
        .keys()
        .filter(|l| !have.contains(&l.as_str()))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Err(Error::data(format!(
            "{} gold lemmas have no cross-period pairs: {}",
            missing.len(),
            id_list(&missing)
        )));
    }
    let extra: Vec<String> = have
        .iter()
        .filter(|l| !gold.contains_key(**l))
        .map(|l| l.to_string())
        .collect();
    if !extra.is_empty() {
        return Err(Error::data(format!(
            "{} lemmas have no gold label: {}",
            extra.len(),
            id_list(&extra)
        )));
    }
    if gold.is_empty() {
        return Err(Error::data("no lemmas to evaluate"));
    }
    Ok(())
}

/// Group the predictions of cross-period pairs by lemma. Same-period pairs
/// are ignored; a cross-period pair without a prediction is an error.
pub fn cross_period_predictions(pairs: &[JudgedUsagePair], preds: &[Prediction]) -> Result<BTreeMap<String, Vec<Prediction>>> {
    let index = by_pair_id(preds);
    let mut out: BTreeMap<String, Vec<Prediction>> = BTreeMap::new();
    let mut missing = Vec::new();
    for p in pairs.iter().filter(|p| p.is_cross_period()) {
        let id = p.pair_id();
        match index.get(id.as_str()) {
            Some(pred) => out.entry(p.lemma.clone()).or_default().push((*pred).clone()),
            None => missing.push(id),
        }
    }
    if !missing.is_empty() {
        return Err(Error::data(format!(
            "{} cross-period pairs have no prediction: {}",
            missing.len(),
            id_list(&missing)
        )));
    }
    Ok(out)
}

/// Binary change detection from predicted relation labels.
pub fn eval_binary_change(per_word: &BTreeMap<String, Vec<Prediction>>, gold: &BTreeMap<String, u8>, tie: TieRule) -> Result<BinaryReport> {
    let empty: Vec<String> = per_word
        .iter()
        .filter(|(_, v)| v.is_empty())
        .map(|(l, _)| l.clone())
        .collect();
    if !empty.is_empty() {
        return Err(Error::data(format!("lemmas without predictions: {}", id_list(&empty))));
    }
    check_lemmas(per_word.keys().map(String::as_str), gold)?;
    let lemmas = per_word
        .iter()
        .map(|(lemma, preds)| {
            let counts = tally(preds.iter().map(|p| p.label));
            LemmaDecision {
                lemma: lemma.clone(),
                n: preds.len(),
                counts: Some(counts),
                below_threshold: None,
                predicted: change_from_counts(&counts, tie),
                gold: gold[lemma],
            }
        })
        .collect();
    Ok(report(format!("homonymy-majority/{tie}"), lemmas))
}

/// How pair-level sub-threshold decisions become a word-level decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregation {
    /// More than half of the pairs fall below the threshold.
    #[default]
    Majority,
    /// At least one pair falls below the threshold.
    Any,
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregation::Majority => "majority",
            Aggregation::Any => "any",
        })
    }
}

impl FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "majority" => Ok(Aggregation::Majority),
            "any" => Ok(Aggregation::Any),
            _ => Err(Error::config(format!("unknown aggregation `{s}`"))),
        }
    }
}

pub fn change_from_cosines(cosines: &[f64], threshold: f64, aggregation: Aggregation) -> u8 {
    let below = cosines.iter().filter(|c| **c < threshold).count();
    let changed = match aggregation {
        Aggregation::Majority => 2 * below > cosines.len(),
        Aggregation::Any => below > 0,
    };
    changed as u8
}

/// Cross-period cosines grouped by lemma.
pub fn cross_period_cosines(pairs: &[JudgedUsagePair]) -> Result<BTreeMap<String, Vec<f64>>> {
    let mut out: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut missing = Vec::new();
    for p in pairs.iter().filter(|p| p.is_cross_period()) {
        match p.cosine {
            Some(c) => out.entry(p.lemma.clone()).or_default().push(c),
            None => missing.push(p.pair_id()),
        }
    }
    if !missing.is_empty() {
        return Err(Error::data(format!(
            "{} cross-period pairs have no cosine: {}",
            missing.len(),
            id_list(&missing)
        )));
    }
    Ok(out)
}

/// Binary change detection from thresholded cosine similarities.
pub fn eval_binary_threshold(per_word: &BTreeMap<String, Vec<f64>>, gold: &BTreeMap<String, u8>, threshold: f64, aggregation: Aggregation) -> Result<BinaryReport> {
    if !threshold.is_finite() {
        return Err(Error::config(format!("threshold {threshold} is not finite")));
    }
    check_lemmas(per_word.keys().map(String::as_str), gold)?;
    let lemmas = per_word
        .iter()
        .map(|(lemma, cos)| LemmaDecision {
            lemma: lemma.clone(),
            n: cos.len(),
            counts: None,
            below_threshold: Some(cos.iter().filter(|c| **c < threshold).count()),
            predicted: change_from_cosines(cos, threshold, aggregation),
            gold: gold[lemma],
        })
        .collect();
    Ok(report(format!("cosine-below-{threshold}/{aggregation}"), lemmas))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub aggregation: Aggregation,
    pub threshold: f64,
    pub accuracy: f64,
    pub candidates: usize,
    pub best: BinaryReport,
}

/// Find the accuracy-maximizing threshold. Candidates are every distinct
/// cosine plus one value just above the maximum, which together realize
/// every possible split of the pairs; ties go to the smallest threshold.
pub fn sweep_threshold(per_word: &BTreeMap<String, Vec<f64>>, gold: &BTreeMap<String, u8>, aggregation: Aggregation) -> Result<SweepReport> {
    let mut candidates: Vec<f64> = per_word.values().flatten().copied().collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let Some(max) = candidates.last().copied() else {
        return Err(Error::data("no cosines to sweep"));
    };
    candidates.push(max.next_up());
    let mut best: Option<BinaryReport> = None;
    let mut best_threshold = candidates[0];
    for &t in &candidates {
        let r = eval_binary_threshold(per_word, gold, t, aggregation)?;
        if best.as_ref().is_none_or(|b| r.accuracy > b.accuracy) {
            best = Some(r);
            best_threshold = t;
        }
    }
    let best = best.expect("at least one candidate");
    Ok(SweepReport {
        aggregation,
        threshold: best_threshold,
        accuracy: best.accuracy,
        candidates: candidates.len(),
        best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use RelationLabel::*;

    fn counts(pairs: &[(RelationLabel, u64)]) -> LabelCounts {
        let mut c = [0; 5];
        for (l, n) in pairs {
            c[l.index()] = *n;
        }
        c
    }

    #[test]
    fn rule_examples() {
        assert_eq!(change_from_counts(&counts(&[(Homonymy, 5), (Hyponymy, 3)]), TieRule::Strict), 1);
        assert_eq!(change_from_counts(&counts(&[(Homonymy, 2), (Hyperonymy, 4)]), TieRule::Strict), 0);
        let tied = counts(&[(Homonymy, 3), (Antonymy, 3)]);
        assert_eq!(change_from_counts(&tied, TieRule::Strict), 0);
        assert_eq!(change_from_counts(&tied, TieRule::Inclusive), 1);
        assert_eq!(change_from_counts(&[0; 5], TieRule::Inclusive), 0);
    }

    fn pred(id: &str, label: RelationLabel) -> Prediction {
        Prediction {
            pair_id: id.into(),
            label,
            scores: None,
        }
    }

    #[test]
    fn evaluation_and_lemma_checks() {
        let mut per_word = BTreeMap::new();
        per_word.insert("a".to_string(), vec![pred("1", Homonymy), pred("2", Homonymy), pred("3", Hyponymy)]);
        per_word.insert("b".to_string(), vec![pred("4", Hyponymy)]);
        let gold: BTreeMap<String, u8> = [("a".to_string(), 1), ("b".to_string(), 1)].into();
        let r = eval_binary_change(&per_word, &gold, TieRule::Strict).unwrap();
        assert_eq!(r.accuracy, 0.5);
        assert_eq!(r.lemmas[0].counts, Some([0, 1, 0, 0, 2]));

        let mut short = gold.clone();
        short.remove("b");
        assert!(eval_binary_change(&per_word, &short, TieRule::Strict).is_err());
        per_word.insert("b".to_string(), Vec::new());
        assert!(eval_binary_change(&per_word, &gold, TieRule::Strict).is_err());
    }

    #[test]
    fn cosine_aggregation() {
        assert_eq!(change_from_cosines(&[0.6, 0.7, 0.9], 0.5, Aggregation::Majority), 0);
        assert_eq!(change_from_cosines(&[0.6, 0.7, 0.9], 0.5, Aggregation::Any), 0);
        assert_eq!(change_from_cosines(&[0.1, 0.7, 0.9], 0.5, Aggregation::Any), 1);
        assert_eq!(change_from_cosines(&[0.1, 0.7, 0.9], 0.5, Aggregation::Majority), 0);
        assert_eq!(change_from_cosines(&[0.1, 0.2, 0.9], 0.5, Aggregation::Majority), 1);
        assert_eq!(change_from_cosines(&[0.1, 0.9], 0.5, Aggregation::Majority), 0);
    }

    #[test]
    fn sweep_finds_separating_threshold() {
        let per_word: BTreeMap<String, Vec<f64>> = [
            ("stable".to_string(), vec![0.8, 0.9]),
            ("changed".to_string(), vec![0.3, 0.4]),
        ]
        .into();
        let gold: BTreeMap<String, u8> = [("stable".to_string(), 0), ("changed".to_string(), 1)].into();
        let s = sweep_threshold(&per_word, &gold, Aggregation::Majority).unwrap();
        assert_eq!(s.accuracy, 1.0);
        // Smallest threshold that puts both 0.3 and 0.4 below it.
        assert_eq!(s.threshold, 0.8);
        assert_eq!(s.candidates, 5);
    }
}
