use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SparseVector;
use crate::error::{Error, Result};
use crate::labels::RelationLabel;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SgdConfig {
    pub epochs: usize,
    /// Initial learning rate; step `t` uses `eta0 / t^power_t`.
    pub eta0: f64,
    pub power_t: f64,
    /// L2 regularization strength.
    pub alpha: f64,
    pub seed: u64,
}

impl Default for SgdConfig {
    fn default() -> Self {
        SgdConfig {
            epochs: 10,
            eta0: 0.01,
            power_t: 0.5,
            alpha: 1e-4,
            seed: 42,
        }
    }
}

/// One-vs-all linear classifier over a subset of the relation labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    /// Classes seen in training, in the fixed label order.
    pub classes: Vec<RelationLabel>,
    pub dim: usize,
    /// One row of length `dim` per class.
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
    /// Balanced loss multipliers, parallel to `classes`.
    pub class_weights: Vec<f64>,
}

impl LinearModel {
    pub fn decision_scores(&self, x: &SparseVector) -> Vec<f64> {
        self.weights
            .iter()
            .zip(&self.bias)
            .map(|(w, b)| dot(w, x) + b)
            .collect()
    }

    /// Argmax of the decision scores; ties go to the earliest class.
    pub fn predict(&self, x: &SparseVector) -> RelationLabel {
        self.classes[argmax(&self.decision_scores(x))]
    }
}

pub(crate) fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = i;
        }
    }
    best
}

fn dot(w: &[f64], x: &SparseVector) -> f64 {
    x.iter().map(|(i, v)| w[*i] * v).sum()
}

/// `total / (classes * count(c))` for each class present.
pub fn balanced_class_weights(labels: &[RelationLabel]) -> (Vec<RelationLabel>, Vec<f64>) {
    let mut counts = [0usize; 5];
    for l in labels {
        counts[l.index()] += 1;
    }
    let classes: Vec<RelationLabel> = RelationLabel::ALL
        .iter()
        .copied()
        .filter(|l| counts[l.index()] > 0)
        .collect();
    let k = classes.len() as f64;
    let weights = classes
        .iter()
        .map(|l| labels.len() as f64 / (k * counts[l.index()] as f64))
        .collect();
    (classes, weights)
}

/// Train with per-sample hinge-loss SGD, L2 decay and an inverse-scaling
/// learning rate. Samples are reshuffled every epoch from `config.seed`.
pub fn train_sgd(features: &[SparseVector], labels: &[RelationLabel], dim: usize, config: &SgdConfig) -> Result<LinearModel> {
    if features.len() != labels.len() {
        return Err(Error::data(format!(
            "{} feature vectors but {} labels",
            features.len(),
            labels.len()
        )));
    }
    let (classes, class_weights) = balanced_class_weights(labels);
    if classes.len() < 2 {
        return Err(Error::data("training data must contain at least two classes"));
    }
    if let Some((i, _)) = features.iter().flatten().find(|(i, _)| *i >= dim) {
        return Err(Error::data(format!("feature index {i} outside dimension {dim}")));
    }
    let class_pos: Vec<Option<usize>> = RelationLabel::ALL
        .iter()
        .map(|l| classes.iter().position(|c| c == l))
        .collect();

    let k = classes.len();
    let mut weights = vec![vec![0.0; dim]; k];
    let mut wscale = vec![1.0; k];
    let mut bias = vec![0.0; k];
    let mut order: Vec<usize> = (0..features.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut t = 1.0f64;

    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let x = &features[i];
            let own = class_pos[labels[i].index()].expect("label is among the trained classes");
            let sample_weight = class_weights[own];
            let eta = config.eta0 / t.powf(config.power_t);
            let decay = (1.0 - eta * config.alpha).max(0.0);
            for c in 0..k {
                let y = if c == own { 1.0 } else { -1.0 };
                let p = dot(&weights[c], x) * wscale[c] + bias[c];
                let update = if y * p <= 1.0 { eta * y * sample_weight } else { 0.0 };
                wscale[c] *= decay;
                if wscale[c] < 1e-9 {
                    for w in &mut weights[c] {
                        *w *= wscale[c];
                    }
                    wscale[c] = 1.0;
                }
                if update != 0.0 {
                    for (j, v) in x {
                        weights[c][*j] += update * v / wscale[c];
                    }
                    bias[c] += update;
                }
            }
            t += 1.0;
        }
    }
    for (row, s) in weights.iter_mut().zip(&wscale) {
        for w in row.iter_mut() {
            *w *= s;
        }
    }
    Ok(LinearModel {
        classes,
        dim,
        weights,
        bias,
        class_weights,
    })
}
