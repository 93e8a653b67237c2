//! Tf-idf + linear SGD baseline over concatenated definition vectors.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::RelationLabel;
use crate::pairs::LabeledPair;
use crate::prediction::Prediction;

mod sgd;
mod vectorizer;

pub use sgd::{balanced_class_weights, train_sgd, LinearModel, SgdConfig};
pub use vectorizer::{to_dense, tokenize, SparseVector, Vectorizer};

pub const MODEL_FORMAT: &str = "changetype-tfidf-sgd";
pub const MODEL_VERSION: u32 = 1;

/// A fitted vectorizer and classifier, saved together as one JSON document.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineModel {
    pub vectorizer: Vectorizer,
    pub linear: LinearModel,
    pub config: SgdConfig,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u32,
    config: SgdConfig,
    vocabulary: Vec<String>,
    idf: Vec<f64>,
    classes: Vec<RelationLabel>,
    class_weights: Vec<f64>,
    bias: Vec<f64>,
    weights: Vec<Vec<f64>>,
}

/// The distinct definition texts of a pair list, sorted.
pub fn training_definitions(pairs: &[LabeledPair]) -> Vec<&str> {
    let set: BTreeSet<&str> = pairs.iter().flat_map(|p| [&*p.def1, &*p.def2]).collect();
    set.into_iter().collect()
}

impl BaselineModel {
    /// Fit the vectorizer on the training definitions, then train the
    /// classifier on the concatenated pair vectors.
    pub fn fit(train: &[LabeledPair], config: &SgdConfig) -> Result<Self> {
        let vectorizer = Vectorizer::fit(&training_definitions(train))?;
        let features: Vec<SparseVector> = train
            .iter()
            .map(|p| vectorizer.transform_pair(&p.def1, &p.def2))
            .collect();
        let labels: Vec<RelationLabel> = train.iter().map(|p| p.label).collect();
        let linear = train_sgd(&features, &labels, vectorizer.pair_dim(), config)?;
        Ok(BaselineModel {
            vectorizer,
            linear,
            config: config.clone(),
        })
    }

    pub fn features(&self, pair: &LabeledPair) -> SparseVector {
        self.vectorizer.transform_pair(&pair.def1, &pair.def2)
    }

    pub fn predict(&self, pair: &LabeledPair) -> Prediction {
        self.predict_text(&pair.id, &pair.def1, &pair.def2)
    }

    /// Predict for a bare definition pair.
    pub fn predict_text(&self, id: &str, def1: &str, def2: &str) -> Prediction {
        let raw = self
            .linear
            .decision_scores(&self.vectorizer.transform_pair(def1, def2));
        let label = self.linear.classes[sgd::argmax(&raw)];
        // Full score vectors are only meaningful when every class was trained.
        let scores = (self.linear.classes.len() == RelationLabel::ALL.len()).then(|| {
            let mut s = [0.0; 5];
            for (c, v) in self.linear.classes.iter().zip(&raw) {
                s[c.index()] = *v;
            }
            s
        });
        Prediction {
            pair_id: id.to_string(),
            label,
            scores,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            format: MODEL_FORMAT.to_string(),
            version: MODEL_VERSION,
            config: self.config.clone(),
            vocabulary: self.vectorizer.terms().to_vec(),
            idf: self.vectorizer.idf().to_vec(),
            classes: self.linear.classes.clone(),
            class_weights: self.linear.class_weights.clone(),
            bias: self.linear.bias.clone(),
            weights: self.linear.weights.clone(),
        };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: ModelFile = serde_json::from_str(text)?;
        if f.format != MODEL_FORMAT || f.version != MODEL_VERSION {
            return Err(Error::data(format!(
                "unsupported model file {} v{}",
                f.format, f.version
            )));
        }
        let dim = 2 * f.vocabulary.len();
        let k = f.classes.len();
        if f.idf.len() != f.vocabulary.len()
            || f.bias.len() != k
            || f.class_weights.len() != k
            || f.weights.len() != k
            || f.weights.iter().any(|r| r.len() != dim)
        {
            return Err(Error::data("model file has inconsistent dimensions"));
        }
        Ok(BaselineModel {
            vectorizer: Vectorizer::from_parts(f.vocabulary, f.idf),
            linear: LinearModel {
                classes: f.classes,
                dim,
                weights: f.weights,
                bias: f.bias,
                class_weights: f.class_weights,
            },
            config: f.config,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = crate::eval::io::read_text(path)?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordnet::{Pos, SynsetId};

    fn pair(i: u32, label: RelationLabel, d1: &str, d2: &str) -> LabeledPair {
        LabeledPair::new(
            label,
            SynsetId::new(2 * i, Pos::Noun),
            d1.into(),
            SynsetId::new(2 * i + 1, Pos::Noun),
            d2.into(),
        )
    }

    fn train_set() -> Vec<LabeledPair> {
        vec![
            pair(1, RelationLabel::Hyperonymy, "small dog breed", "domestic animal"),
            pair(2, RelationLabel::Hyperonymy, "young cat kitten", "domestic animal"),
            pair(3, RelationLabel::Homonymy, "river bank edge", "financial institution"),
            pair(4, RelationLabel::Homonymy, "musical pitch", "tar resin"),
        ]
    }

    #[test]
    fn vocabulary_ignores_non_training_text() {
        let train = train_set();
        let model = BaselineModel::fit(&train, &SgdConfig::default()).unwrap();
        assert!(model.vectorizer.column("unseen").is_none());
        let other = BaselineModel::fit(&train, &SgdConfig::default()).unwrap();
        assert_eq!(model, other);
    }

    #[test]
    fn model_json_round_trip() {
        let model = BaselineModel::fit(&train_set(), &SgdConfig::default()).unwrap();
        let back = BaselineModel::from_json(&model.to_json().unwrap()).unwrap();
        assert_eq!(back, model);
        assert!(BaselineModel::from_json("{\"format\":\"x\"}").is_err());
    }

    #[test]
    fn prediction_is_a_trained_label() {
        let model = BaselineModel::fit(&train_set(), &SgdConfig::default()).unwrap();
        let p = model.predict(&pair(9, RelationLabel::Antonymy, "zz", "qq"));
        assert!(model.linear.classes.contains(&p.label));
        assert!(p.scores.is_none());
    }
}
