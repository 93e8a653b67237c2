//! Building blocks for classifying the type of lexical semantic change from
//! pairs of sense definitions.
//!
//! * [`wordnet`] reads Princeton WNDB files into a [`wordnet::Lexicon`].
//! * [`pairs`] turns the lexicon into labeled definition pairs and
//!   leakage-free train/dev/test splits.
//! * [`tfidf`] is a tf-idf + linear SGD baseline classifier.
//! * [`eval`] holds the metrics and decision rules: confusion matrices,
//!   Spearman correlation, graded Word-in-Context scoring and binary change.
//! * [`ctd`] loads the cause/type/definition benchmark of historical changes.

pub mod ctd;
pub mod error;
pub mod eval;
pub mod labels;
pub mod pairs;
pub mod prediction;
pub mod tfidf;
pub mod wordnet;

pub use error::{Error, Result};
pub use labels::{ChangeType, RelationLabel, Relatedness};
