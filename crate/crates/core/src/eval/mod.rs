//! Metrics and decision rules over predictions.

pub mod binary;
pub mod classify;
pub mod confusion;
pub mod io;
pub mod spearman;
pub mod wic;

pub use binary::{
    change_from_cosines, change_from_counts, cross_period_cosines, cross_period_predictions, eval_binary_change,
    eval_binary_threshold, sweep_threshold, tally, Aggregation, BinaryReport, LabelCounts, LemmaDecision,
    SweepReport, TieRule,
};
pub use classify::{eval_classification, ClassificationReport};
pub use confusion::{confusion, confusion_over, ConfusionMatrix};
pub use io::{
    attach_cosines, parse_cosines, parse_gold, parse_judgments, read_cosines, read_gold, read_judgments,
    JudgedUsagePair,
};
pub use spearman::{average_ranks, pearson, spearman};
pub use wic::{
    bin_judgment, by_lemma, combine_score, eval_graded_wic, judgment_distribution, JudgmentDistribution, WicMode,
    WicReport,
};
