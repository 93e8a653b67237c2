use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::LabeledPair;
use crate::error::{Error, Result};
use crate::labels::RelationLabel;
use crate::wordnet::Pos;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Dev, Split::Test];

    pub fn file_name(self) -> &'static str {
        match self {
            Split::Train => "train.jsonl",
            Split::Dev => "dev.jsonl",
            Split::Test => "test.jsonl",
        }
    }
}

/// Split ratios, per-class caps for each split, and the shuffle seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub ratios: [f64; 3],
    pub caps: [usize; 3],
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            ratios: [0.8, 0.1, 0.1],
            caps: [30_000, 3_000, 3_000],
            seed: 42,
        }
    }
}

impl SplitSpec {
    pub fn validate(&self) -> Result<()> {
        if self.ratios.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(Error::config(format!("split ratios must be non-negative: {:?}", self.ratios)));
        }
        let sum: f64 = self.ratios.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::config(format!("split ratios sum to {sum}, expected 1")));
        }
        Ok(())
    }

    /// Homonym pairs to sample so that every split can fill its cap:
    /// the summed caps divided by the train ratio, rounded up.
    pub fn homonym_supply(&self) -> usize {
        let total: usize = self.caps.iter().sum();
        if self.ratios[0] <= 0.0 {
            return total;
        }
        (total as f64 / self.ratios[0]).ceil() as usize
    }

    fn class_seed(&self, label: RelationLabel) -> u64 {
        self.seed ^ ((label.index() as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// Per-split counts, laid out like the dataset statistics table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitStats {
    pub unique_synsets: usize,
    pub definition_pairs: usize,
    pub per_class: BTreeMap<RelationLabel, usize>,
    pub per_pos: BTreeMap<Pos, usize>,
}

impl SplitStats {
    pub fn of(pairs: &[LabeledPair]) -> Self {
        let mut synsets = BTreeSet::new();
        let mut per_class: BTreeMap<RelationLabel, usize> =
            RelationLabel::ALL.iter().map(|l| (*l, 0)).collect();
        let mut per_pos: BTreeMap<Pos, usize> = Pos::ALL.iter().map(|p| (*p, 0)).collect();
        for p in pairs {
            synsets.insert(p.src1);
            synsets.insert(p.src2);
            *per_class.entry(p.label).or_default() += 1;
            *per_pos.entry(p.pos).or_default() += 1;
        }
        SplitStats {
            unique_synsets: synsets.len(),
            definition_pairs: pairs.len(),
            per_class,
            per_pos,
        }
    }
}

/// Number of (def1, def2, label) keys shared between each pair of splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeakageReport {
    pub train_dev: usize,
    pub dev_test: usize,
    pub train_test: usize,
}

impl LeakageReport {
    pub fn total(&self) -> usize {
        self.train_dev + self.dev_test + self.train_test
    }
}

pub fn leakage(train: &[LabeledPair], dev: &[LabeledPair], test: &[LabeledPair]) -> LeakageReport {
    fn keys(pairs: &[LabeledPair]) -> HashSet<(&str, &str, RelationLabel)> {
        pairs.iter().map(LabeledPair::key).collect()
    }
    let (tr, dv, te) = (keys(train), keys(dev), keys(test));
    LeakageReport {
        train_dev: tr.intersection(&dv).count(),
        dev_test: dv.intersection(&te).count(),
        train_test: tr.intersection(&te).count(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Splits {
    pub train: Vec<LabeledPair>,
    pub dev: Vec<LabeledPair>,
    pub test: Vec<LabeledPair>,
}

impl Splits {
    pub fn get(&self, split: Split) -> &[LabeledPair] {
        match split {
            Split::Train => &self.train,
            Split::Dev => &self.dev,
            Split::Test => &self.test,
        }
    }

    pub fn stats(&self) -> BTreeMap<Split, SplitStats> {
        Split::ALL.iter().map(|s| (*s, SplitStats::of(self.get(*s)))).collect()
    }

    pub fn leakage(&self) -> LeakageReport {
        leakage(&self.train, &self.dev, &self.test)
    }
}

/// Drop duplicate (def1, def2, label) keys, keeping the pair whose source
/// ids sort first, and return the survivors ordered by source ids.
fn dedup_class(mut pairs: Vec<LabeledPair>) -> Vec<LabeledPair> {
    pairs.sort_by(|a, b| {
        (&a.def1, &a.def2, a.label, a.src1, a.src2).cmp(&(&b.def1, &b.def2, b.label, b.src1, b.src2))
    });
    pairs.dedup_by(|later, first| later.key() == first.key());
    pairs.sort_by(|a, b| (a.src1, a.src2, &a.id).cmp(&(b.src1, b.src2, &b.id)));
    pairs
}

fn split_sizes(n: usize, ratios: &[f64; 3]) -> [usize; 3] {
    let train = ((n as f64) * ratios[0]).round() as usize;
    let train = train.min(n);
    let dev = (((n as f64) * ratios[1]).round() as usize).min(n - train);
    [train, dev, n - train - dev]
}

/// Deduplicate, shuffle and split each class, then cap every split.
///
/// Classes are processed independently with seeds derived from
/// `spec.seed`, so the split of one class never depends on another's data.
/// Output splits list classes in the fixed label order.
pub fn split_dataset(by_class: BTreeMap<RelationLabel, Vec<LabeledPair>>, spec: &SplitSpec) -> Result<Splits> {
    spec.validate()?;
    let mut out = Splits {
        train: Vec::new(),
        dev: Vec::new(),
        test: Vec::new(),
    };
    for (label, pairs) in by_class {
        if let Some(p) = pairs.iter().find(|p| p.label != label) {
            return Err(Error::data(format!(
                "pair {} labeled {} found in the {label} class",
                p.id, p.label
            )));
        }
        let mut pairs = dedup_class(pairs);
        let mut rng = ChaCha8Rng::seed_from_u64(spec.class_seed(label));
        pairs.shuffle(&mut rng);

        let [n_train, n_dev, _] = split_sizes(pairs.len(), &spec.ratios);
        let mut rest = pairs.split_off(n_train);
        let mut test = rest.split_off(n_dev);
        let mut dev = rest;
        let mut train = pairs;
        train.truncate(spec.caps[0]);
        dev.truncate(spec.caps[1]);
        test.truncate(spec.caps[2]);
        out.train.append(&mut train);
        out.dev.append(&mut dev);
        out.test.append(&mut test);
    }
    Ok(out)
}
