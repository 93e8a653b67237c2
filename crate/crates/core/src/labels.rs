//! Relation labels, diachronic change types and the mapping between them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Synchronic sense relation between two definitions.
///
/// The declaration order is the fixed class order used everywhere: score
/// columns, confusion matrix axes, model rows and argmax tie breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationLabel {
    Hyperonymy,
    Hyponymy,
    CoHyponymy,
    Antonymy,
    Homonymy,
}

impl RelationLabel {
    pub const ALL: [RelationLabel; 5] = [
        RelationLabel::Hyperonymy,
        RelationLabel::Hyponymy,
        RelationLabel::CoHyponymy,
        RelationLabel::Antonymy,
        RelationLabel::Homonymy,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RelationLabel::Hyperonymy => "hyperonymy",
            RelationLabel::Hyponymy => "hyponymy",
            RelationLabel::CoHyponymy => "co-hyponymy",
            RelationLabel::Antonymy => "antonymy",
            RelationLabel::Homonymy => "homonymy",
        }
    }

    /// Name of the score column for this class in prediction files.
    pub fn score_column(self) -> &'static str {
        match self {
            RelationLabel::Hyperonymy => "s_hyperonymy",
            RelationLabel::Hyponymy => "s_hyponymy",
            RelationLabel::CoHyponymy => "s_cohyponymy",
            RelationLabel::Antonymy => "s_antonymy",
            RelationLabel::Homonymy => "s_homonymy",
        }
    }

    /// Homonymy is the only unrelated class; the four hierarchical and
    /// oppositional relations are all related.
    pub fn relatedness(self) -> Relatedness {
        match self {
            RelationLabel::Homonymy => Relatedness::Unrelated,
            _ => Relatedness::Related,
        }
    }

    pub fn change_type(self) -> ChangeType {
        match self {
            RelationLabel::Hyperonymy => ChangeType::Generalization,
            RelationLabel::Hyponymy => ChangeType::Specialization,
            RelationLabel::CoHyponymy => ChangeType::CoHyponymousTransfer,
            RelationLabel::Antonymy => ChangeType::AutoAntonymy,
            RelationLabel::Homonymy => ChangeType::Unrelated,
        }
    }
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = normalize(s);
        Self::ALL
            .iter()
            .copied()
            .find(|l| l.as_str() == key || l.as_str().replace('-', "") == key)
            .ok_or_else(|| Error::data(format!("unknown relation label `{s}`")))
    }
}

/// Diachronic type of semantic change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChangeType {
    Generalization,
    Specialization,
    CoHyponymousTransfer,
    AutoAntonymy,
    Unrelated,
}

impl ChangeType {
    pub const ALL: [ChangeType; 5] = [
        ChangeType::Generalization,
        ChangeType::Specialization,
        ChangeType::CoHyponymousTransfer,
        ChangeType::AutoAntonymy,
        ChangeType::Unrelated,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChangeType::Generalization => "generalization",
            ChangeType::Specialization => "specialization",
            ChangeType::CoHyponymousTransfer => "co-hyponymous-transfer",
            ChangeType::AutoAntonymy => "auto-antonymy",
            ChangeType::Unrelated => "unrelated",
        }
    }

    pub fn relation(self) -> RelationLabel {
        map_change_type(self)
    }
}

impl fmt::Display for ChangeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChangeType {
    type Err = Error;

    /// Accepts the canonical names plus the spelling variants seen in
    /// benchmark files ("co-hyponymous transfer", "auto-antonym").
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = match normalize(s).as_str() {
            "generalization" | "generalisation" => ChangeType::Generalization,
            "specialization" | "specialisation" => ChangeType::Specialization,
            "co-hyponymous-transfer" | "cohyponymous-transfer" => ChangeType::CoHyponymousTransfer,
            "auto-antonymy" | "auto-antonym" | "autoantonymy" => ChangeType::AutoAntonymy,
            "unrelated" => ChangeType::Unrelated,
            _ => return Err(Error::data(format!("unknown change type `{s}`"))),
        };
        Ok(t)
    }
}

fn normalize(s: &str) -> String {
    s.trim()
        .to_lowercase()
        .split(|c: char| c.is_whitespace() || c == '_' || c == '-')
        .filter(|p| !p.is_empty())
        .collect::<Vec<_>>()
        .join("-")
}

/// Map a diachronic change type onto its synchronic counterpart relation.
pub fn map_change_type(t: ChangeType) -> RelationLabel {
    match t {
        ChangeType::Generalization => RelationLabel::Hyperonymy,
        ChangeType::Specialization => RelationLabel::Hyponymy,
        ChangeType::CoHyponymousTransfer => RelationLabel::CoHyponymy,
        ChangeType::AutoAntonymy => RelationLabel::Antonymy,
        ChangeType::Unrelated => RelationLabel::Homonymy,
    }
}

/// Inverse of [`map_change_type`].
pub fn unmap_change_type(label: RelationLabel) -> ChangeType {
    label.change_type()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relatedness {
    Related,
    Unrelated,
}

impl Relatedness {
    /// Two-value scale used for graded scoring: 1 for related, 0 otherwise.
    pub fn as_score(self) -> f64 {
        match self {
            Relatedness::Related => 1.0,
            Relatedness::Unrelated => 0.0,
        }
    }
}

pub fn binarize_relation(label: RelationLabel) -> Relatedness {
    label.relatedness()
}
