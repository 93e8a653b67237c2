use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LabeledPair;
use crate::error::{Error, Result};
use crate::labels::RelationLabel;
use crate::wordnet::{Lexicon, Pos, SynsetId};

/// Below this many same-pos candidate pairs, homonym sampling enumerates the
/// admissible pairs instead of rejection sampling.
const ENUMERATION_LIMIT: u64 = 1 << 22;

struct Glosses(BTreeMap<SynsetId, Arc<str>>);

impl Glosses {
    fn new(lex: &Lexicon) -> Self {
        Glosses(lex.synsets().map(|s| (s.id, Arc::from(s.gloss.as_str()))).collect())
    }

    fn pair(&self, label: RelationLabel, a: SynsetId, b: SynsetId) -> LabeledPair {
        LabeledPair::new(label, a, self.0[&a].clone(), b, self.0[&b].clone())
    }
}

fn canonical(a: SynsetId, b: SynsetId) -> (SynsetId, SynsetId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// One pair per direct hyperonymy edge: (child gloss, parent gloss).
pub fn gen_hyperonym_pairs(lex: &Lexicon) -> Vec<LabeledPair> {
    let glosses = Glosses::new(lex);
    lex.synsets()
        .flat_map(|s| s.hyperonyms.iter().map(move |h| (s.id, *h)))
        .map(|(child, parent)| glosses.pair(RelationLabel::Hyperonymy, child, parent))
        .collect()
}

/// Mirror of [`gen_hyperonym_pairs`]: (parent gloss, child gloss).
pub fn gen_hyponym_pairs(lex: &Lexicon) -> Vec<LabeledPair> {
    let glosses = Glosses::new(lex);
    lex.synsets()
        .flat_map(|s| s.hyperonyms.iter().map(move |h| (s.id, *h)))
        .map(|(child, parent)| glosses.pair(RelationLabel::Hyponymy, parent, child))
        .collect()
}

fn cohyponym_links(lex: &Lexicon) -> BTreeSet<(SynsetId, SynsetId)> {
    let mut links = BTreeSet::new();
    for (_, children) in lex.parents() {
        for (i, a) in children.iter().enumerate() {
            for b in &children[i + 1..] {
                links.insert(canonical(*a, *b));
            }
        }
    }
    links
}

/// Every unordered pair of distinct synsets sharing a direct parent, once,
/// smaller id first.
pub fn gen_cohyponym_pairs(lex: &Lexicon) -> Vec<LabeledPair> {
    let glosses = Glosses::new(lex);
    cohyponym_links(lex)
        .into_iter()
        .map(|(a, b)| glosses.pair(RelationLabel::CoHyponymy, a, b))
        .collect()
}

/// One pair per unordered synset-level antonym link, smaller id first.
pub fn gen_antonym_pairs(lex: &Lexicon) -> Vec<LabeledPair> {
    let glosses = Glosses::new(lex);
    lex.antonym_links()
        .into_iter()
        .filter(|(a, b)| a.pos == b.pos)
        .map(|(a, b)| glosses.pair(RelationLabel::Antonymy, a, b))
        .collect()
}

fn related_links(lex: &Lexicon) -> HashSet<(SynsetId, SynsetId)> {
    let mut related: HashSet<(SynsetId, SynsetId)> = cohyponym_links(lex).into_iter().collect();
    for s in lex.synsets() {
        for h in &s.hyperonyms {
            related.insert(canonical(s.id, *h));
        }
    }
    related.extend(lex.antonym_links());
    related
}

fn choose2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Sample `n` distinct same-pos synset pairs that are not directly related
/// (hyperonymy, shared parent, antonymy). Deterministic for a given seed.
///
/// Pairs are uniform over all admissible pairs and are stored smaller id
/// first, in sampling order.
pub fn gen_homonym_pairs(lex: &Lexicon, n: usize, seed: u64) -> Result<Vec<LabeledPair>> {
    let by_pos: Vec<(Pos, Vec<SynsetId>)> = lex.ids_by_pos().into_iter().collect();
    let related = related_links(lex);
    let total: u64 = by_pos.iter().map(|(_, ids)| choose2(ids.len())).sum();
    let related_same_pos = related.iter().filter(|(a, b)| a.pos == b.pos).count() as u64;
    let admissible = total - related_same_pos;
    if n as u64 > admissible {
        return Err(Error::data(format!(
            "cannot sample {n} homonym pairs: only {admissible} unrelated same-pos pairs exist"
        )));
    }

    let glosses = Glosses::new(lex);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen: Vec<(SynsetId, SynsetId)> = if total <= ENUMERATION_LIMIT {
        let mut all = Vec::with_capacity(admissible as usize);
        for (_, ids) in &by_pos {
            for (i, a) in ids.iter().enumerate() {
                for b in &ids[i + 1..] {
                    if !related.contains(&(*a, *b)) {
                        all.push((*a, *b));
                    }
                }
            }
        }
        all.shuffle(&mut rng);
        all.truncate(n);
        all
    } else {
        let weights: Vec<u64> = by_pos.iter().map(|(_, ids)| choose2(ids.len())).collect();
        let pick_pos = WeightedIndex::new(&weights).map_err(|e| Error::data(e.to_string()))?;
        let mut seen = HashSet::with_capacity(n);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let ids = &by_pos[pick_pos.sample(&mut rng)].1;
            let i = rng.gen_range(0..ids.len());
            let mut j = rng.gen_range(0..ids.len() - 1);
            if j >= i {
                j += 1;
            }
            let pair = canonical(ids[i], ids[j]);
            if related.contains(&pair) || !seen.insert(pair) {
                continue;
            }
            out.push(pair);
        }
        out
    };
    Ok(chosen
        .into_iter()
        .map(|(a, b)| glosses.pair(RelationLabel::Homonymy, a, b))
        .collect())
}

/// Generate all five classes, keyed in the fixed class order.
pub fn generate_all(lex: &Lexicon, homonyms: usize, seed: u64) -> Result<BTreeMap<RelationLabel, Vec<LabeledPair>>> {
    let (hier, rest) = rayon::join(
        || (gen_hyperonym_pairs(lex), gen_hyponym_pairs(lex)),
        || {
            (
                gen_cohyponym_pairs(lex),
                gen_antonym_pairs(lex),
                gen_homonym_pairs(lex, homonyms, seed),
            )
        },
    );
    let mut out = BTreeMap::new();
    out.insert(RelationLabel::Hyperonymy, hier.0);
    out.insert(RelationLabel::Hyponymy, hier.1);
    out.insert(RelationLabel::CoHyponymy, rest.0);
    out.insert(RelationLabel::Antonymy, rest.1);
    out.insert(RelationLabel::Homonymy, rest.2?);
    Ok(out)
}
