use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Sparse vector as `(column, value)` entries with strictly increasing columns.
pub type SparseVector = Vec<(usize, f64)>;

/// Lowercase and return every maximal run of word characters that is at
/// least two characters long.
pub fn tokenize(text: &str) -> Vec<String> {
    let lower = text.to_lowercase();
    let mut out = Vec::new();
    let mut current = String::new();
    let mut len = 0;
    for c in lower.chars() {
        if c.is_alphanumeric() || c == '_' {
            current.push(c);
            len += 1;
        } else {
            if len >= 2 {
                out.push(std::mem::take(&mut current));
            }
            current.clear();
            len = 0;
        }
    }
    if len >= 2 {
        out.push(current);
    }
    out
}

/// Tf-idf vectorizer with smoothed idf and L2-normalized rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Vectorizer {
    terms: Vec<String>,
    idf: Vec<f64>,
    index: HashMap<String, usize>,
}

impl Vectorizer {
    /// Fit on the training definitions. Each string is one document.
    ///
    /// `idf(t) = ln((1 + D) / (1 + df(t))) + 1`; the vocabulary is sorted.
    pub fn fit<S: AsRef<str>>(docs: &[S]) -> Result<Self> {
        if docs.is_empty() {
            return Err(Error::data("cannot fit a vectorizer on an empty corpus"));
        }
        let mut df: BTreeMap<String, usize> = BTreeMap::new();
        for doc in docs {
            let unique: BTreeSet<String> = tokenize(doc.as_ref()).into_iter().collect();
            for t in unique {
                *df.entry(t).or_default() += 1;
            }
        }
        if df.is_empty() {
            return Err(Error::data("training corpus has no tokens"));
        }
        let n = docs.len() as f64;
        let (terms, idf): (Vec<String>, Vec<f64>) = df
            .into_iter()
            .map(|(t, d)| {
                let idf = ((1.0 + n) / (1.0 + d as f64)).ln() + 1.0;
                (t, idf)
            })
            .unzip();
        Ok(Self::from_parts(terms, idf))
    }

    pub(crate) fn from_parts(terms: Vec<String>, idf: Vec<f64>) -> Self {
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Vectorizer { terms, idf, index }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn idf(&self) -> &[f64] {
        &self.idf
    }

    pub fn column(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    /// Tf-idf vector of one text: raw counts times idf, L2-normalized.
    /// Unknown tokens are ignored; an all-unknown text gives an empty vector.
    pub fn transform(&self, text: &str) -> SparseVector {
        let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
        for t in tokenize(text) {
            if let Some(i) = self.column(&t) {
                *counts.entry(i).or_default() += 1.0;
            }
        }
        let mut v: SparseVector = counts.into_iter().map(|(i, c)| (i, c * self.idf[i])).collect();
        let norm = v.iter().map(|(_, x)| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            for (_, x) in &mut v {
                *x /= norm;
            }
        }
        v
    }

    /// Concatenation of the two definition vectors; dimension `2 * len()`.
    pub fn transform_pair(&self, def1: &str, def2: &str) -> SparseVector {
        let offset = self.len();
        let mut v = self.transform(def1);
        v.extend(self.transform(def2).into_iter().map(|(i, x)| (i + offset, x)));
        v
    }

    pub fn pair_dim(&self) -> usize {
        2 * self.len()
    }
}

pub fn to_dense(v: &SparseVector, dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for (i, x) in v {
        out[*i] = *x;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tokenizer_rules() {
        assert_eq!(tokenize("A Cow's milk; x-ray_gun 42"), vec!["cow", "milk", "ray_gun", "42"]);
        assert_eq!(tokenize("Éclair à la crème"), vec!["éclair", "la", "crème"]);
        assert!(tokenize("a b c").is_empty());
    }

    #[test]
    fn idf_of_shared_term_is_one() {
        let v = Vectorizer::fit(&["ab bc", "ab cd"]).unwrap();
        let ab = v.column("ab").unwrap();
        assert_abs_diff_eq!(v.idf()[ab], 1.0, epsilon = 1e-15);
        let bc = v.column("bc").unwrap();
        assert_abs_diff_eq!(v.idf()[bc], (3.0f64 / 2.0).ln() + 1.0, epsilon = 1e-15);
        assert!(v.idf().iter().all(|x| *x > 0.0));
    }

    #[test]
    fn single_document_direction() {
        let v = Vectorizer::fit(&["aa aa bb"]).unwrap();
        let x = to_dense(&v.transform("aa aa bb"), v.len());
        // Both idf values equal 1 here, so the vector is (2, 1) / sqrt(5).
        assert_abs_diff_eq!(x[0], 2.0 / 5f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 1.0 / 5f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn empty_corpus_rejected() {
        assert!(Vectorizer::fit::<&str>(&[]).is_err());
        assert!(Vectorizer::fit(&["a b"]).is_err());
    }

    #[test]
    fn pair_features() {
        let v = Vectorizer::fit(&["small rodent", "large cat"]).unwrap();
        let dim = v.pair_dim();
        assert_eq!(dim, 8);
        assert!(v.transform_pair("zz yy", "qq").is_empty());
        let same = to_dense(&v.transform_pair("small cat", "small cat"), dim);
        assert_eq!(same[..4], same[4..]);
        let ab = to_dense(&v.transform_pair("small rodent", "large cat"), dim);
        let ba = to_dense(&v.transform_pair("large cat", "small rodent"), dim);
        assert_eq!(ab[..4], ba[4..]);
        assert_eq!(ab[4..], ba[..4]);
    }
}
