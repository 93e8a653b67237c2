//! The vectorizer against frozen scikit-learn `TfidfVectorizer` output.

use std::path::PathBuf;

use changetype::tfidf::Vectorizer;
use serde::Deserialize;

#[derive(Deserialize)]
struct Case {
    docs: Vec<String>,
    vocabulary: Vec<String>,
    idf: Vec<f64>,
    rows: Vec<Vec<(usize, f64)>>,
}

#[test]
fn matches_sklearn_on_five_documents() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/tfidf_oracle.json");
    let case: Case = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let v = Vectorizer::fit(&case.docs).unwrap();
    assert_eq!(v.terms(), case.vocabulary.as_slice());
    for (got, want) in v.idf().iter().zip(&case.idf) {
        assert!((got - want).abs() <= 1e-12);
    }
    for (doc, want) in case.docs.iter().zip(&case.rows) {
        let mut got = v.transform(doc);
        got.sort_by_key(|(i, _)| *i);
        assert_eq!(got.len(), want.len(), "{doc}");
        for ((gi, gv), (wi, wv)) in got.iter().zip(want) {
            assert_eq!(gi, wi);
            assert!((gv - wv).abs() <= 1e-12, "{doc}: {gv} vs {wv}");
        }
    }
}

#[test]
fn pair_vector_is_two_halves() {
    let docs = ["a small rodent", "cheese made from milk"];
    let v = Vectorizer::fit(&docs).unwrap();
    let pair = v.transform_pair(docs[0], docs[1]);
    assert_eq!(v.pair_dim(), 2 * v.len());
    let (first, second): (Vec<_>, Vec<_>) = pair.into_iter().partition(|(i, _)| *i < v.len());
    assert_eq!(first.len(), v.transform(docs[0]).len());
    assert_eq!(second.len(), v.transform(docs[1]).len());
    assert!(v.transform("zebra quagga").is_empty());
}
