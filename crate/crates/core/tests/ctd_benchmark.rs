use changetype::ctd::{ctd_to_pairs, eval_ctd, parse_ctd, write_ctd, CtdEntry};
use changetype::prediction::Prediction;
use changetype::{ChangeType, RelationLabel};

const SNIPPET: &str = r#"word,old_gloss,new_gloss,old_translation,new_translation,old_definition,new_definition,cause,type
*adripare:vlt,am Ufer ankommen,ankommen,arrive at the bank/shore,arrive,arrive at the bank of a river or the shore of a lake or sea,"to reach a place, especially at the end of a journey",prototype / frame,generalization
necare:lt,töten,ertränken,kill,drown,"to cause the death of a living thing, typically involving an act of violence or an intention to harm.","to cause to die by submersion in liquid, especially by forcing the head under the water.",socio-cultural change,specialization
*ratta,Ratte,Maus,rat,mouse,"a small rodent, larger than a mouse, that has a long tail and is considered to be harmful","a small mammal with short fur, a pointed face, and a long tail",referential vagueness,co-hyponymous transfer
sacer:lt,"heilig , geheiligt",verflucht,sacred,cursed,"considered to be holy and deserving respect, especially because of a connection with a god",experiencing bad luck caused by a magic curse,taboo,auto-antonymy
"#;

fn snippet() -> Vec<CtdEntry> {
    parse_ctd(SNIPPET.as_bytes(), "snippet", None).unwrap()
}

#[test]
fn snippet_rows_parse_to_their_types() {
    let e = snippet();
    let types: Vec<_> = e.iter().map(|e| (e.word.as_str(), e.change_type)).collect();
    assert_eq!(
        types,
        vec![
            ("*adripare:vlt", Some(ChangeType::Generalization)),
            ("necare:lt", Some(ChangeType::Specialization)),
            ("*ratta", Some(ChangeType::CoHyponymousTransfer)),
            ("sacer:lt", Some(ChangeType::AutoAntonymy)),
        ]
    );
    assert_eq!(e[0].old_translation, "arrive at the bank/shore");
    assert_eq!(e[3].cause, "taboo");
    assert!(e.iter().all(CtdEntry::in_scope));
}

#[test]
fn snippet_pairs_carry_mapped_labels() {
    let pairs = ctd_to_pairs(&snippet(), false);
    let labels: Vec<_> = pairs.iter().map(|p| p.label).collect();
    assert_eq!(
        labels,
        vec![RelationLabel::Hyperonymy, RelationLabel::Hyponymy, RelationLabel::CoHyponymy, RelationLabel::Antonymy]
    );
    assert_eq!(pairs[1].def1, "to cause the death of a living thing, typically involving an act of violence or an intention to harm.");
    assert_eq!(pairs[2].id, "ctd-0003");
}

#[test]
fn snippet_round_trips_byte_identically() {
    let mut out = Vec::new();
    write_ctd(&snippet(), &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), SNIPPET);
    let crlf = SNIPPET.replace('\n', "\r\n");
    assert_eq!(parse_ctd(crlf.as_bytes(), "crlf", None).unwrap(), snippet());
}

fn entry(row: usize, t: &str) -> CtdEntry {
    CtdEntry {
        row,
        word: format!("w{row}"),
        old_gloss: String::new(),
        new_gloss: String::new(),
        old_translation: String::new(),
        new_translation: String::new(),
        old_definition: format!("old {row}"),
        new_definition: format!("new {row}"),
        cause: String::new(),
        raw_type: t.to_string(),
        change_type: t.parse().ok(),
    }
}

fn pred(row: usize, label: RelationLabel) -> Prediction {
    Prediction {
        pair_id: format!("ctd-{row:04}"),
        label,
        scores: None,
    }
}

#[test]
fn ten_entry_fixture_matches_hand_tally() {
    use RelationLabel::*;
    let rows = [
        ("generalization", Hyperonymy),
        ("generalization", Hyponymy),
        ("generalization", Hyperonymy),
        ("specialization", Hyponymy),
        ("specialization", Hyponymy),
        ("specialization", Homonymy),
        ("co-hyponymous transfer", CoHyponymy),
        ("co-hyponymous transfer", Antonymy),
        ("auto-antonymy", Antonymy),
        ("metaphor", Homonymy),
    ];
    let entries: Vec<_> = rows.iter().enumerate().map(|(i, (t, _))| entry(i + 1, t)).collect();
    let preds: Vec<_> = rows.iter().enumerate().map(|(i, (_, l))| pred(i + 1, *l)).collect();
    let r = eval_ctd(&entries, &preds).unwrap();
    assert_eq!(r.n, 9);
    assert_eq!(r.excluded, 1);
    assert_eq!(
        r.confusion.counts,
        vec![
            vec![2, 1, 0, 0, 0],
            vec![0, 2, 0, 0, 1],
            vec![0, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0],
        ]
    );
    let recalls: Vec<_> = r.per_type.iter().map(|t| (t.change_type, t.recall)).collect();
    assert_eq!(
        recalls,
        vec![
            (ChangeType::Generalization, 2.0 / 3.0),
            (ChangeType::Specialization, 2.0 / 3.0),
            (ChangeType::CoHyponymousTransfer, 0.5),
            (ChangeType::AutoAntonymy, 1.0),
        ]
    );
    assert!((r.accuracy - 6.0 / 9.0).abs() < 1e-15);
}

#[test]
fn single_type_gives_single_supported_row() {
    use RelationLabel::*;
    let entries: Vec<_> = (1..=4).map(|i| entry(i, "specialization")).collect();
    let preds = vec![pred(1, Hyponymy), pred(2, Hyponymy), pred(3, Hyponymy), pred(4, CoHyponymy)];
    let r = eval_ctd(&entries, &preds).unwrap();
    let supported: Vec<usize> = (0..5).filter(|i| r.confusion.support(*i) > 0).collect();
    assert_eq!(supported, vec![Hyponymy.index()]);
    assert_eq!(r.per_type.len(), 1);
    assert_eq!(r.per_type[0].recall, r.confusion.normalized[1][1]);
    assert_eq!(r.per_type[0].recall, 0.75);
}

#[test]
fn all_correct_gives_identity_rows() {
    let entries = snippet();
    let preds: Vec<_> = entries
        .iter()
        .map(|e| pred(e.row, e.expected_label().unwrap()))
        .collect();
    let r = eval_ctd(&entries, &preds).unwrap();
    for t in &r.per_type {
        assert_eq!(t.recall, 1.0);
    }
}
