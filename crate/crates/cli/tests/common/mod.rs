#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_changetype")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

/// Run and fail loudly on a non-zero exit.
pub fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn s(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// A WordNet 3.0 `dict` directory: `WORDNET_DIR` if set, else the location
/// `scripts/fetch-wordnet.sh` unpacks into.
pub fn wordnet_dir() -> Option<PathBuf> {
    std::env::var_os("WORDNET_DIR")
        .map(PathBuf::from)
        .into_iter()
        .chain([repo_root().join("data/wordnet-3.0/dict")])
        .find(|c| c.join("data.noun").is_file())
}

pub fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))).unwrap()
}

/// Graded and binary fixtures: three lemmas with cross- and same-period
/// pairs, cosines, relation predictions and gold change labels.
pub fn write_usage_fixtures(dir: &Path) {
    fs::create_dir_all(dir).unwrap();
    let rows = [
        // lemma, u1, u2, p1, p2, judgment, cosine, label
        ("plane", "p1", "p2", "1", "2", 1.0, 0.81, "homonymy"),
        ("plane", "p3", "p4", "1", "2", 1.25, 0.77, "homonymy"),
        ("plane", "p5", "p6", "1", "2", 3.5, 0.64, "hyponymy"),
        ("plane", "p7", "p8", "1", "1", 4.0, 0.92, "co-hyponymy"),
        ("tree", "t1", "t2", "1", "2", 3.75, 0.88, "hyperonymy"),
        ("tree", "t3", "t4", "1", "2", 3.0, 0.71, "co-hyponymy"),
        ("tree", "t5", "t6", "2", "2", 2.5, 0.52, "homonymy"),
        ("gay", "g1", "g2", "1", "2", 1.5, 0.43, "homonymy"),
        ("gay", "g3", "g4", "1", "2", 2.0, 0.35, "antonymy"),
        ("gay", "g5", "g6", "1", "2", 1.0, 0.58, "homonymy"),
    ];
    let mut judgments = String::from("lemma\tusage_id1\tusage_id2\tperiod1\tperiod2\tjudgment\n");
    let mut cosines = String::from("pair_id\tcosine\n");
    let mut preds = String::from("pair_id\tlabel\n");
    for (lemma, u1, u2, p1, p2, j, c, l) in rows {
        judgments.push_str(&format!("{lemma}\t{u1}\t{u2}\t{p1}\t{p2}\t{j}\n"));
        cosines.push_str(&format!("{u1}||{u2}\t{c}\n"));
        preds.push_str(&format!("{u1}||{u2}\t{l}\n"));
    }
    fs::write(dir.join("judgments.tsv"), judgments).unwrap();
    fs::write(dir.join("cosines.tsv"), cosines).unwrap();
    fs::write(dir.join("predictions.tsv"), preds).unwrap();
    fs::write(dir.join("gold.tsv"), "lemma\tchange\nplane\t1\ntree\t0\ngay\t1\n").unwrap();
}

pub const CTD_CSV: &str = r#"word,old_gloss,new_gloss,old_translation,new_translation,old_definition,new_definition,cause,type
*adripare:vlt,am Ufer ankommen,ankommen,arrive at the bank/shore,arrive,arrive at the bank of a river or the shore of a lake or sea,"to reach a place, especially at the end of a journey",prototype / frame,generalization
necare:lt,töten,ertränken,kill,drown,"to cause the death of a living thing, typically involving an act of violence or an intention to harm.","to cause to die by submersion in liquid, especially by forcing the head under the water.",socio-cultural change,specialization
*ratta,Ratte,Maus,rat,mouse,"a small rodent, larger than a mouse, that has a long tail and is considered to be harmful","a small mammal with short fur, a pointed face, and a long tail",referential vagueness,co-hyponymous transfer
sacer:lt,"heilig , geheiligt",verflucht,sacred,cursed,"considered to be holy and deserving respect, especially because of a connection with a god",experiencing bad luck caused by a magic curse,taboo,auto-antonymy
testa:lt,Scherbe,Kopf,shard,head,a broken piece of pottery,the upper part of the human body,expressive,metaphor
"#;

pub fn write_ctd_fixture(dir: &Path) -> PathBuf {
    fs::create_dir_all(dir).unwrap();
    let path = dir.join("ctd.csv");
    fs::write(&path, CTD_CSV).unwrap();
    fs::write(
        dir.join("ctd_predictions.tsv"),
        "ctd-0001\thyperonymy\nctd-0002\thyponymy\nctd-0003\thomonymy\nctd-0004\tantonymy\n",
    )
    .unwrap();
    path
}

/// Every regular file under `dir` with its bytes, keyed by relative path.
pub fn snapshot(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.push((path.strip_prefix(dir).unwrap().to_path_buf(), fs::read(&path).unwrap()));
            }
        }
    }
    out.sort();
    out
}
