use std::collections::HashMap;
use std::fs;

use proptest::prelude::*;

use confidex::datasets::{
    filter_by_support_threshold, load_csv_corpus, load_csv_corpus_report, load_directory_corpus,
    subsample_balanced, subsample_ratios, synthetic_corpus, train_test_split, LabeledCorpus,
    SyntheticSpec,
};
use confidex::text::{build_vocabulary, tokenize, vectorize_doc, VectorizeMode, Vocabulary};
use confidex::ErrorKind;

fn small_corpus() -> LabeledCorpus {
    let spec = SyntheticSpec {
        supports: vec![30, 12, 20],
        ..SyntheticSpec::default()
    };
    synthetic_corpus(&spec, 11).unwrap()
}

fn multiset(corpus: &LabeledCorpus) -> HashMap<(usize, String), usize> {
    let mut m = HashMap::new();
    for (d, &l) in corpus.documents().iter().zip(corpus.labels()) {
        *m.entry((l, d.clone())).or_insert(0) += 1;
    }
    m
}

fn is_sub_multiset(small: &LabeledCorpus, big: &LabeledCorpus) -> bool {
    let big = multiset(big);
    multiset(small)
        .iter()
        .all(|(k, &v)| big.get(k).copied().unwrap_or(0) >= v)
}

#[test]
fn directory_loader_reads_class_folders() {
    let dir = tempfile::tempdir().unwrap();
    for (class, docs) in [
        ("sci.space", vec!["orbit launch", "rocket fuel"]),
        ("rec.autos", vec!["engine oil"]),
    ] {
        fs::create_dir(dir.path().join(class)).unwrap();
        for (i, d) in docs.iter().enumerate() {
            fs::write(dir.path().join(class).join(format!("{i}.txt")), d).unwrap();
        }
    }
    fs::write(dir.path().join("README"), "not a document").unwrap();
    fs::create_dir(dir.path().join("empty")).unwrap();

    let corpus = load_directory_corpus(dir.path()).unwrap();
    assert_eq!(corpus.class_names(), ["rec.autos", "sci.space"]);
    assert_eq!(corpus.supports(), vec![1, 2]);
    assert!(!corpus
        .documents()
        .iter()
        .any(|d| d.contains("not a document")));
}

#[test]
fn directory_loader_rejects_empty_root() {
    let dir = tempfile::tempdir().unwrap();
    let err = load_directory_corpus(dir.path()).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Data);
}

#[test]
fn csv_loader_handles_quoting() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plots.csv");
    fs::write(
        &path,
        "Title,Genre,Plot\n\
         A,drama,\"a family, torn apart\"\n\
         B,comedy,\"two lines\nof plot\"\n\
         C,drama,quiet sorrow\n\
         D,,orphan row\n",
    )
    .unwrap();
    let (corpus, skipped) = load_csv_corpus_report(&path, "Genre", "Plot").unwrap();
    assert_eq!(skipped, 1);
    assert_eq!(corpus.class_names(), ["comedy", "drama"]);
    assert_eq!(corpus.labels(), [1, 0, 1]);
    assert_eq!(corpus.documents()[0], "a family, torn apart");
    assert_eq!(corpus.documents()[1], "two lines\nof plot");

    let err = load_csv_corpus(&path, "Genre", "Synopsis").unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Data);
}

#[test]
fn balanced_subsample_takes_ceiling_per_class() {
    let corpus = small_corpus();
    let sub = subsample_balanced(&corpus, 0.3, 5).unwrap();
    assert_eq!(sub.supports(), vec![9, 4, 6]);
    assert!(is_sub_multiset(&sub, &corpus));
}

#[test]
fn subsamples_are_nested_under_one_seed() {
    let corpus = small_corpus();
    let mut prev = subsample_balanced(&corpus, 0.1, 9).unwrap();
    for f in [0.3, 0.5, 0.8, 1.0] {
        let next = subsample_balanced(&corpus, f, 9).unwrap();
        assert!(is_sub_multiset(&prev, &next));
        prev = next;
    }
    assert_eq!(prev.supports(), corpus.supports());
}

#[test]
fn ratio_subsample_is_proportional() {
    let corpus = small_corpus();
    let sub = subsample_ratios(&corpus, &[10.0, 2.0, 5.0], 0.5, 1).unwrap();
    // unit = 0.5 * 30 / 10
    assert_eq!(sub.supports(), vec![15, 3, 8]);
    let err = subsample_ratios(&corpus, &[1.0, 10.0, 1.0], 1.0, 1).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Data);
}

#[test]
fn threshold_filter_reindexes() {
    let corpus = small_corpus();
    let kept = filter_by_support_threshold(&corpus, 20).unwrap();
    assert_eq!(kept.class_names(), ["class_0", "class_2"]);
    assert_eq!(kept.supports(), vec![30, 20]);
    assert!(filter_by_support_threshold(&corpus, 31).is_err());
}

#[test]
fn split_is_stratified_and_deterministic() {
    let corpus = small_corpus();
    let (train, test) = train_test_split(&corpus, 0.25, 4).unwrap();
    assert_eq!(test.supports(), vec![8, 3, 5]);
    assert_eq!(train.len() + test.len(), corpus.len());
    let (train2, test2) = train_test_split(&corpus, 0.25, 4).unwrap();
    assert_eq!(train.documents(), train2.documents());
    assert_eq!(test.documents(), test2.documents());
}

#[test]
fn vocabulary_csv_roundtrip() {
    let docs: Vec<_> = ["the cat sat", "a cat ran", "dogs ran far"]
        .iter()
        .map(|d| tokenize(d))
        .collect();
    let vocab = build_vocabulary(&docs, 2).unwrap();
    assert_eq!(vocab.tokens(), ["cat", "ran"]);
    let mut buf = Vec::new();
    vocab.write_csv(&mut buf).unwrap();
    assert_eq!(Vocabulary::read_csv(buf.as_slice()).unwrap(), vocab);
}

proptest! {
    #[test]
    fn binary_features_clamp_counts(text in "[a-e ]{0,60}") {
        let vocab = Vocabulary::from_tokens(["aa", "ab", "bc", "cd", "ee"]).unwrap();
        let doc = tokenize(&text);
        let counts = vectorize_doc(&doc, &vocab, VectorizeMode::Counts).to_dense(vocab.len());
        let binary = vectorize_doc(&doc, &vocab, VectorizeMode::Binary).to_dense(vocab.len());
        let clamped: Vec<u32> = counts.iter().map(|&c| c.min(1)).collect();
        prop_assert_eq!(binary, clamped);
    }

    #[test]
    fn subsample_is_a_sub_multiset(fraction in 0.05..=1.0f64, seed in any::<u64>()) {
        let corpus = small_corpus();
        let sub = subsample_balanced(&corpus, fraction, seed).unwrap();
        prop_assert!(is_sub_multiset(&sub, &corpus));
        prop_assert_eq!(sub.class_names(), corpus.class_names());
        let again = subsample_balanced(&corpus, fraction, seed).unwrap();
        prop_assert_eq!(sub.documents(), again.documents());
    }
}
