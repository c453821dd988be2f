//! Labelled corpora: loading, support manipulation and stratified splitting.
//!
//! All randomness flows through [`ChaCha8Rng`], whose output sequence for a
//! given seed is fixed across platforms. Selections keep the original
//! document order, so outputs depend only on `(corpus, parameters, seed)`.
//! Subsamples drawn with one seed are nested: a larger fraction or scale
//! contains every document chosen by a smaller one.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use log::warn;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Slack when rounding `fraction * support` up, so `0.3 * 10` stays 3.
const CEIL_SLACK: f64 = 1e-9;

/// Raw documents with integer labels into an ordered class-name list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledCorpus {
    documents: Vec<String>,
    labels: Vec<usize>,
    class_names: Vec<String>,
}

impl LabeledCorpus {
    pub fn new(
        documents: Vec<String>,
        labels: Vec<usize>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if documents.len() != labels.len() {
            return Err(Error::Data(format!(
                "{} documents but {} labels",
                documents.len(),
                labels.len()
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= class_names.len()) {
            return Err(Error::Data(format!(
                "label {bad} out of range for {} classes",
                class_names.len()
            )));
        }
        Ok(LabeledCorpus {
            documents,
            labels,
            class_names,
        })
    }

    pub fn documents(&self) -> &[String] {
        &self.documents
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn supports(&self) -> Vec<usize> {
        let mut s = vec![0; self.class_names.len()];
        for &l in &self.labels {
            s[l] += 1;
        }
        s
    }

    /// Document indices of each class, in corpus order.
    fn class_members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.class_names.len()];
        for (i, &l) in self.labels.iter().enumerate() {
            members[l].push(i);
        }
        members
    }

    /// Keeps the given document indices (sorted) with the same class list.
    fn select(&self, mut keep: Vec<usize>) -> LabeledCorpus {
        keep.sort_unstable();
        LabeledCorpus {
            documents: keep.iter().map(|&i| self.documents[i].clone()).collect(),
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            class_names: self.class_names.clone(),
        }
    }

    /// Restricts to the named classes, reindexing labels into `names` order.
    /// Documents of other classes are dropped.
    pub fn restrict_to_classes(&self, names: &[String]) -> Result<LabeledCorpus> {
        let mut map = vec![None; self.class_names.len()];
        for (new, name) in names.iter().enumerate() {
            let old = self
                .class_names
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| Error::Data(format!("unknown class {name:?}")))?;
            map[old] = Some(new);
        }
        let mut documents = Vec::new();
        let mut labels = Vec::new();
        for (doc, &l) in self.documents.iter().zip(&self.labels) {
            if let Some(new) = map[l] {
                documents.push(doc.clone());
                labels.push(new);
            }
        }
        Ok(LabeledCorpus {
            documents,
            labels,
            class_names: names.to_vec(),
        })
    }
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Loads `<root>/<class>/<doc>` text files. Class names are the sorted
/// subdirectory names. Files directly under `root` are skipped with a
/// warning, as are class directories without files.
pub fn load_directory_corpus(root: impl AsRef<Path>) -> Result<LabeledCorpus> {
    let root = root.as_ref();
    let entries = fs::read_dir(root).map_err(|e| Error::io(root, e))?;
    let mut class_dirs = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(root, e))?;
        let path = entry.path();
        if path.is_dir() {
            class_dirs.push((entry.file_name().to_string_lossy().into_owned(), path));
        } else {
            warn!("ignoring {} outside any class directory", path.display());
        }
    }
    class_dirs.sort();

    let mut documents = Vec::new();
    let mut labels = Vec::new();
    let mut class_names = Vec::new();
    for (name, dir) in class_dirs {
        let mut files = Vec::new();
        for entry in fs::read_dir(&dir).map_err(|e| Error::io(&dir, e))? {
            let path = entry.map_err(|e| Error::io(&dir, e))?.path();
            if path.is_file() {
                files.push(path);
            }
        }
        if files.is_empty() {
            warn!(
                "class directory {} has no documents, skipping",
                dir.display()
            );
            continue;
        }
        files.sort();
        let label = class_names.len();
        for f in files {
            let bytes = fs::read(&f).map_err(|e| Error::io(&f, e))?;
            documents.push(String::from_utf8_lossy(&bytes).into_owned());
            labels.push(label);
        }
        class_names.push(name);
    }
    if documents.is_empty() {
        return Err(Error::Data(format!(
            "{} contains no class directories with documents",
            root.display()
        )));
    }
    LabeledCorpus::new(documents, labels, class_names)
}

/// Loads a headed CSV file. Returns the corpus and the number of rows
/// skipped for an empty label or text. Class names are sorted.
pub fn load_csv_corpus_report(
    path: impl AsRef<Path>,
    label_column: &str,
    text_column: &str,
) -> Result<(LabeledCorpus, usize)> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(file);
    let headers = reader.headers()?.clone();
    if headers.is_empty() {
        return Err(Error::Data(format!("{} is empty", path.display())));
    }
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Data(format!("{}: missing column {name:?}", path.display())))
    };
    let label_idx = column(label_column)?;
    let text_idx = column(text_column)?;

    let mut raw = Vec::new();
    let mut skipped = 0usize;
    for rec in reader.records() {
        let rec = rec?;
        let label = rec.get(label_idx).unwrap_or_default().trim();
        let text = rec.get(text_idx).unwrap_or_default();
        if label.is_empty() || text.trim().is_empty() {
            skipped += 1;
            continue;
        }
        raw.push((label.to_string(), text.to_string()));
    }
    if skipped > 0 {
        warn!(
            "{}: skipped {skipped} rows with empty label or text",
            path.display()
        );
    }
    if raw.is_empty() {
        return Err(Error::Data(format!(
            "{} has no usable rows",
            path.display()
        )));
    }
    let class_names: Vec<String> = raw
        .iter()
        .map(|(l, _)| l.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut documents = Vec::with_capacity(raw.len());
    let mut labels = Vec::with_capacity(raw.len());
    for (label, text) in raw {
        labels.push(
            class_names
                .binary_search(&label)
                .expect("label collected above"),
        );
        documents.push(text);
    }
    Ok((LabeledCorpus::new(documents, labels, class_names)?, skipped))
}

pub fn load_csv_corpus(
    path: impl AsRef<Path>,
    label_column: &str,
    text_column: &str,
) -> Result<LabeledCorpus> {
    load_csv_corpus_report(path, label_column, text_column).map(|(c, _)| c)
}

fn ceil_count(x: f64) -> usize {
    (x - CEIL_SLACK).ceil().max(0.0) as usize
}

/// Draws `ceil(fraction * N_c)` documents per class without replacement.
pub fn subsample_balanced(
    corpus: &LabeledCorpus,
    fraction: f64,
    seed: u64,
) -> Result<LabeledCorpus> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Config(format!(
            "fraction must be in (0,1], got {fraction}"
        )));
    }
    let targets: Vec<usize> = corpus
        .supports()
        .iter()
        .map(|&s| ceil_count(fraction * s as f64).min(s))
        .collect();
    sample_per_class(corpus, &targets, seed)
}

/// Draws per-class supports proportional to `ratios`, scaled so the
/// largest-ratio class would take `scale * N_max` documents, where `N_max` is
/// the largest class support.
pub fn subsample_ratios(
    corpus: &LabeledCorpus,
    ratios: &[f64],
    scale: f64,
    seed: u64,
) -> Result<LabeledCorpus> {
    if ratios.len() != corpus.n_classes() {
        return Err(Error::Config(format!(
            "{} ratios for {} classes",
            ratios.len(),
            corpus.n_classes()
        )));
    }
    if ratios.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::Config("ratios must be positive".into()));
    }
    if !(scale > 0.0 && scale <= 1.0) {
        return Err(Error::Config(format!(
            "scale must be in (0,1], got {scale}"
        )));
    }
    let supports = corpus.supports();
    let n_max = supports.iter().copied().max().unwrap_or(0) as f64;
    let r_max = ratios.iter().copied().fold(0.0, f64::max);
    let unit = scale * n_max / r_max;
    let mut targets = Vec::with_capacity(ratios.len());
    for (c, (&r, &s)) in ratios.iter().zip(&supports).enumerate() {
        let t = ceil_count(r * unit);
        if t > s {
            return Err(Error::Data(format!(
                "class {:?} needs {t} documents for ratio {r} but has {s}",
                corpus.class_names[c]
            )));
        }
        targets.push(t);
    }
    sample_per_class(corpus, &targets, seed)
}

fn sample_per_class(corpus: &LabeledCorpus, targets: &[usize], seed: u64) -> Result<LabeledCorpus> {
    let mut rng = seeded(seed);
    let mut keep = Vec::new();
    for (c, members) in corpus.class_members().iter().enumerate() {
        if targets[c] == 0 {
            return Err(Error::Data(format!(
                "class {:?} would vanish from the subsample",
                corpus.class_names[c]
            )));
        }
        // full shuffle, so a larger target under the same seed extends a smaller one
        let mut order = members.clone();
        order.shuffle(&mut rng);
        keep.extend_from_slice(&order[..targets[c]]);
    }
    Ok(corpus.select(keep))
}

/// Keeps classes with at least `threshold` documents, reindexing labels
/// densely in the original class order.
pub fn filter_by_support_threshold(
    corpus: &LabeledCorpus,
    threshold: usize,
) -> Result<LabeledCorpus> {
    let survivors: Vec<String> = corpus
        .supports()
        .iter()
        .zip(&corpus.class_names)
        .filter(|(&s, _)| s >= threshold)
        .map(|(_, n)| n.clone())
        .collect();
    if survivors.is_empty() {
        return Err(Error::Data(format!("no class has support >= {threshold}")));
    }
    corpus.restrict_to_classes(&survivors)
}

/// Stratified split into `(train, test)`. Each class sends
/// `round(test_fraction * N_c)` documents to the test side, clamped so both
/// sides get at least one.
pub fn train_test_split(
    corpus: &LabeledCorpus,
    test_fraction: f64,
    seed: u64,
) -> Result<(LabeledCorpus, LabeledCorpus)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::Config(format!(
            "test_fraction must be in (0,1), got {test_fraction}"
        )));
    }
    let mut rng = seeded(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (c, members) in corpus.class_members().iter().enumerate() {
        if members.len() < 2 {
            return Err(Error::Data(format!(
                "class {:?} has {} documents; a split needs at least 2",
                corpus.class_names[c],
                members.len()
            )));
        }
        let n_test =
            ((test_fraction * members.len() as f64).round() as usize).clamp(1, members.len() - 1);
        let chosen = index::sample(&mut rng, members.len(), n_test);
        let mut in_test = vec![false; members.len()];
        for i in chosen {
            in_test[i] = true;
        }
        for (i, &doc) in members.iter().enumerate() {
            if in_test[i] {
                test.push(doc);
            } else {
                train.push(doc);
            }
        }
    }
    Ok((corpus.select(train), corpus.select(test)))
}

/// Parameters of a generated bag-of-topics corpus.
///
/// Every class owns `topic_words` words of a shared `vocab_size`-word
/// vocabulary. Each token is drawn from the class topic with probability
/// `signal` (Zipf-weighted within the topic) and uniformly from the whole
/// vocabulary otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub supports: Vec<usize>,
    pub vocab_size: usize,
    pub topic_words: usize,
    pub doc_len: (usize, usize),
    pub signal: f64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            supports: vec![1000; 3],
            vocab_size: 600,
            topic_words: 60,
            doc_len: (8, 24),
            signal: 0.12,
        }
    }
}

/// Generates a corpus from `spec`; identical seeds give identical corpora.
pub fn synthetic_corpus(spec: &SyntheticSpec, seed: u64) -> Result<LabeledCorpus> {
    let n = spec.supports.len();
    if n < 2 {
        return Err(Error::Config(
            "synthetic corpus needs at least 2 classes".into(),
        ));
    }
    if spec.topic_words == 0 || spec.topic_words * n > spec.vocab_size {
        return Err(Error::Config(
            "topic words must fit disjointly in the vocabulary".into(),
        ));
    }
    let (lo, hi) = spec.doc_len;
    if lo == 0 || hi < lo {
        return Err(Error::Config("invalid document length range".into()));
    }
    if !(0.0..=1.0).contains(&spec.signal) {
        return Err(Error::Config("signal must be in [0,1]".into()));
    }
    let word = |i: usize| format!("w{i:05}");
    let zipf: Vec<f64> = (1..=spec.topic_words).map(|r| 1.0 / r as f64).collect();
    let zipf_total: f64 = zipf.iter().sum();

    let mut rng = seeded(seed);
    let mut documents = Vec::new();
    let mut labels = Vec::new();
    for (c, &support) in spec.supports.iter().enumerate() {
        for _ in 0..support {
            let len = rng.gen_range(lo..=hi);
            let mut tokens = Vec::with_capacity(len);
            for _ in 0..len {
                let w = if rng.gen_bool(spec.signal) {
                    let mut u = rng.gen::<f64>() * zipf_total;
                    let mut k = 0;
                    while k + 1 < zipf.len() && u >= zipf[k] {
                        u -= zipf[k];
                        k += 1;
                    }
                    c * spec.topic_words + k
                } else {
                    rng.gen_range(0..spec.vocab_size)
                };
                tokens.push(word(w));
            }
            documents.push(tokens.join(" "));
            labels.push(c);
        }
    }
    let class_names = (0..n).map(|c| format!("class_{c}")).collect();
    LabeledCorpus::new(documents, labels, class_names)
}
