use log::{info, warn};
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{CorpusSource, ModelSpec, SweepConfig, SweepKind};
use crate::datasets::{
    filter_by_support_threshold, load_csv_corpus, load_directory_corpus, subsample_balanced,
    subsample_ratios, synthetic_corpus, train_test_split, LabeledCorpus,
};
use crate::error::{Error, Result};
use crate::metrics::{MetricSummary, PredictionRecord};
use crate::nb::{Classifier, FeatureMatrix, FitOptions, Model, ModelKind};
use crate::text::{
    build_vocabulary, tokenize, vectorize_labeled, TokenizedDoc, VectorizeMode, Vocabulary,
};

/// One evaluated (model, sweep point) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub model: ModelKind,
    pub sweep_param: f64,
    pub n_classes: usize,
    pub accuracy: f64,
    pub entropy_score: f64,
    pub purity: f64,
    pub train_supports: Vec<usize>,
}

pub fn load_corpus(source: &CorpusSource) -> Result<LabeledCorpus> {
    match source {
        CorpusSource::Directory(p) => load_directory_corpus(p),
        CorpusSource::Csv {
            path,
            label_column,
            text_column,
        } => load_csv_corpus(path, label_column, text_column),
        CorpusSource::Synthetic { spec, seed } => synthetic_corpus(spec, *seed),
    }
}

/// Independent seed for stream `stream` of the experiment seed.
fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.next_u64()
}

/// Predictions of a fitted model on every row, paired with the labels.
pub fn predict_records(model: &Model, data: &FeatureMatrix) -> Result<Vec<PredictionRecord>> {
    if data.vocab_size() != model.vocab_size() {
        return Err(Error::DimensionMismatch {
            expected: model.vocab_size(),
            got: data.vocab_size(),
        });
    }
    if data.n_classes() != model.n_classes() {
        return Err(Error::DimensionMismatch {
            expected: model.n_classes(),
            got: data.n_classes(),
        });
    }
    data.rows()
        .iter()
        .zip(data.labels())
        .map(|(x, &c)| PredictionRecord::new(c, model.predict_features(x)?))
        .collect()
}

/// Accuracy, entropy score and purity of `model` on `data`.
pub fn evaluate(model: &Model, data: &FeatureMatrix) -> Result<MetricSummary> {
    let records = predict_records(model, data)?;
    MetricSummary::compute(&records, model.n_classes())
}

fn tokenize_all(corpus: &LabeledCorpus) -> Vec<TokenizedDoc> {
    corpus.documents().iter().map(|d| tokenize(d)).collect()
}

/// Count features for `corpus`, with labels taken from `corpus`.
pub fn featurize(corpus: &LabeledCorpus, vocab: &Vocabulary) -> Result<FeatureMatrix> {
    vectorize_labeled(
        &tokenize_all(corpus),
        corpus.labels(),
        corpus.n_classes(),
        vocab,
        VectorizeMode::Counts,
    )
}

/// Fits every model on `train` and scores it on `test`. Both corpora must
/// share the same class list.
pub fn evaluate_point(
    train: &LabeledCorpus,
    test: &LabeledCorpus,
    models: &[ModelSpec],
    min_doc_freq: usize,
    opts: FitOptions,
) -> Result<Vec<(ModelKind, MetricSummary)>> {
    if train.class_names() != test.class_names() {
        return Err(Error::Data("train and test class lists differ".into()));
    }
    let train_tokens = tokenize_all(train);
    let vocab = build_vocabulary(&train_tokens, min_doc_freq)?;
    let train_x = vectorize_labeled(
        &train_tokens,
        train.labels(),
        train.n_classes(),
        &vocab,
        VectorizeMode::Counts,
    )?;
    let test_x = featurize(test, &vocab)?;
    models
        .iter()
        .map(|spec| {
            let model = Model::fit(spec.kind, &train_x, spec.alpha, opts)?;
            Ok((spec.kind, evaluate(&model, &test_x)?))
        })
        .collect()
}

fn point_label(kind: &SweepKind, value: f64) -> String {
    format!("{}={value}", kind.name())
}

/// Runs the configured sweep after loading its corpus.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let corpus = load_corpus(&config.source)?;
    info!(
        "loaded {} documents in {} classes",
        corpus.len(),
        corpus.n_classes()
    );
    run_sweep_on(&corpus, config)
}

/// Runs the sweep on an already loaded corpus.
///
/// The test set is split off once. Every point draws its training set from
/// the same derived seed, so training sets grow by nesting, and points can
/// run in parallel without changing results. Rows are ordered by model
/// (config order), then sweep point.
pub fn run_sweep_on(corpus: &LabeledCorpus, config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if config.models.is_empty() {
        return Err(Error::Config("models must not be empty".into()));
    }
    if config.sweep.is_empty() {
        return Err(Error::Config("sweep has no points".into()));
    }
    let (train_full, test_full) =
        train_test_split(corpus, config.test_fraction, derive_seed(config.seed, 0))?;
    let opts = FitOptions {
        complement_norm: config.complement_norm,
    };
    let points = config.sweep.points();

    let per_point: Vec<Vec<SweepRow>> = points
        .par_iter()
        .enumerate()
        .map(|(i, &value)| {
            // one subsample seed per experiment keeps successive training sets nested
            let seed = derive_seed(config.seed, 1);
            let (train, test) = match &config.sweep {
                SweepKind::BalancedFractions(_) => (
                    subsample_balanced(&train_full, value, seed)?,
                    test_full.clone(),
                ),
                SweepKind::RatioScales { ratios, .. } => (
                    subsample_ratios(&train_full, ratios, value, seed)?,
                    test_full.clone(),
                ),
                SweepKind::Thresholds(t) => {
                    let train = filter_by_support_threshold(&train_full, t[i])?;
                    let test = test_full.restrict_to_classes(train.class_names())?;
                    (train, test)
                }
            };
            let supports = train.supports();
            let results = evaluate_point(&train, &test, &config.models, config.min_doc_freq, opts)?;
            info!(
                "{} done, train supports {supports:?}",
                point_label(&config.sweep, value)
            );
            Ok(results
                .into_iter()
                .map(|(model, m)| SweepRow {
                    model,
                    sweep_param: value,
                    n_classes: train.n_classes(),
                    accuracy: m.accuracy,
                    entropy_score: m.entropy_score,
                    purity: m.purity,
                    train_supports: supports.clone(),
                })
                .collect())
        })
        .enumerate()
        .map(|(i, r): (usize, Result<Vec<SweepRow>>)| {
            r.map_err(|e| Error::SweepPoint {
                point: point_label(&config.sweep, points[i]),
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(points.len() * config.models.len());
    for spec in &config.models {
        for point in &per_point {
            rows.extend(point.iter().filter(|r| r.model == spec.kind).cloned());
        }
    }
    for flag in confidence_flags(&rows) {
        warn!("{flag}");
    }
    Ok(rows)
}

/// Points (with `n >= 3`) where a complement model is more confident than
/// its base model. These are reported, not treated as failures.
pub fn confidence_flags(rows: &[SweepRow]) -> Vec<String> {
    let mut flags = Vec::new();
    for comp in rows
        .iter()
        .filter(|r| r.model.is_complement() && r.n_classes >= 3)
    {
        let base = rows
            .iter()
            .find(|r| r.model == comp.model.base() && r.sweep_param == comp.sweep_param);
        if let Some(base) = base {
            if comp.entropy_score > base.entropy_score {
                flags.push(format!(
                    "{} entropy score {:.6} exceeds {} {:.6} at sweep point {}",
                    comp.model,
                    comp.entropy_score,
                    base.model,
                    base.entropy_score,
                    comp.sweep_param
                ));
            }
        }
    }
    flags
}
