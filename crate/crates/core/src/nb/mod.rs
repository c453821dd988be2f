//! Naive Bayes text classifiers.
//!
//! Four models share the [`Classifier`] interface:
//!
//! - [`BernoulliNB`]: binary presence features with maximum-likelihood
//!   estimates, optionally additively smoothed.
//! - [`ComplementBernoulliNB`]: the Bernoulli model with both word weights and
//!   class priors estimated from the samples *outside* each class. For a
//!   single present word its posterior is the complement map of the Bernoulli
//!   posterior for that word.
//! - [`MultinomialNB`]: the multinomial event model over word counts.
//! - [`ComplementMultinomialNB`]: the complement multinomial model, where each
//!   class is scored by how poorly the complement-class word distribution
//!   explains the document.
//!
//! All posteriors are accumulated in log space and normalized with
//! log-sum-exp.

mod bernoulli;
mod complement_bernoulli;
mod complement_multinomial;
mod multinomial;
mod persist;

use std::fmt;
use std::str::FromStr;

pub use bernoulli::BernoulliNB;
pub use complement_bernoulli::ComplementBernoulliNB;
pub use complement_multinomial::ComplementMultinomialNB;
pub use multinomial::MultinomialNB;
pub use persist::{ModelDocument, MODEL_FORMAT_VERSION};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::Distribution;

/// Default additive smoothing strength.
pub const DEFAULT_ALPHA: f64 = 1.0;

/// A sparse non-negative count vector, sorted by feature index with no zero entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseRow {
    entries: Vec<(usize, u32)>,
}

impl SparseRow {
    /// Builds a row from `(index, count)` pairs in any order. Duplicate
    /// indices are summed and zero counts dropped.
    pub fn from_pairs(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.sort_unstable_by_key(|&(i, _)| i);
        let mut entries: Vec<(usize, u32)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|&(_, c)| c > 0);
        SparseRow { entries }
    }

    pub fn from_dense(dense: &[u32]) -> Self {
        SparseRow {
            entries: dense
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        }
    }

    pub fn to_dense(&self, m: usize) -> Vec<u32> {
        let mut out = vec![0; m];
        for &(i, c) in &self.entries {
            out[i] = c;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.entries.iter().copied()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|&(_, c)| c == 1)
    }

    pub fn binarized(&self) -> SparseRow {
        SparseRow {
            entries: self.entries.iter().map(|&(i, _)| (i, 1)).collect(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|&(i, _)| i)
    }

    pub(crate) fn check_dims(&self, m: usize) -> Result<()> {
        match self.max_index() {
            Some(i) if i >= m => Err(Error::DimensionMismatch {
                expected: m,
                got: i + 1,
            }),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_binary(&self) -> Result<()> {
        if self.is_binary() {
            Ok(())
        } else {
            Err(Error::InvalidFeatures(
                "Bernoulli models need binary {0,1} features".into(),
            ))
        }
    }
}

/// Labelled documents as sparse count rows.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: Vec<SparseRow>,
    labels: Vec<usize>,
    n_classes: usize,
    vocab_size: usize,
}

impl FeatureMatrix {
    pub fn new(
        rows: Vec<SparseRow>,
        labels: Vec<usize>,
        n_classes: usize,
        vocab_size: usize,
    ) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                got: labels.len(),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= n_classes) {
            return Err(Error::ClassOutOfRange {
                index: bad,
                n: n_classes,
            });
        }
        for row in &rows {
            row.check_dims(vocab_size)?;
        }
        Ok(FeatureMatrix {
            rows,
            labels,
            n_classes,
            vocab_size,
        })
    }

    pub fn from_dense(dense: &[Vec<u32>], labels: Vec<usize>, n_classes: usize) -> Result<Self> {
        let m = dense.first().map_or(0, Vec::len);
        if let Some(bad) = dense.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: bad.len(),
            });
        }
        let rows = dense.iter().map(|r| SparseRow::from_dense(r)).collect();
        FeatureMatrix::new(rows, labels, n_classes, m)
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn n_docs(&self) -> usize {
        self.rows.len()
    }

    pub fn is_binary(&self) -> bool {
        self.rows.iter().all(SparseRow::is_binary)
    }

    pub fn binarized(&self) -> FeatureMatrix {
        FeatureMatrix {
            rows: self.rows.iter().map(SparseRow::binarized).collect(),
            ..self.clone()
        }
    }

    /// Documents per class, `N_c`.
    pub fn class_supports(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Per-(feature, class) sums of the stored values, row-major `[mu * n + c]`.
    /// On binary data this is the document frequency `N_{mu c}`.
    pub(crate) fn feature_class_totals(&self) -> Vec<f64> {
        let n = self.n_classes;
        let mut totals = vec![0.0; self.vocab_size * n];
        for (row, &c) in self.rows.iter().zip(&self.labels) {
            for (mu, count) in row.iter() {
                totals[mu * n + c] += f64::from(count);
            }
        }
        totals
    }

    /// Checks the preconditions shared by every fit.
    pub(crate) fn check_fit(&self, alpha: f64) -> Result<Vec<usize>> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::Model(format!(
                "alpha must be finite and >= 0, got {alpha}"
            )));
        }
        if self.rows.is_empty() {
            return Err(Error::Data("cannot fit on an empty corpus".into()));
        }
        if self.n_classes < 2 {
            return Err(Error::Model(format!(
                "need at least 2 classes, got {}",
                self.n_classes
            )));
        }
        let supports = self.class_supports();
        if let Some(c) = supports.iter().position(|&s| s == 0) {
            return Err(Error::MissingClass(c));
        }
        Ok(supports)
    }
}

/// The model families understood by the harness and the model file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Bernoulli,
    ComplementBernoulli,
    Multinomial,
    ComplementMultinomial,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Bernoulli,
        ModelKind::ComplementBernoulli,
        ModelKind::Multinomial,
        ModelKind::ComplementMultinomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Bernoulli => "bernoulli",
            ModelKind::ComplementBernoulli => "complement_bernoulli",
            ModelKind::Multinomial => "multinomial",
            ModelKind::ComplementMultinomial => "complement_multinomial",
        }
    }

    /// Bernoulli-family models consume binary presence features.
    pub fn uses_binary_features(self) -> bool {
        matches!(self, ModelKind::Bernoulli | ModelKind::ComplementBernoulli)
    }

    pub fn is_complement(self) -> bool {
        matches!(
            self,
            ModelKind::ComplementBernoulli | ModelKind::ComplementMultinomial
        )
    }

    /// The non-complement model of the same family.
    pub fn base(self) -> ModelKind {
        match self {
            ModelKind::ComplementBernoulli => ModelKind::Bernoulli,
            ModelKind::ComplementMultinomial => ModelKind::Multinomial,
            k => k,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown model kind {s:?}")))
    }
}

/// Fitted-model behaviour shared by every family.
pub trait Classifier {
    fn kind(&self) -> ModelKind;
    fn n_classes(&self) -> usize;
    fn vocab_size(&self) -> usize;
    fn alpha(&self) -> f64;

    /// Unnormalized log posterior per class.
    fn log_scores(&self, x: &SparseRow) -> Result<Vec<f64>>;

    fn predict(&self, x: &SparseRow) -> Result<Distribution> {
        Distribution::from_log_scores(&self.log_scores(x)?)
    }

    fn predict_batch(&self, rows: &[SparseRow]) -> Result<Vec<Distribution>> {
        rows.iter().map(|x| self.predict(x)).collect()
    }
}

/// Fit-time options beyond `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FitOptions {
    /// Normalize complement-multinomial weights per class.
    pub complement_norm: bool,
}

/// Any fitted model.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Bernoulli(BernoulliNB),
    ComplementBernoulli(ComplementBernoulliNB),
    Multinomial(MultinomialNB),
    ComplementMultinomial(ComplementMultinomialNB),
}

impl Model {
    /// Fits `kind` on `data`. Bernoulli-family kinds binarize count data first.
    pub fn fit(
        kind: ModelKind,
        data: &FeatureMatrix,
        alpha: f64,
        opts: FitOptions,
    ) -> Result<Self> {
        let binary;
        let data = if kind.uses_binary_features() && !data.is_binary() {
            binary = data.binarized();
            &binary
        } else {
            data
        };
        Ok(match kind {
            ModelKind::Bernoulli => Model::Bernoulli(BernoulliNB::fit(data, alpha)?),
            ModelKind::ComplementBernoulli => {
                Model::ComplementBernoulli(ComplementBernoulliNB::fit(data, alpha)?)
            }
            ModelKind::Multinomial => Model::Multinomial(MultinomialNB::fit(data, alpha)?),
            ModelKind::ComplementMultinomial => Model::ComplementMultinomial(
                ComplementMultinomialNB::fit_with(data, alpha, opts.complement_norm)?,
            ),
        })
    }

    fn inner(&self) -> &dyn Classifier {
        match self {
            Model::Bernoulli(m) => m,
            Model::ComplementBernoulli(m) => m,
            Model::Multinomial(m) => m,
            Model::ComplementMultinomial(m) => m,
        }
    }

    /// Predicts after binarizing the row for Bernoulli-family models.
    pub fn predict_features(&self, x: &SparseRow) -> Result<Distribution> {
        if self.kind().uses_binary_features() && !x.is_binary() {
            self.predict(&x.binarized())
        } else {
            self.predict(x)
        }
    }
}

impl Classifier for Model {
    fn kind(&self) -> ModelKind {
        self.inner().kind()
    }

    fn n_classes(&self) -> usize {
        self.inner().n_classes()
    }

    fn vocab_size(&self) -> usize {
        self.inner().vocab_size()
    }

    fn alpha(&self) -> f64 {
        self.inner().alpha()
    }

    fn log_scores(&self, x: &SparseRow) -> Result<Vec<f64>> {
        self.inner().log_scores(x)
    }
}
