use super::{Classifier, FeatureMatrix, ModelKind, SparseRow};
use crate::error::{Error, Result};

/// Complement multinomial Naive Bayes.
///
/// Word weights come from the documents outside each class:
/// `theta_hat[mu][c] = (count_{mu, not c} + alpha) / (total_{not c} + alpha m)`.
/// A document scores `ln prior_c - sum_mu count_mu w_{mu c}` where
/// `w = ln theta_hat`, optionally divided by its per-class L2 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementMultinomialNB {
    n_classes: usize,
    vocab_size: usize,
    alpha: f64,
    normalize: bool,
    /// Row-major `[mu * n + c]`.
    theta_hat: Vec<f64>,
    priors: Vec<f64>,
    weights: Vec<f64>,
    log_priors: Vec<f64>,
}

impl ComplementMultinomialNB {
    pub fn fit(data: &FeatureMatrix, alpha: f64) -> Result<Self> {
        Self::fit_with(data, alpha, false)
    }

    pub fn fit_with(data: &FeatureMatrix, alpha: f64, normalize: bool) -> Result<Self> {
        let supports = data.check_fit(alpha)?;
        let n = data.n_classes();
        let m = data.vocab_size();
        let counts = data.feature_class_totals();
        let mut class_totals = vec![0.0; n];
        let mut word_totals = vec![0.0; m];
        for (i, &v) in counts.iter().enumerate() {
            class_totals[i % n] += v;
            word_totals[i / n] += v;
        }
        let grand: f64 = class_totals.iter().sum();
        let mut theta_hat = Vec::with_capacity(m * n);
        for mu in 0..m {
            for c in 0..n {
                let outside = word_totals[mu] - counts[mu * n + c];
                let outside_total = grand - class_totals[c];
                if alpha == 0.0 && outside == 0.0 {
                    return Err(Error::Model(format!(
                        "feature {mu} is unseen outside class {c}; complement weights need alpha > 0"
                    )));
                }
                theta_hat.push((outside + alpha) / (outside_total + alpha * m as f64));
            }
        }
        let total = data.n_docs() as f64;
        let priors = supports.iter().map(|&s| s as f64 / total).collect();
        Self::from_parameters(n, m, alpha, normalize, theta_hat, priors)
    }

    pub fn from_parameters(
        n_classes: usize,
        vocab_size: usize,
        alpha: f64,
        normalize: bool,
        theta_hat: Vec<f64>,
        priors: Vec<f64>,
    ) -> Result<Self> {
        if theta_hat.len() != n_classes * vocab_size || priors.len() != n_classes {
            return Err(Error::Model("parameter shape does not match n x m".into()));
        }
        if theta_hat.iter().any(|p| !(*p > 0.0 && *p <= 1.0))
            || priors.iter().any(|p| !(0.0..=1.0).contains(p))
        {
            return Err(Error::Model(
                "complement word probabilities must lie in (0,1]".into(),
            ));
        }
        let mut weights: Vec<f64> = theta_hat.iter().map(|p| p.ln()).collect();
        if normalize {
            for c in 0..n_classes {
                let norm = (0..vocab_size)
                    .map(|mu| weights[mu * n_classes + c].powi(2))
                    .sum::<f64>()
                    .sqrt();
                if norm > 0.0 {
                    for mu in 0..vocab_size {
                        weights[mu * n_classes + c] /= norm;
                    }
                }
            }
        }
        let log_priors = priors.iter().map(|p| p.ln()).collect();
        Ok(ComplementMultinomialNB {
            n_classes,
            vocab_size,
            alpha,
            normalize,
            theta_hat,
            priors,
            weights,
            log_priors,
        })
    }

    pub fn theta_hat(&self, mu: usize, c: usize) -> f64 {
        self.theta_hat[mu * self.n_classes + c]
    }

    pub fn theta_hat_matrix(&self) -> &[f64] {
        &self.theta_hat
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn normalized(&self) -> bool {
        self.normalize
    }

    /// The per-(feature, class) weight subtracted per word occurrence.
    pub fn weight(&self, mu: usize, c: usize) -> f64 {
        self.weights[mu * self.n_classes + c]
    }
}

impl Classifier for ComplementMultinomialNB {
    fn kind(&self) -> ModelKind {
        ModelKind::ComplementMultinomial
    }

    fn n_classes(&self) -> usize {
        self.n_classes
    }

    fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    fn alpha(&self) -> f64 {
        self.alpha
    }

    fn log_scores(&self, x: &SparseRow) -> Result<Vec<f64>> {
        x.check_dims(self.vocab_size)?;
        let n = self.n_classes;
        let mut scores = self.log_priors.clone();
        for (mu, count) in x.iter() {
            for (c, s) in scores.iter_mut().enumerate() {
                *s -= f64::from(count) * self.weights[mu * n + c];
            }
        }
        Ok(scores)
    }
}
