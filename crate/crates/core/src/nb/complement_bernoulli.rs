use super::{Classifier, FeatureMatrix, ModelKind, SparseRow};
use crate::error::{Error, Result};

/// Bernoulli Naive Bayes with complemented word weights and priors.
///
/// `tilde_phi[mu][c] = (N - N_c + 2 alpha) / (N_mu - N_{mu c} + alpha)` and
/// `tilde_psi[c] = N / (N - N_c)`. Both are unnormalized positive scores.
/// Only present features contribute to a document's score, so for a
/// single-word document the posterior is proportional to
/// `1 / (1 - p(c | x_mu = 1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementBernoulliNB {
    n_classes: usize,
    vocab_size: usize,
    alpha: f64,
    /// Row-major `[mu * n + c]`.
    tilde_phi: Vec<f64>,
    tilde_psi: Vec<f64>,
    log_phi: Vec<f64>,
    log_psi: Vec<f64>,
}

impl ComplementBernoulliNB {
    pub fn fit(data: &FeatureMatrix, alpha: f64) -> Result<Self> {
        let supports = data.check_fit(alpha)?;
        if !data.is_binary() {
            return Err(Error::InvalidFeatures(
                "complement Bernoulli fit needs binary {0,1} features".into(),
            ));
        }
        let n = data.n_classes();
        let m = data.vocab_size();
        let total = data.n_docs() as f64;
        let counts = data.feature_class_totals();
        let mut tilde_phi = Vec::with_capacity(m * n);
        for mu in 0..m {
            let row = &counts[mu * n..(mu + 1) * n];
            let n_mu: f64 = row.iter().sum();
            for c in 0..n {
                let outside_docs = n_mu - row[c];
                if alpha == 0.0 && outside_docs == 0.0 {
                    return Err(Error::Model(format!(
                        "feature {mu} never occurs outside class {c}; complement weights need alpha > 0"
                    )));
                }
                tilde_phi.push((total - supports[c] as f64 + 2.0 * alpha) / (outside_docs + alpha));
            }
        }
        let tilde_psi = supports
            .iter()
            .map(|&s| total / (total - s as f64))
            .collect();
        Self::from_parameters(n, m, alpha, tilde_phi, tilde_psi)
    }

    pub fn from_parameters(
        n_classes: usize,
        vocab_size: usize,
        alpha: f64,
        tilde_phi: Vec<f64>,
        tilde_psi: Vec<f64>,
    ) -> Result<Self> {
        if tilde_phi.len() != n_classes * vocab_size || tilde_psi.len() != n_classes {
            return Err(Error::Model("parameter shape does not match n x m".into()));
        }
        if tilde_phi
            .iter()
            .chain(&tilde_psi)
            .any(|w| !(w.is_finite() && *w > 0.0))
        {
            return Err(Error::Model(
                "complement weights must be finite and positive".into(),
            ));
        }
        let log_phi = tilde_phi.iter().map(|w| w.ln()).collect();
        let log_psi = tilde_psi.iter().map(|w| w.ln()).collect();
        Ok(ComplementBernoulliNB {
            n_classes,
            vocab_size,
            alpha,
            tilde_phi,
            tilde_psi,
            log_phi,
            log_psi,
        })
    }

    pub fn tilde_phi(&self, mu: usize, c: usize) -> f64 {
        self.tilde_phi[mu * self.n_classes + c]
    }

    pub fn tilde_phi_matrix(&self) -> &[f64] {
        &self.tilde_phi
    }

    pub fn tilde_psi(&self) -> &[f64] {
        &self.tilde_psi
    }
}

impl Classifier for ComplementBernoulliNB {
    fn kind(&self) -> ModelKind {
        ModelKind::ComplementBernoulli
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
        x.check_binary()?;
        let n = self.n_classes;
        let mut scores = self.log_psi.clone();
        for (mu, _) in x.iter() {
            for (c, s) in scores.iter_mut().enumerate() {
                *s += self.log_phi[mu * n + c];
            }
        }
        Ok(scores)
    }
}
