use super::{Classifier, FeatureMatrix, ModelKind, SparseRow};
use crate::error::{Error, Result};

/// Bernoulli Naive Bayes over binary presence features.
///
/// `phi[mu][c] = (N_{mu c} + alpha) / (N_c + 2 alpha)` and `psi[c] = N_c / N`.
/// With `alpha = 0` these are the maximum-likelihood estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliNB {
    n_classes: usize,
    vocab_size: usize,
    alpha: f64,
    /// Row-major `[mu * n + c]`.
    phi: Vec<f64>,
    psi: Vec<f64>,
    log_phi: Vec<f64>,
    log_not_phi: Vec<f64>,
    /// Per class: finite part of `sum_mu ln(1 - phi)` and the number of `-inf` terms.
    absent_base: Vec<(f64, usize)>,
}

impl BernoulliNB {
    pub fn fit(data: &FeatureMatrix, alpha: f64) -> Result<Self> {
        let supports = data.check_fit(alpha)?;
        if !data.is_binary() {
            return Err(Error::InvalidFeatures(
                "Bernoulli fit needs binary {0,1} features".into(),
            ));
        }
        let n = data.n_classes();
        let total = data.n_docs() as f64;
        let counts = data.feature_class_totals();
        let phi = counts
            .iter()
            .enumerate()
            .map(|(i, &n_mu_c)| (n_mu_c + alpha) / (supports[i % n] as f64 + 2.0 * alpha))
            .collect();
        let psi = supports.iter().map(|&s| s as f64 / total).collect();
        Self::from_parameters(n, data.vocab_size(), alpha, phi, psi)
    }

    /// Rebuilds a model from stored parameters.
    pub fn from_parameters(
        n_classes: usize,
        vocab_size: usize,
        alpha: f64,
        phi: Vec<f64>,
        psi: Vec<f64>,
    ) -> Result<Self> {
        if phi.len() != n_classes * vocab_size || psi.len() != n_classes {
            return Err(Error::Model("parameter shape does not match n x m".into()));
        }
        if phi.iter().chain(&psi).any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Model("probabilities must lie in [0,1]".into()));
        }
        let log_phi: Vec<f64> = phi.iter().map(|p| p.ln()).collect();
        let log_not_phi: Vec<f64> = phi.iter().map(|p| (-p).ln_1p()).collect();
        let mut absent_base = vec![(0.0, 0usize); n_classes];
        for (i, &l) in log_not_phi.iter().enumerate() {
            let slot = &mut absent_base[i % n_classes];
            if l == f64::NEG_INFINITY {
                slot.1 += 1;
            } else {
                slot.0 += l;
            }
        }
        Ok(BernoulliNB {
            n_classes,
            vocab_size,
            alpha,
            phi,
            psi,
            log_phi,
            log_not_phi,
            absent_base,
        })
    }

    /// `p(x_mu = 1 | c)`.
    pub fn phi(&self, mu: usize, c: usize) -> f64 {
        self.phi[mu * self.n_classes + c]
    }

    pub fn phi_matrix(&self) -> &[f64] {
        &self.phi
    }

    /// Class priors.
    pub fn psi(&self) -> &[f64] {
        &self.psi
    }
}

impl Classifier for BernoulliNB {
    fn kind(&self) -> ModelKind {
        ModelKind::Bernoulli
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
        let mut scores = Vec::with_capacity(n);
        for c in 0..n {
            let (mut absent, mut absent_inf) = self.absent_base[c];
            let mut present = 0.0;
            for (mu, _) in x.iter() {
                let l = self.log_not_phi[mu * n + c];
                if l == f64::NEG_INFINITY {
                    absent_inf -= 1;
                } else {
                    absent -= l;
                }
                present += self.log_phi[mu * n + c];
            }
            let absent = if absent_inf > 0 {
                f64::NEG_INFINITY
            } else {
                absent
            };
            scores.push(self.psi[c].ln() + present + absent);
        }
        Ok(scores)
    }
}
