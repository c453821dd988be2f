use super::{Classifier, FeatureMatrix, ModelKind, SparseRow};
use crate::error::{Error, Result};

/// Multinomial Naive Bayes over word counts.
///
/// `theta[mu][c] = (count_{mu c} + alpha) / (total_c + alpha m)` with priors `N_c / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultinomialNB {
    n_classes: usize,
    vocab_size: usize,
    alpha: f64,
    /// Row-major `[mu * n + c]`; each column sums to one.
    theta: Vec<f64>,
    priors: Vec<f64>,
    log_theta: Vec<f64>,
    log_priors: Vec<f64>,
}

impl MultinomialNB {
    pub fn fit(data: &FeatureMatrix, alpha: f64) -> Result<Self> {
        let supports = data.check_fit(alpha)?;
        let n = data.n_classes();
        let m = data.vocab_size();
        let counts = data.feature_class_totals();
        let mut class_totals = vec![0.0; n];
        for (i, &v) in counts.iter().enumerate() {
            class_totals[i % n] += v;
        }
        if alpha == 0.0 {
            if let Some(c) = class_totals.iter().position(|&t| t == 0.0) {
                return Err(Error::Model(format!(
                    "class {c} has no words; multinomial weights need alpha > 0"
                )));
            }
            if let Some(mu) =
                (0..m).find(|mu| counts[mu * n..(mu + 1) * n].iter().all(|&v| v == 0.0))
            {
                return Err(Error::Model(format!(
                    "feature {mu} is unseen in every class; multinomial weights need alpha > 0"
                )));
            }
        }
        let denom: Vec<f64> = class_totals.iter().map(|t| t + alpha * m as f64).collect();
        let theta = counts
            .iter()
            .enumerate()
            .map(|(i, &v)| (v + alpha) / denom[i % n])
            .collect();
        let total = data.n_docs() as f64;
        let priors = supports.iter().map(|&s| s as f64 / total).collect();
        Self::from_parameters(n, m, alpha, theta, priors)
    }

    pub fn from_parameters(
        n_classes: usize,
        vocab_size: usize,
        alpha: f64,
        theta: Vec<f64>,
        priors: Vec<f64>,
    ) -> Result<Self> {
        if theta.len() != n_classes * vocab_size || priors.len() != n_classes {
            return Err(Error::Model("parameter shape does not match n x m".into()));
        }
        if theta
            .iter()
            .chain(&priors)
            .any(|p| !(0.0..=1.0).contains(p))
        {
            return Err(Error::Model("probabilities must lie in [0,1]".into()));
        }
        let log_theta = theta.iter().map(|p| p.ln()).collect();
        let log_priors = priors.iter().map(|p| p.ln()).collect();
        Ok(MultinomialNB {
            n_classes,
            vocab_size,
            alpha,
            theta,
            priors,
            log_theta,
            log_priors,
        })
    }

    pub fn theta(&self, mu: usize, c: usize) -> f64 {
        self.theta[mu * self.n_classes + c]
    }

    pub fn theta_matrix(&self) -> &[f64] {
        &self.theta
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    /// `sum_mu count_mu ln theta_{mu c}` per class, without the prior.
    pub fn log_likelihoods(&self, x: &SparseRow) -> Result<Vec<f64>> {
        x.check_dims(self.vocab_size)?;
        let n = self.n_classes;
        let mut ll = vec![0.0; n];
        for (mu, count) in x.iter() {
            for (c, s) in ll.iter_mut().enumerate() {
                *s += f64::from(count) * self.log_theta[mu * n + c];
            }
        }
        Ok(ll)
    }
}

impl Classifier for MultinomialNB {
    fn kind(&self) -> ModelKind {
        ModelKind::Multinomial
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
        let mut ll = self.log_likelihoods(x)?;
        for (s, p) in ll.iter_mut().zip(&self.log_priors) {
            *s += p;
        }
        Ok(ll)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_vocabularies_classify_perfectly() {
        let data = FeatureMatrix::from_dense(&[vec![3, 0], vec![0, 2]], vec![0, 1], 2).unwrap();
        let m = MultinomialNB::fit(&data, 0.0).unwrap();
        for (row, &label) in data.rows().iter().zip(data.labels()) {
            let p = m.predict(row).unwrap();
            assert_eq!(p[label], 1.0);
        }
    }

    #[test]
    fn word_probabilities_sum_to_one() {
        let data = FeatureMatrix::from_dense(
            &[vec![1, 2, 0], vec![0, 1, 4], vec![2, 0, 1]],
            vec![0, 1, 2],
            3,
        )
        .unwrap();
        let m = MultinomialNB::fit(&data, 0.5).unwrap();
        for c in 0..3 {
            let s: f64 = (0..3).map(|mu| m.theta(mu, c)).sum();
            assert!((s - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn uniform_counts_give_uniform_posterior() {
        let data =
            FeatureMatrix::from_dense(&[vec![1, 1], vec![1, 1], vec![1, 1]], vec![0, 1, 2], 3)
                .unwrap();
        let m = MultinomialNB::fit(&data, 1.0).unwrap();
        let p = m.predict(&SparseRow::from_dense(&[2, 5])).unwrap();
        for &v in p.as_slice() {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn unseen_word_needs_smoothing() {
        let data = FeatureMatrix::from_dense(&[vec![1, 0], vec![1, 0]], vec![0, 1], 2).unwrap();
        assert!(MultinomialNB::fit(&data, 0.0).is_err());
        assert!(MultinomialNB::fit(&data, 1.0).is_ok());
    }
}
