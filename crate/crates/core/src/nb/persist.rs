use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    BernoulliNB, Classifier, ComplementBernoulliNB, ComplementMultinomialNB, Model, ModelKind,
    MultinomialNB,
};
use crate::error::{Error, Result};

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// On-disk JSON form of a fitted model.
///
/// `word_params` is the row-major `m x n` matrix of the family's per-word
/// parameter (`phi`, `tilde_phi`, `theta` or `theta_hat`) and `class_params`
/// the per-class vector (`psi`, `tilde_psi` or priors). Optional metadata
/// lets a model be applied to raw text later.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub format_version: u32,
    pub kind: ModelKind,
    pub n_classes: usize,
    pub vocab_size: usize,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub normalize: bool,
    pub word_params: Vec<f64>,
    pub class_params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub class_names: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vocabulary: Vec<String>,
}

impl ModelDocument {
    pub fn from_model(model: &Model) -> Self {
        let (word_params, class_params, normalize) = match model {
            Model::Bernoulli(m) => (m.phi_matrix().to_vec(), m.psi().to_vec(), false),
            Model::ComplementBernoulli(m) => {
                (m.tilde_phi_matrix().to_vec(), m.tilde_psi().to_vec(), false)
            }
            Model::Multinomial(m) => (m.theta_matrix().to_vec(), m.priors().to_vec(), false),
            Model::ComplementMultinomial(m) => (
                m.theta_hat_matrix().to_vec(),
                m.priors().to_vec(),
                m.normalized(),
            ),
        };
        ModelDocument {
            format_version: MODEL_FORMAT_VERSION,
            kind: model.kind(),
            n_classes: model.n_classes(),
            vocab_size: model.vocab_size(),
            alpha: model.alpha(),
            normalize,
            word_params,
            class_params,
            class_names: Vec::new(),
            vocabulary: Vec::new(),
        }
    }

    pub fn with_metadata(mut self, class_names: Vec<String>, vocabulary: Vec<String>) -> Self {
        self.class_names = class_names;
        self.vocabulary = vocabulary;
        self
    }

    pub fn to_model(&self) -> Result<Model> {
        if self.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Model(format!(
                "unsupported model format version {}",
                self.format_version
            )));
        }
        if !self.class_names.is_empty() && self.class_names.len() != self.n_classes {
            return Err(Error::Model(
                "class name count does not match n_classes".into(),
            ));
        }
        if !self.vocabulary.is_empty() && self.vocabulary.len() != self.vocab_size {
            return Err(Error::DimensionMismatch {
                expected: self.vocab_size,
                got: self.vocabulary.len(),
            });
        }
        let (n, m, a) = (self.n_classes, self.vocab_size, self.alpha);
        let w = self.word_params.clone();
        let c = self.class_params.clone();
        Ok(match self.kind {
            ModelKind::Bernoulli => Model::Bernoulli(BernoulliNB::from_parameters(n, m, a, w, c)?),
            ModelKind::ComplementBernoulli => {
                Model::ComplementBernoulli(ComplementBernoulliNB::from_parameters(n, m, a, w, c)?)
            }
            ModelKind::Multinomial => {
                Model::Multinomial(MultinomialNB::from_parameters(n, m, a, w, c)?)
            }
            ModelKind::ComplementMultinomial => Model::ComplementMultinomial(
                ComplementMultinomialNB::from_parameters(n, m, a, self.normalize, w, c)?,
            ),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
