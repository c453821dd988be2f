//! Confidence metrics for probabilistic classifiers.
//!
//! - [`simplex`]: distributions, entropy and the complement map.
//! - [`metrics`]: entropy score, probabilistic confusion matrix, purity, accuracy.
//! - [`nb`]: Bernoulli, complement Bernoulli, multinomial and complement
//!   multinomial Naive Bayes.
//! - [`text`]: tokenizer, vocabulary and vectorizer.
//! - [`datasets`]: corpus loaders, subsampling schemes and splits.
//! - [`experiment`]: the sweep harness and its output formats.
//! - [`commands`]: the operations behind the `confidex` binary.

pub mod commands;
pub mod datasets;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod nb;
pub mod simplex;
pub mod text;

pub use error::{Error, ErrorKind, Result};
pub use metrics::{accuracy, entropy_score, purity, PredictionRecord, ProbConfusionMatrix};
pub use simplex::{complement_map, entropy, uniform, vertex, Distribution};
