//! Sweep configuration.
//!
//! A config is one flat TOML document. Keys:
//!
//! ```toml
//! corpus = "directory"          # directory | csv | synthetic
//! corpus_path = "data/news"     # directory or csv only; relative to the config file
//! label_column = "Genre"        # csv only (default "label")
//! text_column = "Plot"          # csv only (default "text")
//!
//! # synthetic only (defaults shown)
//! synthetic_supports = [1000, 1000, 1000]
//! synthetic_vocab_size = 600
//! synthetic_topic_words = 60
//! synthetic_doc_len_min = 8
//! synthetic_doc_len_max = 24
//! synthetic_signal = 0.12
//! synthetic_seed = 7
//!
//! models = ["bernoulli", "complement_bernoulli", "multinomial", "complement_multinomial"]
//! alpha = 1.0                   # default smoothing for every model
//! alpha_complement_bernoulli = 0.5   # optional per-model override: alpha_<model>
//! complement_norm = false
//! min_doc_freq = 1
//!
//! sweep = "balanced_fractions"  # balanced_fractions | ratio_scales | thresholds
//! fractions = [0.1, 0.2]        # balanced_fractions (default 0.1, 0.2, ..., 1.0)
//! ratios = [2, 5, 10]           # ratio_scales
//! scales = [0.1, 0.5, 1.0]      # ratio_scales (default 0.1, ..., 1.0)
//! thresholds = [100, 200]       # thresholds
//!
//! test_fraction = 0.2
//! seed = 0                      # overridden by CONFIDEX_SEED
//! output = "sweep.csv"          # optional, relative to the config file
//! plot_prefix = "plots/sweep"   # optional
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::datasets::SyntheticSpec;
use crate::error::{Error, Result};
use crate::nb::{ModelKind, DEFAULT_ALPHA};

/// Environment variable that replaces the configured seed.
pub const SEED_ENV_VAR: &str = "CONFIDEX_SEED";

#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSource {
    Directory(PathBuf),
    Csv {
        path: PathBuf,
        label_column: String,
        text_column: String,
    },
    Synthetic {
        spec: SyntheticSpec,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepKind {
    BalancedFractions(Vec<f64>),
    RatioScales { ratios: Vec<f64>, scales: Vec<f64> },
    Thresholds(Vec<usize>),
}

impl SweepKind {
    pub fn name(&self) -> &'static str {
        match self {
            SweepKind::BalancedFractions(_) => "balanced_fractions",
            SweepKind::RatioScales { .. } => "ratio_scales",
            SweepKind::Thresholds(_) => "thresholds",
        }
    }

    /// Sweep parameter value of every point, in order.
    pub fn points(&self) -> Vec<f64> {
        match self {
            SweepKind::BalancedFractions(f) => f.clone(),
            SweepKind::RatioScales { scales, .. } => scales.clone(),
            SweepKind::Thresholds(t) => t.iter().map(|&t| t as f64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SweepKind::BalancedFractions(f) => f.len(),
            SweepKind::RatioScales { scales, .. } => scales.len(),
            SweepKind::Thresholds(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub source: CorpusSource,
    pub models: Vec<ModelSpec>,
    pub sweep: SweepKind,
    pub test_fraction: f64,
    pub seed: u64,
    pub min_doc_freq: usize,
    pub complement_norm: bool,
    pub output: Option<PathBuf>,
    pub plot_prefix: Option<PathBuf>,
}

/// Ten linear steps from 0.1 to 1.0.
pub fn default_steps() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 10.0).collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    corpus: String,
    corpus_path: Option<PathBuf>,
    label_column: Option<String>,
    text_column: Option<String>,
    synthetic_supports: Option<Vec<usize>>,
    synthetic_vocab_size: Option<usize>,
    synthetic_topic_words: Option<usize>,
    synthetic_doc_len_min: Option<usize>,
    synthetic_doc_len_max: Option<usize>,
    synthetic_signal: Option<f64>,
    synthetic_seed: Option<u64>,
    models: Vec<String>,
    alpha: Option<f64>,
    alpha_bernoulli: Option<f64>,
    alpha_complement_bernoulli: Option<f64>,
    alpha_multinomial: Option<f64>,
    alpha_complement_multinomial: Option<f64>,
    complement_norm: Option<bool>,
    min_doc_freq: Option<usize>,
    sweep: String,
    fractions: Option<Vec<f64>>,
    ratios: Option<Vec<f64>>,
    scales: Option<Vec<f64>>,
    thresholds: Option<Vec<usize>>,
    test_fraction: Option<f64>,
    seed: Option<u64>,
    output: Option<PathBuf>,
    plot_prefix: Option<PathBuf>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn check_unit_interval(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(invalid(format!("{name} must not be empty")));
    }
    if let Some(v) = values.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
        return Err(invalid(format!("{name} must lie in (0,1], got {v}")));
    }
    Ok(())
}

impl SweepConfig {
    /// Parses a config document. Relative paths resolve against `base_dir`.
    pub fn from_toml_str(text: &str, base_dir: &Path) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| invalid(e.to_string()))?;
        let resolve = |p: PathBuf| if p.is_relative() { base_dir.join(p) } else { p };

        let source = match raw.corpus.as_str() {
            "directory" => CorpusSource::Directory(resolve(
                raw.corpus_path
                    .ok_or_else(|| invalid("corpus_path is required"))?,
            )),
            "csv" => CorpusSource::Csv {
                path: resolve(
                    raw.corpus_path
                        .ok_or_else(|| invalid("corpus_path is required"))?,
                ),
                label_column: raw.label_column.unwrap_or_else(|| "label".into()),
                text_column: raw.text_column.unwrap_or_else(|| "text".into()),
            },
            "synthetic" => {
                let d = SyntheticSpec::default();
                CorpusSource::Synthetic {
                    spec: SyntheticSpec {
                        supports: raw.synthetic_supports.unwrap_or(d.supports),
                        vocab_size: raw.synthetic_vocab_size.unwrap_or(d.vocab_size),
                        topic_words: raw.synthetic_topic_words.unwrap_or(d.topic_words),
                        doc_len: (
                            raw.synthetic_doc_len_min.unwrap_or(d.doc_len.0),
                            raw.synthetic_doc_len_max.unwrap_or(d.doc_len.1),
                        ),
                        signal: raw.synthetic_signal.unwrap_or(d.signal),
                    },
                    seed: raw.synthetic_seed.unwrap_or(7),
                }
            }
            other => return Err(invalid(format!("unknown corpus kind {other:?}"))),
        };

        if raw.models.is_empty() {
            return Err(invalid("models must not be empty"));
        }
        let default_alpha = raw.alpha.unwrap_or(DEFAULT_ALPHA);
        let mut models = Vec::with_capacity(raw.models.len());
        for name in &raw.models {
            let kind: ModelKind = name.parse()?;
            if models.iter().any(|m: &ModelSpec| m.kind == kind) {
                return Err(invalid(format!("model {name} listed twice")));
            }
            let alpha = match kind {
                ModelKind::Bernoulli => raw.alpha_bernoulli,
                ModelKind::ComplementBernoulli => raw.alpha_complement_bernoulli,
                ModelKind::Multinomial => raw.alpha_multinomial,
                ModelKind::ComplementMultinomial => raw.alpha_complement_multinomial,
            }
            .unwrap_or(default_alpha);
            if !(alpha.is_finite() && alpha >= 0.0) {
                return Err(invalid(format!("alpha for {name} must be >= 0")));
            }
            models.push(ModelSpec { kind, alpha });
        }

        let sweep = match raw.sweep.as_str() {
            "balanced_fractions" => {
                let f = raw.fractions.unwrap_or_else(default_steps);
                check_unit_interval("fractions", &f)?;
                SweepKind::BalancedFractions(f)
            }
            "ratio_scales" => {
                let ratios = raw.ratios.ok_or_else(|| invalid("ratios are required"))?;
                if ratios.is_empty() || ratios.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
                    return Err(invalid("ratios must be non-empty and positive"));
                }
                let scales = raw.scales.unwrap_or_else(default_steps);
                check_unit_interval("scales", &scales)?;
                SweepKind::RatioScales { ratios, scales }
            }
            "thresholds" => {
                let t = raw
                    .thresholds
                    .ok_or_else(|| invalid("thresholds are required"))?;
                if t.is_empty() || t.contains(&0) {
                    return Err(invalid("thresholds must be non-empty and >= 1"));
                }
                SweepKind::Thresholds(t)
            }
            other => return Err(invalid(format!("unknown sweep kind {other:?}"))),
        };

        let test_fraction = raw.test_fraction.unwrap_or(0.2);
        if !(test_fraction > 0.0 && test_fraction < 1.0) {
            return Err(invalid("test_fraction must lie in (0,1)"));
        }
        let min_doc_freq = raw.min_doc_freq.unwrap_or(1);
        if min_doc_freq == 0 {
            return Err(invalid("min_doc_freq must be >= 1"));
        }

        Ok(SweepConfig {
            source,
            models,
            sweep,
            test_fraction,
            seed: raw.seed.unwrap_or(0),
            min_doc_freq,
            complement_norm: raw.complement_norm.unwrap_or(false),
            output: raw.output.map(resolve),
            plot_prefix: raw.plot_prefix.map(resolve),
        })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_toml_str(&text, base)
    }

    /// Applies the seed override from `value` (the content of [`SEED_ENV_VAR`]).
    pub fn override_seed(&mut self, value: &str) -> Result<()> {
        self.seed = value.trim().parse().map_err(|_| {
            invalid(format!(
                "{SEED_ENV_VAR} must be an unsigned integer, got {value:?}"
            ))
        })?;
        Ok(())
    }

    /// Reads [`SEED_ENV_VAR`] from the process environment, if set.
    pub fn apply_env(&mut self) -> Result<()> {
        match std::env::var(SEED_ENV_VAR) {
            Ok(v) => self.override_seed(&v),
            Err(_) => Ok(()),
        }
    }
}
