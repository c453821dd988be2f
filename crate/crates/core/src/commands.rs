//! Operations behind the `confidex` subcommands, kept here so they can be
//! called and tested without spawning the binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::datasets::{load_csv_corpus, load_directory_corpus, LabeledCorpus};
use crate::error::{Error, Result};
use crate::experiment::{
    confidence_flags, emit_csv, emit_plot_data, featurize, predict_records, run_sweep, SweepConfig,
    SweepRow,
};
use crate::metrics::{MetricSummary, ProbConfusionMatrix};
use crate::nb::{FitOptions, Model, ModelDocument, ModelKind};
use crate::simplex::{complement_map, Distribution};
use crate::text::{build_vocabulary, tokenize, TokenizedDoc, Vocabulary};

/// Formats `x` with `digits` significant digits, trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = digits as i64 - 1 - magnitude;
    let s = if (0..=40).contains(&decimals) {
        format!("{:.*}", decimals as usize, x)
    } else if decimals < 0 {
        format!("{:.0}", x)
    } else {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    };
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Parses a comma-separated list of decimals into a distribution.
pub fn parse_distribution(input: &str) -> Result<Distribution> {
    let values = input
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidDistribution(format!("cannot parse {s:?} as a number")))
        })
        .collect::<Result<Vec<_>>>()?;
    Distribution::new(values)
}

pub fn format_distribution(p: &Distribution) -> String {
    p.as_slice()
        .iter()
        .map(|&v| format_significant(v, 12))
        .collect::<Vec<_>>()
        .join(",")
}

/// Applies the complement map to a comma-separated distribution.
pub fn map_distribution(input: &str) -> Result<String> {
    Ok(format_distribution(&complement_map(&parse_distribution(
        input,
    )?)))
}

/// Where a labelled corpus comes from on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSource {
    Directory(PathBuf),
    Csv {
        path: PathBuf,
        label_column: String,
        text_column: String,
    },
}

impl DataSource {
    /// A directory is read as `<root>/<class>/<doc>`, anything else as CSV.
    pub fn detect(path: impl Into<PathBuf>, label_column: &str, text_column: &str) -> Self {
        let path = path.into();
        if path.is_dir() {
            DataSource::Directory(path)
        } else {
            DataSource::Csv {
                path,
                label_column: label_column.to_string(),
                text_column: text_column.to_string(),
            }
        }
    }

    pub fn load(&self) -> Result<LabeledCorpus> {
        match self {
            DataSource::Directory(p) => load_directory_corpus(p),
            DataSource::Csv {
                path,
                label_column,
                text_column,
            } => load_csv_corpus(path, label_column, text_column),
        }
    }
}

/// Fits one model on a whole corpus and packages it with its vocabulary and class names.
pub fn fit_model(
    kind: ModelKind,
    alpha: f64,
    corpus: &LabeledCorpus,
    min_doc_freq: usize,
    opts: FitOptions,
) -> Result<ModelDocument> {
    let tokens: Vec<TokenizedDoc> = corpus.documents().iter().map(|d| tokenize(d)).collect();
    let vocab = build_vocabulary(&tokens, min_doc_freq)?;
    let data = featurize(corpus, &vocab)?;
    let model = Model::fit(kind, &data, alpha, opts)?;
    Ok(ModelDocument::from_model(&model)
        .with_metadata(corpus.class_names().to_vec(), vocab.tokens().to_vec()))
}

#[derive(Debug, Clone)]
pub struct EvalReport {
    pub n_docs: usize,
    pub class_names: Vec<String>,
    pub summary: MetricSummary,
    pub confusion: Option<ProbConfusionMatrix>,
}

impl EvalReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "documents: {}", self.n_docs);
        let _ = writeln!(out, "classes: {}", self.class_names.len());
        let _ = writeln!(out, "accuracy: {:.6}", self.summary.accuracy);
        let _ = writeln!(out, "entropy_score: {:.6}", self.summary.entropy_score);
        let _ = writeln!(out, "purity: {:.6}", self.summary.purity);
        if let Some(m) = &self.confusion {
            let _ = writeln!(out, "probabilistic_confusion_matrix:");
            for row in m.rows() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:.6}")).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        out
    }
}

/// Evaluates a saved model on a corpus. Corpus classes are matched to the
/// model's class names; the model must carry its vocabulary.
pub fn eval_model(
    doc: &ModelDocument,
    corpus: &LabeledCorpus,
    confusion: bool,
) -> Result<EvalReport> {
    let model = doc.to_model()?;
    if doc.vocabulary.is_empty() {
        return Err(Error::Data("model file carries no vocabulary".into()));
    }
    let vocab = Vocabulary::from_tokens(doc.vocabulary.iter().cloned())?;
    if vocab.tokens() != doc.vocabulary.as_slice() {
        return Err(Error::Data(
            "model vocabulary is not in sorted order".into(),
        ));
    }
    let class_names = if doc.class_names.is_empty() {
        if corpus.n_classes() != doc.n_classes {
            return Err(Error::DimensionMismatch {
                expected: doc.n_classes,
                got: corpus.n_classes(),
            });
        }
        corpus.class_names().to_vec()
    } else {
        doc.class_names.clone()
    };
    let mut mapping = Vec::with_capacity(corpus.n_classes());
    for name in corpus.class_names() {
        let idx = class_names
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Data(format!("class {name:?} is not known to the model")))?;
        mapping.push(idx);
    }
    let relabeled = LabeledCorpus::new(
        corpus.documents().to_vec(),
        corpus.labels().iter().map(|&l| mapping[l]).collect(),
        class_names.clone(),
    )?;
    let data = featurize(&relabeled, &vocab)?;
    let records = predict_records(&model, &data)?;
    let summary = MetricSummary::compute(&records, doc.n_classes)?;
    let confusion = if confusion {
        Some(ProbConfusionMatrix::from_records(&records, doc.n_classes)?)
    } else {
        None
    };
    Ok(EvalReport {
        n_docs: records.len(),
        class_names,
        summary,
        confusion,
    })
}

/// Output of a sweep run: the rows, files written, and confidence flags.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub csv: Option<PathBuf>,
    pub plot_files: Vec<PathBuf>,
    pub flags: Vec<String>,
}

/// Runs a sweep and writes the configured outputs.
pub fn sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    let rows = run_sweep(config)?;
    if let Some(p) = &config.output {
        emit_csv(&rows, p)?;
    }
    let plot_files = match &config.plot_prefix {
        Some(prefix) => emit_plot_data(&rows, prefix)?,
        None => Vec::new(),
    };
    let flags = confidence_flags(&rows);
    Ok(SweepOutcome {
        rows,
        csv: config.output.clone(),
        plot_files,
        flags,
    })
}

/// Loads a config file and applies the seed environment override.
pub fn load_config(path: &Path) -> Result<SweepConfig> {
    let mut config = SweepConfig::from_file(path)?;
    config.apply_env()?;
    Ok(config)
}
