//! Sweep harness reproducing accuracy versus confidence curves.
//!
//! A sweep splits a fixed test set off the corpus, then for every sweep
//! point derives a training set (balanced fraction, fixed-ratio scale, or
//! support threshold), fits each configured model and records accuracy,
//! entropy score and purity on the test set.

mod config;
mod output;
mod sweep;

pub use config::{default_steps, CorpusSource, ModelSpec, SweepConfig, SweepKind, SEED_ENV_VAR};
pub use output::{csv_string, emit_csv, emit_plot_data, plot_path, CSV_HEADER, PLOT_METRICS};
pub use sweep::{
    confidence_flags, evaluate, evaluate_point, featurize, load_corpus, predict_records, run_sweep,
    run_sweep_on, SweepRow,
};
