//! Balanced support sweep on the bundled synthetic corpus.
//!
//! Every class is trained on the same fraction of its documents (10% to
//! 100%) and evaluated on a fixed held-out set. Writes `balanced.csv` and
//! plot data files into the directory given as the first argument
//! (default: the system temp directory).
//!
//! ```bash
//! cargo run -p confidex --example balanced_sweep -- out/
//! ```

use std::path::PathBuf;

use confidex::datasets::SyntheticSpec;
use confidex::experiment::{
    csv_string, default_steps, emit_csv, emit_plot_data, run_sweep, CorpusSource, ModelSpec,
    SweepConfig, SweepKind,
};
use confidex::nb::ModelKind;

fn main() -> confidex::Result<()> {
    let out_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&out_dir).expect("create output directory");

    let config = SweepConfig {
        source: CorpusSource::Synthetic {
            spec: SyntheticSpec::default(),
            seed: 7,
        },
        models: ModelKind::ALL
            .into_iter()
            .map(|kind| ModelSpec { kind, alpha: 1.0 })
            .collect(),
        sweep: SweepKind::BalancedFractions(default_steps()),
        test_fraction: 0.4,
        seed: 0,
        min_doc_freq: 1,
        complement_norm: false,
        output: None,
        plot_prefix: None,
    };

    let rows = run_sweep(&config)?;
    print!("{}", csv_string(&rows));

    emit_csv(&rows, out_dir.join("balanced.csv"))?;
    for path in emit_plot_data(&rows, out_dir.join("balanced"))? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}
