//! Unbalanced sweep: class supports held at a 10:5:2 ratio while the total
//! training size grows.
//!
//! ```bash
//! cargo run -p confidex --example unbalanced_sweep
//! ```

use confidex::datasets::SyntheticSpec;
use confidex::experiment::{
    csv_string, default_steps, run_sweep, CorpusSource, ModelSpec, SweepConfig, SweepKind,
};
use confidex::nb::ModelKind;

fn main() -> confidex::Result<()> {
    let config = SweepConfig {
        source: CorpusSource::Synthetic {
            spec: SyntheticSpec::default(),
            seed: 7,
        },
        models: ModelKind::ALL
            .into_iter()
            .map(|kind| ModelSpec { kind, alpha: 1.0 })
            .collect(),
        sweep: SweepKind::RatioScales {
            ratios: vec![10.0, 5.0, 2.0],
            scales: default_steps(),
        },
        test_fraction: 0.4,
        seed: 0,
        min_doc_freq: 1,
        complement_norm: false,
        output: None,
        plot_prefix: None,
    };
    print!("{}", csv_string(&run_sweep(&config)?));
    Ok(())
}
