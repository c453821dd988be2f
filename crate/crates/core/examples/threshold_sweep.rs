//! Support-threshold sweep: classes under the threshold are dropped, so the
//! number of classes shrinks as the threshold rises.
//!
//! ```bash
//! cargo run -p confidex --example threshold_sweep
//! ```

use confidex::datasets::SyntheticSpec;
use confidex::experiment::{run_sweep, CorpusSource, ModelSpec, SweepConfig, SweepKind};
use confidex::nb::ModelKind;

fn main() -> confidex::Result<()> {
    let spec = SyntheticSpec {
        supports: vec![600, 450, 320, 240, 160, 100],
        vocab_size: 900,
        ..SyntheticSpec::default()
    };
    let config = SweepConfig {
        source: CorpusSource::Synthetic { spec, seed: 21 },
        models: [ModelKind::Multinomial, ModelKind::ComplementMultinomial]
            .into_iter()
            .map(|kind| ModelSpec { kind, alpha: 1.0 })
            .collect(),
        sweep: SweepKind::Thresholds(vec![50, 100, 150, 200, 300]),
        test_fraction: 0.3,
        seed: 0,
        min_doc_freq: 2,
        complement_norm: false,
        output: None,
        plot_prefix: None,
    };
    println!(
        "{:<24} {:>9} {:>3} {:>8} {:>8} {:>8}",
        "model", "threshold", "n", "acc", "entropy", "purity"
    );
    for r in run_sweep(&config)? {
        println!(
            "{:<24} {:>9} {:>3} {:>8.4} {:>8.4} {:>8.4}",
            r.model.name(),
            r.sweep_param,
            r.n_classes,
            r.accuracy,
            r.entropy_score,
            r.purity
        );
    }
    Ok(())
}
