//! Fits a model on a generated corpus, saves it as JSON, loads it back and
//! evaluates it on a held-out split.
//!
//! ```bash
//! cargo run -p confidex --example model_roundtrip
//! ```

use confidex::commands::{eval_model, fit_model};
use confidex::datasets::{synthetic_corpus, train_test_split, SyntheticSpec};
use confidex::nb::{FitOptions, ModelDocument, ModelKind};

fn main() -> confidex::Result<()> {
    let spec = SyntheticSpec {
        supports: vec![300, 200, 100],
        ..SyntheticSpec::default()
    };
    let corpus = synthetic_corpus(&spec, 5)?;
    let (train, test) = train_test_split(&corpus, 0.25, 5)?;

    let path = std::env::temp_dir().join("confidex_roundtrip_model.json");
    let doc = fit_model(
        ModelKind::ComplementBernoulli,
        1.0,
        &train,
        1,
        FitOptions::default(),
    )?;
    doc.save(&path)?;
    println!(
        "saved {} ({} words, {} classes)",
        path.display(),
        doc.vocab_size,
        doc.n_classes
    );

    let loaded = ModelDocument::load(&path)?;
    assert_eq!(loaded, doc);
    print!("{}", eval_model(&loaded, &test, true)?.render());
    Ok(())
}
