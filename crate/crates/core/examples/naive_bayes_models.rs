//! Fits the four Naive Bayes variants on a tiny corpus and compares their
//! posteriors for the same inputs.
//!
//! ```bash
//! cargo run -p confidex --example naive_bayes_models
//! ```

use confidex::nb::{FeatureMatrix, FitOptions, Model, ModelKind, SparseRow};
use confidex::simplex::entropy;

fn main() -> confidex::Result<()> {
    // word counts over a 4-word vocabulary; class 0 is the largest
    let rows = [
        vec![3, 1, 0, 0],
        vec![2, 0, 1, 0],
        vec![4, 1, 0, 1],
        vec![1, 2, 0, 0],
        vec![0, 3, 1, 0],
        vec![1, 2, 0, 1],
        vec![0, 0, 2, 3],
        vec![0, 1, 1, 2],
    ];
    let labels = vec![0, 0, 0, 0, 1, 1, 2, 2];
    let data = FeatureMatrix::from_dense(&rows, labels, 3)?;
    let inputs = [vec![1, 0, 0, 0], vec![0, 1, 0, 1], vec![2, 2, 1, 1]];

    for kind in ModelKind::ALL {
        let model = Model::fit(kind, &data, 1.0, FitOptions::default())?;
        println!("{kind}");
        for x in &inputs {
            let p = model.predict_features(&SparseRow::from_dense(x))?;
            println!("  {x:?} -> {p:.4}  H = {:.4}", entropy(&p));
        }
    }
    Ok(())
}
