//! Entropy score and purity on hand-built prediction batches.
//!
//! ```bash
//! cargo run -p confidex --example entropy_and_purity
//! ```

use confidex::metrics::{MetricSummary, PredictionRecord, ProbConfusionMatrix};
use confidex::simplex::{uniform, vertex, Distribution};
use confidex::{entropy_score, purity};

fn record(class: usize, probs: Vec<f64>) -> confidex::Result<PredictionRecord> {
    PredictionRecord::new(class, Distribution::new(probs)?)
}

fn main() -> confidex::Result<()> {
    let confident: Vec<_> = (0..3)
        .map(|c| PredictionRecord::new(c, vertex(3, c)?))
        .collect::<confidex::Result<_>>()?;
    let unsure: Vec<_> = (0..3)
        .map(|c| PredictionRecord::new(c, uniform(3)?))
        .collect::<confidex::Result<_>>()?;
    println!(
        "all vertices: entropy score {:.3}",
        entropy_score(&confident)?
    );
    println!("all uniform:  entropy score {:.3}", entropy_score(&unsure)?);

    let mixed = vec![
        record(0, vec![0.8, 0.1, 0.1])?,
        record(0, vec![0.6, 0.3, 0.1])?,
        record(1, vec![0.2, 0.7, 0.1])?,
        record(1, vec![0.4, 0.5, 0.1])?,
        record(2, vec![0.3, 0.3, 0.4])?,
    ];
    let m = ProbConfusionMatrix::from_records(&mixed, 3)?;
    println!("\nprobabilistic confusion matrix:");
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.3}")).collect();
        println!("  {}", cells.join("  "));
    }
    let s = MetricSummary::compute(&mixed, 3)?;
    println!(
        "accuracy {:.3}, entropy score {:.3}, purity {:.3}",
        s.accuracy, s.entropy_score, s.purity
    );

    for n in [2, 5, 10, 50] {
        let flat = ProbConfusionMatrix::from_rows(&vec![vec![1.0 / n as f64; n]; n])?;
        println!("purity of the all-1/{n} matrix: {:.6}", purity(&flat));
    }
    Ok(())
}
