//! Batch evaluation metrics: entropy score, probabilistic confusion matrix,
//! purity, argmax accuracy and the ordinary count confusion matrix.

use crate::error::{Error, Result};
use crate::simplex::{entropy, Distribution};

/// A true class paired with the predicted distribution for one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRecord {
    pub true_class: usize,
    pub predicted: Distribution,
}

impl PredictionRecord {
    pub fn new(true_class: usize, predicted: Distribution) -> Result<Self> {
        if true_class >= predicted.len() {
            return Err(Error::ClassOutOfRange {
                index: true_class,
                n: predicted.len(),
            });
        }
        Ok(PredictionRecord {
            true_class,
            predicted,
        })
    }

    pub fn is_correct(&self) -> bool {
        self.predicted.argmax() == self.true_class
    }
}

/// Checks a non-empty batch shares one class count and returns it.
fn batch_classes(records: &[PredictionRecord]) -> Result<usize> {
    let first = records.first().ok_or(Error::EmptyBatch)?;
    let n = first.predicted.len();
    for r in records {
        if r.predicted.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.predicted.len(),
            });
        }
        if r.true_class >= n {
            return Err(Error::ClassOutOfRange {
                index: r.true_class,
                n,
            });
        }
    }
    Ok(n)
}

/// `1 - mean(H[p]) / ln n` over the batch.
pub fn entropy_score(records: &[PredictionRecord]) -> Result<f64> {
    let n = batch_classes(records)?;
    if n < 2 {
        return Err(Error::TooFewClasses(n));
    }
    let mean = records.iter().map(|r| entropy(&r.predicted)).sum::<f64>() / records.len() as f64;
    Ok((1.0 - mean / (n as f64).ln()).clamp(0.0, 1.0))
}

/// Fraction of records whose argmax matches the true class.
pub fn accuracy(records: &[PredictionRecord]) -> Result<f64> {
    batch_classes(records)?;
    let hits = records.iter().filter(|r| r.is_correct()).count();
    Ok(hits as f64 / records.len() as f64)
}

/// Row-stochastic `n x n` matrix: row `i` is the mean predicted distribution
/// over samples of true class `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbConfusionMatrix {
    n: usize,
    entries: Vec<f64>,
    class_counts: Vec<usize>,
}

/// Row sums must be within this of one.
pub const ROW_TOLERANCE: f64 = 1e-9;

impl ProbConfusionMatrix {
    /// Builds the matrix from a batch. Every class in `0..n` needs at least one record.
    pub fn from_records(records: &[PredictionRecord], n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewClasses(n));
        }
        let mut entries = vec![0.0; n * n];
        let mut class_counts = vec![0usize; n];
        for r in records {
            if r.predicted.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.predicted.len(),
                });
            }
            if r.true_class >= n {
                return Err(Error::ClassOutOfRange {
                    index: r.true_class,
                    n,
                });
            }
            let row = &mut entries[r.true_class * n..(r.true_class + 1) * n];
            for (e, p) in row.iter_mut().zip(r.predicted.as_slice()) {
                *e += p;
            }
            class_counts[r.true_class] += 1;
        }
        if let Some(missing) = class_counts.iter().position(|&c| c == 0) {
            return Err(Error::MissingClass(missing));
        }
        for (i, &count) in class_counts.iter().enumerate() {
            for e in &mut entries[i * n..(i + 1) * n] {
                *e /= count as f64;
            }
        }
        Ok(ProbConfusionMatrix {
            n,
            entries,
            class_counts,
        })
    }

    /// Builds a matrix from explicit rows, checking it is row-stochastic.
    /// Class counts are set to one per row.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::TooFewClasses(n));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if row.iter().any(|x| !(0.0..=1.0).contains(x)) {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has entries outside [0,1]"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_TOLERANCE {
                return Err(Error::InvalidMatrix(format!("row {i} sums to {sum}")));
            }
            entries.extend_from_slice(row);
        }
        Ok(ProbConfusionMatrix {
            n,
            entries,
            class_counts: vec![1; n],
        })
    }

    pub fn n_classes(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.n)
    }

    pub fn class_counts(&self) -> &[usize] {
        &self.class_counts
    }

    /// Frobenius norm of `P - I`.
    pub fn distance_to_identity(&self) -> f64 {
        let mut sq = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let d = self.get(i, j) - if i == j { 1.0 } else { 0.0 };
                sq += d * d;
            }
        }
        sq.sqrt()
    }
}

/// `1 - ||P - I||_F / sqrt(2n)`.
pub fn purity(p: &ProbConfusionMatrix) -> f64 {
    let scale = (2.0 * p.n as f64).sqrt();
    (1.0 - p.distance_to_identity() / scale).clamp(0.0, 1.0)
}

/// Count confusion matrix indexed `[true][argmax]`. An empty batch yields zeros.
pub fn hard_confusion_matrix(records: &[PredictionRecord], n: usize) -> Result<Vec<Vec<usize>>> {
    let mut counts = vec![vec![0usize; n]; n];
    for r in records {
        if r.predicted.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.predicted.len(),
            });
        }
        if r.true_class >= n {
            return Err(Error::ClassOutOfRange {
                index: r.true_class,
                n,
            });
        }
        counts[r.true_class][r.predicted.argmax()] += 1;
    }
    Ok(counts)
}

/// The three headline numbers for one evaluation batch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSummary {
    pub accuracy: f64,
    pub entropy_score: f64,
    pub purity: f64,
}

impl MetricSummary {
    pub fn compute(records: &[PredictionRecord], n: usize) -> Result<Self> {
        let matrix = ProbConfusionMatrix::from_records(records, n)?;
        Ok(MetricSummary {
            accuracy: accuracy(records)?,
            entropy_score: entropy_score(records)?,
            purity: purity(&matrix),
        })
    }
}
