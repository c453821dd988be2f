//! Discrete probability distributions and the complement map on the simplex.
//!
//! A [`Distribution`] is a point of the standard `(n-1)`-simplex. The
//! [`complement_map`] sends each component `p_k` to a weight proportional to
//! `1 / (1 - p_k)`. It fixes the uniform distribution and every vertex, and
//! never decreases [`entropy`].

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Inputs whose sum is further than this from 1 are rejected.
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-6;

/// A component at or above `1 - VERTEX_EPSILON` marks a vertex.
pub const VERTEX_EPSILON: f64 = 1e-12;

/// A probability vector of length `n >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Box<[f64]>,
}

impl Distribution {
    /// Builds a distribution, renormalizing inputs whose sum is within
    /// [`CONSTRUCTION_TOLERANCE`] of one.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::TooFewClasses(probs.len()));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::InvalidDistribution(format!(
                "entry {i} is {p}, entries must be finite and non-negative"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > CONSTRUCTION_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, expected 1"
            )));
        }
        let probs = probs.into_iter().map(|p| p / sum).collect();
        Ok(Distribution { probs })
    }

    /// Normalizes arbitrary non-negative weights. At least one weight must be positive.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::TooFewClasses(weights.len()));
        }
        let sum: f64 = weights.iter().sum();
        if !(sum.is_finite() && sum > 0.0) || weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "weights must be finite, non-negative and not all zero (sum {sum})"
            )));
        }
        Ok(Distribution {
            probs: weights.into_iter().map(|w| w / sum).collect(),
        })
    }

    /// Normalizes log-domain scores with log-sum-exp. Scores may be `-inf`
    /// but not all of them, and none may be `+inf` or NaN.
    pub fn from_log_scores(scores: &[f64]) -> Result<Self> {
        if scores.len() < 2 {
            return Err(Error::TooFewClasses(scores.len()));
        }
        if scores.iter().any(|s| s.is_nan() || *s == f64::INFINITY) {
            return Err(Error::Model(format!("non-finite log score in {scores:?}")));
        }
        let lse = log_sum_exp(scores);
        if lse == f64::NEG_INFINITY {
            return Err(Error::DegenerateModel);
        }
        let probs: Vec<f64> = scores.iter().map(|s| (s - lse).exp()).collect();
        // exp rounding leaves the sum within a few ulps of one
        let sum: f64 = probs.iter().sum();
        Ok(Distribution {
            probs: probs.into_iter().map(|p| p / sum).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    /// Index of the largest entry, lowest index on ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate().skip(1) {
            if p > self.probs[best] {
                best = i;
            }
        }
        best
    }

    /// The vertex index if this distribution sits on a vertex.
    pub fn vertex_index(&self) -> Option<usize> {
        self.probs.iter().position(|&p| p >= 1.0 - VERTEX_EPSILON)
    }

    pub fn is_vertex(&self) -> bool {
        self.vertex_index().is_some()
    }
}

impl Index<usize> for Distribution {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.probs[k]
    }
}

impl AsRef<[f64]> for Distribution {
    fn as_ref(&self) -> &[f64] {
        &self.probs
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.probs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match f.precision() {
                Some(prec) => write!(f, "{p:.prec$}")?,
                None => write!(f, "{p}")?,
            }
        }
        Ok(())
    }
}

/// Shannon entropy in nats, with `0 ln 0 = 0`.
pub fn entropy(p: &Distribution) -> f64 {
    let h: f64 = p
        .as_slice()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .sum();
    // also turns the -0.0 left by vertices into 0.0
    if h > 0.0 {
        h.min((p.len() as f64).ln())
    } else {
        0.0
    }
}

/// The complement map `q_k = (1/(1-p_k)) / sum_j 1/(1-p_j)`.
///
/// Vertices are returned unchanged. On two classes the map is the identity.
pub fn complement_map(p: &Distribution) -> Distribution {
    if p.is_vertex() {
        return p.clone();
    }
    let weights: Vec<f64> = p.as_slice().iter().map(|&x| 1.0 / (1.0 - x)).collect();
    let total: f64 = weights.iter().sum();
    Distribution {
        probs: weights.into_iter().map(|w| w / total).collect(),
    }
}

/// The uniform distribution on `n` classes.
pub fn uniform(n: usize) -> Result<Distribution> {
    if n < 2 {
        return Err(Error::TooFewClasses(n));
    }
    Ok(Distribution {
        probs: vec![1.0 / n as f64; n].into_boxed_slice(),
    })
}

/// The one-hot distribution at class `k`.
pub fn vertex(n: usize, k: usize) -> Result<Distribution> {
    if n < 2 {
        return Err(Error::TooFewClasses(n));
    }
    if k >= n {
        return Err(Error::ClassOutOfRange { index: k, n });
    }
    let mut probs = vec![0.0; n];
    probs[k] = 1.0;
    Ok(Distribution {
        probs: probs.into_boxed_slice(),
    })
}

/// `ln(sum exp(x))` without overflow. Returns `-inf` for an empty slice or
/// when every entry is `-inf`.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Euclidean distance between two distributions of equal length.
pub fn euclidean_distance(a: &Distribution, b: &Distribution) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
