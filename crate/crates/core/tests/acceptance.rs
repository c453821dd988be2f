//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any fails.
//!
//! ```bash
//! cargo test -p confidex --test acceptance
//! ```

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use confidex::datasets::SyntheticSpec;
use confidex::experiment::{
    csv_string, default_steps, emit_csv, run_sweep, CorpusSource, ModelSpec, SweepConfig,
    SweepKind, SweepRow,
};
use confidex::metrics::{entropy_score, purity, PredictionRecord, ProbConfusionMatrix};
use confidex::nb::{
    BernoulliNB, Classifier, ComplementBernoulliNB, ComplementMultinomialNB, FeatureMatrix,
    ModelKind, MultinomialNB, SparseRow,
};
use confidex::simplex::{complement_map, entropy, uniform, vertex, Distribution};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// Random points, with some drawn on faces of the simplex and near vertices.
fn test_point(rng: &mut ChaCha8Rng, n: usize, i: usize) -> Distribution {
    let mut p = random_simplex(rng, n);
    match i % 5 {
        0 => {
            let zeros = rng.gen_range(1..n);
            p[..zeros].fill(0.0);
        }
        1 => {
            let k = rng.gen_range(0..n);
            let eps = 10f64.powi(-rng.gen_range(3..15));
            for (j, v) in p.iter_mut().enumerate() {
                *v = if j == k { 1.0 } else { *v * eps };
            }
        }
        _ => {}
    }
    Distribution::from_weights(p).expect("valid point")
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for n in 3..=20 {
        for i in 0..10_000 {
            let p = test_point(&mut rng, n, i);
            let gap = entropy(&complement_map(&p)) - entropy(&p);
            worst = worst.min(gap);
            if gap < -1e-12 {
                violations += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if violations > 0 {
        return Err(format!("{violations} violations, worst gap {worst:e}"));
    }
    if elapsed > Duration::from_secs(5) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "180000 points, 0 violations, worst gap {worst:e}, {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=20 {
        let u = uniform(n).unwrap();
        worst = worst.max(max_abs_diff(complement_map(&u).as_slice(), u.as_slice()));
        for k in 0..n {
            let v = vertex(n, k).unwrap();
            worst = worst.max(max_abs_diff(complement_map(&v).as_slice(), v.as_slice()));
        }
    }
    if worst > 1e-12 {
        return Err(format!("max deviation {worst:e}"));
    }
    Ok(format!(
        "uniform and all vertices for n=2..20, max deviation {worst:e}"
    ))
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 3..=10 {
        let mut p = vec![0.0; n];
        p[0] = 0.5;
        p[1] = 0.5;
        let q = complement_map(&Distribution::new(p).unwrap());
        let d = (n + 2) as f64;
        let mut expected = vec![1.0 / d; n];
        expected[0] = 2.0 / d;
        expected[1] = 2.0 / d;
        worst = worst.max(max_abs_diff(q.as_slice(), &expected));
    }
    if worst > 1e-12 {
        return Err(format!("max deviation {worst:e}"));
    }
    Ok(format!("n=3..10, max deviation {worst:e}"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a: f64 = rng.gen();
        let p = Distribution::new(vec![a, 1.0 - a]).unwrap();
        worst = worst.max(max_abs_diff(complement_map(&p).as_slice(), p.as_slice()));
    }
    if worst > 1e-12 {
        return Err(format!("max deviation {worst:e}"));
    }
    Ok(format!("1000 points, max deviation {worst:e}"))
}

fn permutation_rows(n: usize, shift: usize, weight: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            row[i] += 1.0 - weight;
            row[(i + shift) % n] += weight;
            row
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=20 {
        let cases = [(0.0, 1.0), (1.0, 0.0), (0.5, 0.5)];
        for (weight, expected) in cases {
            let m = ProbConfusionMatrix::from_rows(&permutation_rows(n, 1, weight)).unwrap();
            worst = worst.max((purity(&m) - expected).abs());
        }
    }
    if worst > 1e-12 {
        return Err(format!("edge case deviation {worst:e}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..10_000 {
        let n = 2 + i % 9;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    let mut v = vec![0.0; n];
                    v[rng.gen_range(0..n)] = 1.0;
                    v
                } else {
                    random_simplex(&mut rng, n)
                }
            })
            .collect();
        let p = purity(&ProbConfusionMatrix::from_rows(&rows).unwrap());
        if !(0.0..=1.0).contains(&p) {
            return Err(format!("purity {p} outside [0,1] for n={n}"));
        }
    }
    Ok(format!(
        "I, sigma_1, (I+sigma_1)/2 for n=2..20 (max deviation {worst:e}); 10000 random matrices in [0,1]"
    ))
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=10 {
        let rows = vec![vec![1.0 / n as f64; n]; n];
        let mut sq = 0.0;
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let d = v - if i == j { 1.0 } else { 0.0 };
                sq += d * d;
            }
        }
        let oracle = 1.0 - sq.sqrt() / (2.0 * n as f64).sqrt();
        let closed = 1.0 - ((n - 1) as f64 / (2 * n) as f64).sqrt();
        let got = purity(&ProbConfusionMatrix::from_rows(&rows).unwrap());
        worst = worst.max((got - oracle).abs()).max((oracle - closed).abs());
    }
    if worst > 1e-12 {
        return Err(format!("max deviation {worst:e}"));
    }
    Ok(format!(
        "all-1/n matrix matches 1 - sqrt((n-1)/(2n)) for n=2..10, max deviation {worst:e}"
    ))
}

/// Raw per-class statistics of a toy corpus, counted directly from the docs.
struct Counts {
    n: usize,
    m: usize,
    docs: Vec<(usize, Vec<u32>)>,
}

impl Counts {
    fn class_docs(&self, c: usize) -> f64 {
        self.docs.iter().filter(|(l, _)| *l == c).count() as f64
    }

    fn word_docs(&self, mu: usize, c: usize) -> f64 {
        self.docs
            .iter()
            .filter(|(l, x)| *l == c && x[mu] > 0)
            .count() as f64
    }

    fn word_docs_outside(&self, mu: usize, c: usize) -> f64 {
        self.docs
            .iter()
            .filter(|(l, x)| *l != c && x[mu] > 0)
            .count() as f64
    }

    fn class_words(&self, c: usize) -> f64 {
        self.docs
            .iter()
            .filter(|(l, _)| *l == c)
            .map(|(_, x)| x.iter().sum::<u32>() as f64)
            .sum()
    }

    fn words_outside(&self, c: usize) -> f64 {
        self.docs
            .iter()
            .filter(|(l, _)| *l != c)
            .map(|(_, x)| x.iter().sum::<u32>() as f64)
            .sum()
    }
}

/// Unnormalized direct-probability class scores, or `None` where the model
/// is undefined for this corpus and alpha.
fn oracle_scores(kind: ModelKind, k: &Counts, alpha: f64, x: &[u32]) -> Option<Vec<f64>> {
    let total = k.docs.len() as f64;
    let m = k.m as f64;
    let mut scores = Vec::with_capacity(k.n);
    for c in 0..k.n {
        let nc = k.class_docs(c);
        let mut s = match kind {
            ModelKind::ComplementBernoulli => total / (total - nc),
            _ => nc / total,
        };
        for mu in 0..k.m {
            let present = x[mu] > 0;
            match kind {
                ModelKind::Bernoulli => {
                    let phi = (k.word_docs(mu, c) + alpha) / (nc + 2.0 * alpha);
                    s *= if present { phi } else { 1.0 - phi };
                }
                ModelKind::ComplementBernoulli => {
                    let out = k.word_docs_outside(mu, c) + alpha;
                    if out == 0.0 {
                        return None;
                    }
                    if present {
                        s *= (total - nc + 2.0 * alpha) / out;
                    }
                }
                ModelKind::Multinomial => {
                    let denom = k.class_words(c) + alpha * m;
                    let seen: f64 = (0..k.n).map(|d| k.word_docs(mu, d)).sum();
                    if denom == 0.0 || seen + alpha == 0.0 {
                        return None;
                    }
                    let theta = (k.word_docs(mu, c) + alpha) / denom;
                    s *= theta.powi(x[mu] as i32);
                }
                ModelKind::ComplementMultinomial => {
                    let out = k.word_docs_outside(mu, c) + alpha;
                    if out == 0.0 {
                        return None;
                    }
                    let theta_hat = out / (k.words_outside(c) + alpha * m);
                    s /= theta_hat.powi(x[mu] as i32);
                }
            }
        }
        scores.push(s);
    }
    Some(scores)
}

fn fit_kind(
    kind: ModelKind,
    data: &FeatureMatrix,
    alpha: f64,
) -> confidex::Result<Box<dyn Classifier>> {
    Ok(match kind {
        ModelKind::Bernoulli => Box::new(BernoulliNB::fit(data, alpha)?),
        ModelKind::ComplementBernoulli => Box::new(ComplementBernoulliNB::fit(data, alpha)?),
        ModelKind::Multinomial => Box::new(MultinomialNB::fit(data, alpha)?),
        ModelKind::ComplementMultinomial => Box::new(ComplementMultinomialNB::fit(data, alpha)?),
    })
}

/// All multisets of `size` items drawn from `0..items`, as sorted index lists.
fn multisets(items: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(
        start: usize,
        items: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..items {
            cur.push(i);
            go(i, items, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, items, size, &mut Vec::new(), &mut out);
    out
}

fn pattern(bits: usize, m: usize) -> Vec<u32> {
    (0..m).map(|mu| ((bits >> mu) & 1) as u32).collect()
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut corpora = 0usize;
    let mut checked = 0usize;
    let mut worst: f64 = 0.0;
    for n in 2..=3 {
        for m in 1..=3 {
            let patterns = 1usize << m;
            let tests: Vec<Vec<u32>> = (0..patterns).map(|b| pattern(b, m)).collect();
            for size in n..=4 {
                for set in multisets(n * patterns, size) {
                    let docs: Vec<(usize, Vec<u32>)> = set
                        .iter()
                        .map(|&i| (i / patterns, pattern(i % patterns, m)))
                        .collect();
                    if (0..n).any(|c| docs.iter().all(|(l, _)| *l != c)) {
                        continue;
                    }
                    corpora += 1;
                    let rows: Vec<Vec<u32>> = docs.iter().map(|(_, x)| x.clone()).collect();
                    let labels: Vec<usize> = docs.iter().map(|(l, _)| *l).collect();
                    let data = FeatureMatrix::from_dense(&rows, labels, n).unwrap();
                    let counts = Counts { n, m, docs };
                    for kind in ModelKind::ALL {
                        for alpha in [0.0, 1.0] {
                            let defined = oracle_scores(kind, &counts, alpha, &tests[0]).is_some();
                            let model = match (fit_kind(kind, &data, alpha), defined) {
                                (Ok(model), true) => model,
                                (Err(_), false) => continue,
                                (Ok(_), false) => {
                                    return Err(format!(
                                        "{kind} alpha={alpha} fit on undefined corpus {set:?}"
                                    ))
                                }
                                (Err(e), true) => {
                                    return Err(format!(
                                        "{kind} alpha={alpha} failed on {set:?}: {e}"
                                    ))
                                }
                            };
                            for x in &tests {
                                let scores = oracle_scores(kind, &counts, alpha, x).unwrap();
                                let z: f64 = scores.iter().sum();
                                let got = model.predict(&SparseRow::from_dense(x));
                                match (got, z > 0.0) {
                                    (Ok(p), true) => {
                                        let expected: Vec<f64> = scores.iter().map(|s| s / z).collect();
                                        let d = max_abs_diff(p.as_slice(), &expected);
                                        worst = worst.max(d);
                                        if d > 1e-10 {
                                            return Err(format!(
                                                "{kind} alpha={alpha} corpus {set:?} x={x:?}: {:?} vs {expected:?}",
                                                p.as_slice()
                                            ));
                                        }
                                    }
                                    (Err(_), false) => {}
                                    (Ok(p), false) => {
                                        return Err(format!(
                                            "{kind} alpha={alpha} corpus {set:?} x={x:?}: expected error, got {p}"
                                        ))
                                    }
                                    (Err(e), true) => {
                                        return Err(format!("{kind} alpha={alpha} corpus {set:?} x={x:?}: {e}"))
                                    }
                                }
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{corpora} corpora, {checked} posteriors, max deviation {worst:e}, {elapsed:.2?}"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..500 {
        let n = rng.gen_range(2..=4);
        let m = rng.gen_range(1..=5);
        let docs = rng.gen_range(n..=12);
        let mut labels: Vec<usize> = (0..docs)
            .map(|i| if i < n { i } else { rng.gen_range(0..n) })
            .collect();
        labels.sort_unstable();
        let rows: Vec<Vec<u32>> = (0..docs)
            .map(|_| (0..m).map(|_| rng.gen_range(0..=1)).collect())
            .collect();
        let data = FeatureMatrix::from_dense(&rows, labels.clone(), n).unwrap();
        let model = BernoulliNB::fit(&data, 0.0).map_err(|e| e.to_string())?;
        for c in 0..n {
            let nc = labels.iter().filter(|&&l| l == c).count();
            if model.psi()[c] != nc as f64 / docs as f64 {
                return Err(format!("trial {trial}: psi[{c}] = {}", model.psi()[c]));
            }
            for mu in 0..m {
                let nmuc = (0..docs)
                    .filter(|&d| labels[d] == c && rows[d][mu] == 1)
                    .count();
                if model.phi(mu, c) != nmuc as f64 / nc as f64 {
                    return Err(format!(
                        "trial {trial}: phi[{mu}][{c}] = {}",
                        model.phi(mu, c)
                    ));
                }
            }
        }
    }
    let four = FeatureMatrix::from_dense(
        &[vec![1, 0], vec![1, 1], vec![0, 1], vec![0, 0]],
        vec![0, 0, 1, 1],
        2,
    )
    .unwrap();
    let model = BernoulliNB::fit(&four, 0.0).map_err(|e| e.to_string())?;
    if model.phi_matrix() != [1.0, 0.0, 0.5, 0.5] || model.psi() != [0.5, 0.5] {
        return Err("hand-counted four-document corpus mismatch".into());
    }
    Ok("500 random toy corpora plus the hand-counted corpus, exact equality".into())
}

fn sweep_config() -> SweepConfig {
    SweepConfig {
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
    }
}

fn model_rows(rows: &[SweepRow], kind: ModelKind) -> Vec<&SweepRow> {
    rows.iter().filter(|r| r.model == kind).collect()
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let config = sweep_config();
    let rows = run_sweep(&config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let mut below = 0;
    let mut points = 0;
    for kind in [
        ModelKind::ComplementBernoulli,
        ModelKind::ComplementMultinomial,
    ] {
        let comp = model_rows(&rows, kind);
        let base = model_rows(&rows, kind.base());
        for (c, b) in comp.iter().zip(&base) {
            points += 1;
            if c.entropy_score < b.entropy_score {
                below += 1;
            }
        }
    }
    let mut rising = 0;
    let mut steps = 0;
    for kind in ModelKind::ALL {
        let r = model_rows(&rows, kind);
        for w in r.windows(2) {
            steps += 1;
            if w[1].accuracy >= w[0].accuracy {
                rising += 1;
            }
        }
    }
    let below_frac = below as f64 / points as f64;
    let rising_frac = rising as f64 / steps as f64;
    let summary = format!(
        "complement below base at {below}/{points} points, accuracy non-decreasing on {rising}/{steps} steps, {elapsed:.2?}"
    );
    if below_frac < 0.8 || rising_frac < 0.7 || elapsed > Duration::from_secs(60) {
        return Err(summary);
    }
    Ok(summary)
}

fn criterion_10() -> Outcome {
    let config = sweep_config();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut bytes = Vec::new();
    for run in 0..2 {
        let rows = run_sweep(&config).map_err(|e| e.to_string())?;
        let path = dir.path().join(format!("run{run}.csv"));
        emit_csv(&rows, &path).map_err(|e| e.to_string())?;
        let file = std::fs::read(&path).map_err(|e| e.to_string())?;
        if file != csv_string(&rows).into_bytes() {
            return Err("written file differs from rendered CSV".into());
        }
        bytes.push(file);
    }
    if bytes[0] != bytes[1] {
        return Err("CSV outputs differ between runs".into());
    }
    Ok(format!("two runs, {} identical bytes", bytes[0].len()))
}

fn batch(dists: Vec<Distribution>) -> Vec<PredictionRecord> {
    dists
        .into_iter()
        .map(|d| PredictionRecord::new(0, d).unwrap())
        .collect()
}

fn criterion_11() -> Outcome {
    for n in 2..=20 {
        let vertices = batch((0..n).map(|k| vertex(n, k).unwrap()).collect());
        let s = entropy_score(&vertices).unwrap();
        if s != 1.0 {
            return Err(format!("vertex batch n={n} scored {s}"));
        }
        let uniforms = batch(vec![uniform(n).unwrap(); 5]);
        let s = entropy_score(&uniforms).unwrap();
        if s.abs() > 1e-12 {
            return Err(format!("uniform batch n={n} scored {s}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..10_000 {
        let n = 2 + i % 19;
        let size = rng.gen_range(1..=20);
        let records = batch((0..size).map(|j| test_point(&mut rng, n, j)).collect());
        let s = entropy_score(&records).unwrap();
        if !(0.0..=1.0).contains(&s) {
            return Err(format!("random batch scored {s}"));
        }
    }
    Ok("vertex batches 1, uniform batches 0, 10000 random batches in [0,1]".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("entropy monotonicity", criterion_1),
        ("fixed points", criterion_2),
        ("half-half image", criterion_3),
        ("two-class identity", criterion_4),
        ("purity edge values", criterion_5),
        ("purity of the all-1/n matrix", criterion_6),
        ("naive Bayes oracle equivalence", criterion_7),
        ("maximum-likelihood estimates", criterion_8),
        ("balanced sweep trend", criterion_9),
        ("determinism", criterion_10),
        ("entropy score bounds", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
