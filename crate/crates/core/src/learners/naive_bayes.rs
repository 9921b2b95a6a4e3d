use std::f64::consts::PI;

use super::{Dataset, Hyperparams, LearnError, ModelParams, SparseVector};

fn log_priors(data: &Dataset) -> Vec<f64> {
    let n = data.len() as f64;
    data.class_counts()
        .into_iter()
        .map(|c| (c as f64 / n).ln())
        .collect()
}

pub(super) fn train_gaussian(data: &Dataset, hyper: &Hyperparams) -> ModelParams {
    let k = data.labels.len();
    let d = data.dim;
    let counts = data.class_counts();
    let mut mean = vec![vec![0.0; d]; k];
    for (x, y) in &data.rows {
        for &(j, v) in x.entries() {
            mean[*y][j] += v;
        }
    }
    for (c, m) in mean.iter_mut().enumerate() {
        if counts[c] > 0 {
            m.iter_mut().for_each(|v| *v /= counts[c] as f64);
        }
    }
    // Σ (x - μ)² over all rows, with the implicit zeros handled in bulk.
    let mut sq = vec![vec![0.0; d]; k];
    let mut nonzero = vec![vec![0usize; d]; k];
    for (x, y) in &data.rows {
        for &(j, v) in x.entries() {
            sq[*y][j] += (v - mean[*y][j]).powi(2);
            nonzero[*y][j] += 1;
        }
    }
    let var = (0..k)
        .map(|c| {
            (0..d)
                .map(|j| {
                    if counts[c] == 0 {
                        return hyper.var_floor.max(1.0);
                    }
                    let zeros = (counts[c] - nonzero[c][j]) as f64;
                    let v = (sq[c][j] + zeros * mean[c][j].powi(2)) / counts[c] as f64;
                    v.max(hyper.var_floor)
                })
                .collect()
        })
        .collect();
    ModelParams::Gaussian {
        log_prior: log_priors(data),
        mean,
        var,
    }
}

pub(super) fn gaussian_scores(
    log_prior: &[f64],
    mean: &[Vec<f64>],
    var: &[Vec<f64>],
    x: &SparseVector,
) -> Vec<f64> {
    (0..log_prior.len())
        .map(|c| {
            let (m, v) = (&mean[c], &var[c]);
            // score of the zero vector, then correct the non-zero coordinates
            let mut s: f64 = m
                .iter()
                .zip(v)
                .map(|(m, v)| -0.5 * ((2.0 * PI * v).ln() + m * m / v))
                .sum();
            for &(j, xj) in x.entries() {
                s -= 0.5 * ((xj - m[j]).powi(2) - m[j] * m[j]) / v[j];
            }
            log_prior[c] + s
        })
        .collect()
}

pub(super) fn train_bernoulli(data: &Dataset, hyper: &Hyperparams) -> ModelParams {
    let k = data.labels.len();
    let counts = data.class_counts();
    let mut present = vec![vec![0.0; data.dim]; k];
    for (x, y) in &data.rows {
        for &(j, v) in x.entries() {
            if v > 0.0 {
                present[*y][j] += 1.0;
            }
        }
    }
    let a = hyper.smoothing;
    let mut log_p = Vec::with_capacity(k);
    let mut log_q = Vec::with_capacity(k);
    for (c, row) in present.iter().enumerate() {
        let denom = counts[c] as f64 + 2.0 * a;
        log_p.push(row.iter().map(|n| ((n + a) / denom).ln()).collect());
        log_q.push(row.iter().map(|n| (1.0 - (n + a) / denom).ln()).collect());
    }
    ModelParams::Bernoulli {
        log_prior: log_priors(data),
        log_p,
        log_q,
    }
}

pub(super) fn bernoulli_scores(
    log_prior: &[f64],
    log_p: &[Vec<f64>],
    log_q: &[Vec<f64>],
    x: &SparseVector,
) -> Vec<f64> {
    (0..log_prior.len())
        .map(|c| {
            let mut s: f64 = log_q[c].iter().sum();
            for &(j, v) in x.entries() {
                if v > 0.0 {
                    s += log_p[c][j] - log_q[c][j];
                }
            }
            log_prior[c] + s
        })
        .collect()
}

pub(super) fn train_multinomial(
    data: &Dataset,
    hyper: &Hyperparams,
) -> Result<ModelParams, LearnError> {
    let k = data.labels.len();
    let mut totals = vec![vec![0.0; data.dim]; k];
    for (x, y) in &data.rows {
        for &(j, v) in x.entries() {
            if v < 0.0 {
                return Err(LearnError::NegativeFeature(j));
            }
            totals[*y][j] += v;
        }
    }
    let a = hyper.smoothing;
    let log_theta = totals
        .iter()
        .map(|row| {
            let denom: f64 = row.iter().sum::<f64>() + a * data.dim as f64;
            row.iter().map(|n| ((n + a) / denom).ln()).collect()
        })
        .collect();
    Ok(ModelParams::Multinomial {
        log_prior: log_priors(data),
        log_theta,
    })
}

pub(super) fn multinomial_scores(
    log_prior: &[f64],
    log_theta: &[Vec<f64>],
    x: &SparseVector,
) -> Vec<f64> {
    (0..log_prior.len())
        .map(|c| log_prior[c] + x.dot(&log_theta[c]))
        .collect()
}
