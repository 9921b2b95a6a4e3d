use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Hyperparams, SparseVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearLoss {
    Hinge,
    Logistic,
}

impl LinearLoss {
    fn value(self, margin: f64) -> f64 {
        match self {
            LinearLoss::Hinge => (1.0 - margin).max(0.0),
            LinearLoss::Logistic => {
                // ln(1 + e^-m), stable for large |m|
                if margin > 0.0 {
                    (-margin).exp().ln_1p()
                } else {
                    -margin + margin.exp().ln_1p()
                }
            }
        }
    }

    /// d loss / d score, for label `y` in {-1, 1}.
    fn gradient(self, y: f64, score: f64) -> f64 {
        let margin = y * score;
        match self {
            LinearLoss::Hinge => {
                if margin < 1.0 {
                    -y
                } else {
                    0.0
                }
            }
            LinearLoss::Logistic => -y / (1.0 + margin.exp()),
        }
    }
}

/// One weight vector and bias per class, scored independently.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearParams {
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
}

impl LinearParams {
    pub fn scores(&self, x: &SparseVector) -> Vec<f64> {
        self.weights
            .iter()
            .zip(&self.bias)
            .map(|(w, b)| x.dot(w) + b)
            .collect()
    }
}

// w = scale * v, so the L2 shrink step is O(1).
struct ScaledWeights {
    v: Vec<f64>,
    scale: f64,
    bias: f64,
}

impl ScaledWeights {
    fn score(&self, x: &SparseVector) -> f64 {
        self.scale * x.dot(&self.v) + self.bias
    }

    fn shrink(&mut self, factor: f64) {
        self.scale *= factor;
        if self.scale < 1e-9 {
            self.v.iter_mut().for_each(|w| *w *= self.scale);
            self.scale = 1.0;
        }
    }

    fn add(&mut self, x: &SparseVector, step: f64) {
        let s = step / self.scale;
        for &(j, v) in x.entries() {
            self.v[j] += s * v;
        }
    }

    fn norm_sq(&self) -> f64 {
        self.scale * self.scale * self.v.iter().map(|w| w * w).sum::<f64>()
    }

    fn finish(self) -> (Vec<f64>, f64) {
        let scale = self.scale;
        (self.v.into_iter().map(|w| w * scale).collect(), self.bias)
    }
}

/// Trains one binary scorer per class (class vs rest) with SGD.
///
/// The step size decays as `lr / (1 + lr * l2 * t)`. Rows are visited in a
/// fresh shuffle every epoch, drawn from a ChaCha RNG seeded with
/// `hyper.seed`. Returns the parameters and the mean regularized loss after
/// each epoch.
pub fn train_one_vs_rest(
    loss: LinearLoss,
    dim: usize,
    n_classes: usize,
    rows: &[(SparseVector, usize)],
    hyper: &Hyperparams,
) -> (LinearParams, Vec<f64>) {
    let mut scorers: Vec<ScaledWeights> = (0..n_classes)
        .map(|_| ScaledWeights {
            v: vec![0.0; dim],
            scale: 1.0,
            bias: 0.0,
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(hyper.seed);
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut history = Vec::with_capacity(hyper.epochs);
    let mut t = 0usize;

    for _ in 0..hyper.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let (x, label) = &rows[i];
            t += 1;
            let eta = hyper.learning_rate / (1.0 + hyper.learning_rate * hyper.l2 * t as f64);
            for (c, w) in scorers.iter_mut().enumerate() {
                let y = if c == *label { 1.0 } else { -1.0 };
                let g = loss.gradient(y, w.score(x));
                w.shrink(1.0 - eta * hyper.l2);
                if g != 0.0 {
                    w.add(x, -eta * g);
                    w.bias -= eta * g;
                }
            }
        }
        history.push(objective(loss, &scorers, rows, hyper.l2));
    }

    let (weights, bias) = scorers.into_iter().map(ScaledWeights::finish).unzip();
    (LinearParams { weights, bias }, history)
}

fn objective(
    loss: LinearLoss,
    scorers: &[ScaledWeights],
    rows: &[(SparseVector, usize)],
    l2: f64,
) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    let data: f64 = rows
        .iter()
        .map(|(x, label)| {
            scorers
                .iter()
                .enumerate()
                .map(|(c, w)| {
                    let y = if c == *label { 1.0 } else { -1.0 };
                    loss.value(y * w.score(x))
                })
                .sum::<f64>()
        })
        .sum();
    let reg: f64 = scorers.iter().map(|w| 0.5 * l2 * w.norm_sq()).sum();
    data / rows.len() as f64 + reg
}
