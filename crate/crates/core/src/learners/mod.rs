//! Supervised classifiers written from scratch, plus evaluation.
//!
//! Five model kinds share one [`ClassifierModel`] type: Gaussian, Bernoulli
//! and Multinomial Naive Bayes (closed-form statistics) and two one-vs-rest
//! linear models trained by SGD, one on hinge loss (`Sgdc`) and one on
//! logistic loss (`Lrc`).

mod eval;
mod io;
mod linear;
mod naive_bayes;
mod sparse;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use eval::{cohen_kappa, metrics, ClassMetrics, ConfusionMatrix, MetricsReport};
pub use linear::{train_one_vs_rest, LinearLoss, LinearParams};
pub use sparse::SparseVector;

pub const DEFAULT_SEED: u64 = 13;

#[derive(Debug, Error, PartialEq)]
pub enum LearnError {
    #[error("feature index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("non-finite value at feature {0}")]
    NonFinite(usize),
    #[error("feature vector has dimension {got}, model expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("training data must contain at least two classes, found {0}")]
    TooFewClasses(usize),
    #[error("label index {0} is not a known class")]
    UnknownClass(usize),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("multinomial naive bayes needs non-negative features (feature {0})")]
    NegativeFeature(usize),
    #[error("sequences have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("no instances to evaluate")]
    Empty,
    #[error("unknown classifier kind {0:?}")]
    UnknownKind(String),
    #[error("model file line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassifierKind {
    Gnb,
    Bnb,
    Mnb,
    Sgdc,
    Lrc,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 5] = [
        ClassifierKind::Gnb,
        ClassifierKind::Bnb,
        ClassifierKind::Mnb,
        ClassifierKind::Sgdc,
        ClassifierKind::Lrc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassifierKind::Gnb => "GNB",
            ClassifierKind::Bnb => "BNB",
            ClassifierKind::Mnb => "MNB",
            ClassifierKind::Sgdc => "SGDC",
            ClassifierKind::Lrc => "LRC",
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassifierKind {
    type Err = LearnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClassifierKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| LearnError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperparams {
    pub learning_rate: f64,
    pub l2: f64,
    pub epochs: usize,
    pub seed: u64,
    /// Lower bound on per-feature variance for GNB.
    pub var_floor: f64,
    /// Additive smoothing for BNB and MNB.
    pub smoothing: f64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            learning_rate: 0.1,
            l2: 1e-4,
            epochs: 20,
            seed: DEFAULT_SEED,
            var_floor: 1e-9,
            smoothing: 1.0,
        }
    }
}

/// Labelled training data. Row labels index into `labels`, whose order is
/// also the tie-break order at prediction time.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub labels: Vec<String>,
    pub dim: usize,
    pub rows: Vec<(SparseVector, usize)>,
}

impl Dataset {
    pub fn new(labels: Vec<String>, dim: usize) -> Self {
        Dataset {
            labels,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, x: SparseVector, label: usize) -> Result<(), LearnError> {
        if x.dim() != self.dim {
            return Err(LearnError::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        if label >= self.labels.len() {
            return Err(LearnError::UnknownClass(label));
        }
        self.rows.push((x, label));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.labels.len()];
        for (_, y) in &self.rows {
            counts[*y] += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelParams {
    Gaussian {
        log_prior: Vec<f64>,
        mean: Vec<Vec<f64>>,
        var: Vec<Vec<f64>>,
    },
    Bernoulli {
        log_prior: Vec<f64>,
        log_p: Vec<Vec<f64>>,
        log_q: Vec<Vec<f64>>,
    },
    Multinomial {
        log_prior: Vec<f64>,
        log_theta: Vec<Vec<f64>>,
    },
    Linear(LinearParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingMeta {
    pub hyperparams: Hyperparams,
    /// Mean regularized loss after each epoch (linear kinds only).
    pub loss_history: Vec<f64>,
    pub n_train: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierModel {
    pub kind: ClassifierKind,
    pub labels: Vec<String>,
    pub dim: usize,
    pub params: ModelParams,
    pub meta: TrainingMeta,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: usize,
    pub scores: Vec<f64>,
}

pub fn train(
    kind: ClassifierKind,
    data: &Dataset,
    hyper: &Hyperparams,
) -> Result<ClassifierModel, LearnError> {
    let present = data.class_counts().iter().filter(|&&c| c > 0).count();
    if present < 2 {
        return Err(LearnError::TooFewClasses(present));
    }
    let mut loss_history = Vec::new();
    let params = match kind {
        ClassifierKind::Gnb => naive_bayes::train_gaussian(data, hyper),
        ClassifierKind::Bnb => naive_bayes::train_bernoulli(data, hyper),
        ClassifierKind::Mnb => naive_bayes::train_multinomial(data, hyper)?,
        ClassifierKind::Sgdc | ClassifierKind::Lrc => {
            let loss = if kind == ClassifierKind::Sgdc {
                LinearLoss::Hinge
            } else {
                LinearLoss::Logistic
            };
            let (params, history) =
                train_one_vs_rest(loss, data.dim, data.labels.len(), &data.rows, hyper);
            loss_history = history;
            ModelParams::Linear(params)
        }
    };
    Ok(ClassifierModel {
        kind,
        labels: data.labels.clone(),
        dim: data.dim,
        params,
        meta: TrainingMeta {
            hyperparams: hyper.clone(),
            loss_history,
            n_train: data.len(),
        },
    })
}

/// Index of the first maximal score.
pub fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = i;
        }
    }
    best
}

impl ClassifierModel {
    pub fn scores(&self, x: &SparseVector) -> Result<Vec<f64>, LearnError> {
        if x.dim() != self.dim {
            return Err(LearnError::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(match &self.params {
            ModelParams::Gaussian {
                log_prior,
                mean,
                var,
            } => naive_bayes::gaussian_scores(log_prior, mean, var, x),
            ModelParams::Bernoulli {
                log_prior,
                log_p,
                log_q,
            } => naive_bayes::bernoulli_scores(log_prior, log_p, log_q, x),
            ModelParams::Multinomial {
                log_prior,
                log_theta,
            } => naive_bayes::multinomial_scores(log_prior, log_theta, x),
            ModelParams::Linear(p) => p.scores(x),
        })
    }

    pub fn predict(&self, x: &SparseVector) -> Result<Prediction, LearnError> {
        let scores = self.scores(x)?;
        Ok(Prediction {
            label: argmax(&scores),
            scores,
        })
    }

    pub fn label_name(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn to_text(&self) -> String {
        io::write_model(self)
    }

    pub fn from_text(text: &str) -> Result<Self, LearnError> {
        io::parse_model(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn toy_separable() -> Dataset {
        let mut d = Dataset::new(labels(&["a", "b"]), 2);
        d.push(SparseVector::from_dense(&[1.0, 0.0]).unwrap(), 0)
            .unwrap();
        d.push(SparseVector::from_dense(&[0.0, 1.0]).unwrap(), 1)
            .unwrap();
        d
    }

    #[test]
    fn single_class_rejected() {
        let mut d = Dataset::new(labels(&["a", "b"]), 1);
        d.push(SparseVector::from_dense(&[1.0]).unwrap(), 0)
            .unwrap();
        for kind in ClassifierKind::ALL {
            assert_eq!(
                train(kind, &d, &Hyperparams::default()),
                Err(LearnError::TooFewClasses(1))
            );
        }
    }

    #[test]
    fn separable_pair_sgdc() {
        let d = toy_separable();
        let model = train(ClassifierKind::Sgdc, &d, &Hyperparams::default()).unwrap();
        for (x, y) in &d.rows {
            assert_eq!(model.predict(x).unwrap().label, *y);
        }
    }

    #[test]
    fn every_kind_fits_separable_pair() {
        let d = toy_separable();
        for kind in ClassifierKind::ALL {
            let model = train(kind, &d, &Hyperparams::default()).unwrap();
            for (x, y) in &d.rows {
                assert_eq!(model.predict(x).unwrap().label, *y, "{kind}");
            }
        }
    }

    #[test]
    fn multinomial_counts_decide() {
        let mut d = Dataset::new(labels(&["A", "B"]), 2);
        d.push(SparseVector::from_dense(&[2.0, 0.0]).unwrap(), 0)
            .unwrap();
        d.push(SparseVector::from_dense(&[0.0, 2.0]).unwrap(), 1)
            .unwrap();
        let model = train(ClassifierKind::Mnb, &d, &Hyperparams::default()).unwrap();
        let p = model
            .predict(&SparseVector::from_dense(&[1.0, 0.0]).unwrap())
            .unwrap();
        assert!(p.scores[0] > p.scores[1]);
        assert_eq!(p.label, 0);
    }

    #[test]
    fn zero_vector_with_uniform_priors_picks_first_class() {
        let d = toy_separable();
        let model = train(ClassifierKind::Mnb, &d, &Hyperparams::default()).unwrap();
        let p = model.predict(&SparseVector::zeros(2)).unwrap();
        assert_eq!(p.scores[0], p.scores[1]);
        assert_eq!(p.label, 0);
    }

    #[test]
    fn multinomial_rejects_negative_features() {
        let mut d = toy_separable();
        d.push(SparseVector::from_dense(&[-1.0, 0.0]).unwrap(), 0)
            .unwrap();
        assert_eq!(
            train(ClassifierKind::Mnb, &d, &Hyperparams::default()),
            Err(LearnError::NegativeFeature(0))
        );
    }

    #[test]
    fn dimension_mismatch_on_predict() {
        let model = train(
            ClassifierKind::Bnb,
            &toy_separable(),
            &Hyperparams::default(),
        )
        .unwrap();
        assert_eq!(
            model.predict(&SparseVector::zeros(3)),
            Err(LearnError::DimensionMismatch {
                expected: 2,
                got: 3
            })
        );
    }

    #[test]
    fn dataset_push_validates() {
        let mut d = Dataset::new(labels(&["a", "b"]), 2);
        assert!(d.push(SparseVector::zeros(3), 0).is_err());
        assert_eq!(
            d.push(SparseVector::zeros(2), 5),
            Err(LearnError::UnknownClass(5))
        );
    }

    #[test]
    fn kind_parsing() {
        assert_eq!(
            "sgdc".parse::<ClassifierKind>().unwrap(),
            ClassifierKind::Sgdc
        );
        assert_eq!(
            "GNB".parse::<ClassifierKind>().unwrap(),
            ClassifierKind::Gnb
        );
        assert!("svm".parse::<ClassifierKind>().is_err());
    }

    #[test]
    fn argmax_prefers_first_on_ties() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0]), 1);
        assert_eq!(argmax(&[0.0, 0.0, 0.0]), 0);
    }
}
